//! Subcommand definitions and their execution.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::result::Result;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rigidity_kit::flex::{spread_points, symmetry_angle};
use rigidity_kit::io::{ActionDoc, ColoringDoc, FlexDoc, FrameworkDoc, TowerDoc};
use rigidity_kit::nac::monochromatic_components;
use rigidity_kit::penrose::{brace, Line};
use rigidity_kit::*;
use serde_json::{json, Value};

use crate::input::*;
use crate::render::{self, Decorations, RenderStyle};
use crate::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "rigidity-kit",
    version,
    about = "Rigidity and flexibility of bar-joint frameworks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// NAC-colorings of graphs.
    #[command(subcommand)]
    Nac(NacCmd),
    /// Ribbon decomposition.
    #[command(subcommand)]
    Ribbons(RibbonsCmd),
    /// Rigidity of braced parallelogram frameworks.
    #[command(subcommand)]
    Rigidity(RigidityCmd),
    /// Penrose patches from pentagrids.
    #[command(subcommand)]
    Penrose(PenroseCmd),
    /// Flexes from NAC-colorings.
    #[command(subcommand)]
    Flex(FlexCmd),
    /// Dixon linkages on complete bipartite graphs.
    #[command(subcommand)]
    Dixon(DixonCmd),
    /// SVG output.
    #[command(subcommand)]
    Render(RenderCmd),
}

#[derive(Subcommand, Debug)]
pub enum NacCmd {
    /// Whether a coloring is NAC, cartesian and optionally symmetric.
    Check {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long)]
        symmetry: Option<PathBuf>,
    },
    /// All NAC-colorings of a graph.
    Enumerate {
        graph: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// A chain of compatible colorings through nested graphs.
    Tower {
        tower: PathBuf,
        /// Only colorings whose ribbons are monochromatic.
        #[arg(long, conflicts_with = "symmetry")]
        ribbons: bool,
        #[arg(long)]
        symmetry: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum RibbonsCmd {
    /// Ribbons of the (unbraced) graph and whether they cut it.
    Compute { graph: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum RigidityCmd {
    /// Rigid iff the bracing graph (or its quotient) is connected.
    Decide {
        input: PathBuf,
        #[arg(long)]
        symmetry: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TileArg {
    Fat,
    Thin,
}

impl From<TileArg> for Tile {
    fn from(t: TileArg) -> Tile {
        match t {
            TileArg::Fat => Tile::Fat,
            TileArg::Thin => Tile::Thin,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    Sun,
    Star,
}

#[derive(Subcommand, Debug)]
pub enum PenroseCmd {
    /// Patch dual to a window of a pentagrid.
    Generate {
        /// Five offsets, e.g. `0.1,-0.2,1/3,0,-7/30`.
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        /// `kmin:kmax` for every family, or five comma-separated ranges.
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "radius",
            required_unless_present = "radius"
        )]
        window: Option<String>,
        /// Lines with `|k - gamma_j| <= radius`.
        #[arg(long)]
        radius: Option<String>,
        /// Resolve concurrent lines by a common infinitesimal shift.
        #[arg(long)]
        perturb: bool,
    },
    /// Adds braces to a patch.
    ///
    /// Strategies: `fat`, `thin`, `all-but:TILE:J,K`, `two-ribbons:J,K:J,K`,
    /// `random:TILE:P:SEED`, `faces:I,I,...`.
    Brace {
        patch: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        strategy: String,
    },
    /// Fivefold symmetric patch with its rotation action.
    Symmetric {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        radius: String,
        /// Where to write the action document.
        #[arg(long)]
        action_out: Option<PathBuf>,
    },
    /// Fraction of random bracings that make the patch rigid.
    MonteCarlo {
        patch: PathBuf,
        #[arg(long, value_enum, default_value = "fat")]
        tile: TileArg,
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Ribbon, angle and edge checks of a patch.
    Verify { patch: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum FlexCmd {
    /// Flex of a generic realization from any NAC-coloring.
    Nac {
        graph: PathBuf,
        coloring: PathBuf,
        #[arg(long)]
        base: Option<String>,
    },
    /// Flex of a parallelogram framework from a cartesian NAC-coloring.
    Pframework {
        framework: PathBuf,
        coloring: PathBuf,
        #[arg(long)]
        base: Option<String>,
    },
    /// Flex that keeps a rotational symmetry.
    Symmetric {
        framework: PathBuf,
        action: PathBuf,
        coloring: PathBuf,
        #[arg(long)]
        base: Option<String>,
    },
    /// Samples a flex and reports length drift and non-triviality.
    Check {
        framework: PathBuf,
        flex: PathBuf,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long)]
        symmetry: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct LinkageArgs {
    /// Comma-separated x-values of the first part.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Comma-separated y-values of the second part.
    #[arg(long, allow_hyphen_values = true)]
    y: String,
    #[arg(long)]
    tail_inf_x: Option<f64>,
    #[arg(long)]
    tail_inf_y: Option<f64>,
}

impl LinkageArgs {
    fn linkage(&self) -> Result<DixonLinkage, CliError> {
        let x = parse_list(&self.x, parse_f64).map_err(CliError::Usage)?;
        let y = parse_list(&self.y, parse_f64).map_err(CliError::Usage)?;
        let mut d = DixonLinkage::finite(x, y);
        d.tail_inf_x = self.tail_inf_x;
        d.tail_inf_y = self.tail_inf_y;
        Ok(d)
    }
}

#[derive(Subcommand, Debug)]
pub enum DixonCmd {
    /// Coordinates of the flex over `t` in `[0, 1]`.
    Flex {
        #[command(flatten)]
        linkage: LinkageArgs,
        #[arg(long, default_value_t = 8)]
        frames: usize,
        /// Also write one SVG per frame here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 60.0)]
        scale: f64,
    },
    /// Flexible iff an effective infimum is positive.
    Decide {
        #[command(flatten)]
        linkage: LinkageArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct StyleArgs {
    /// Pixels per unit length.
    #[arg(long, default_value_t = 60.0)]
    scale: f64,
    /// Mark edges by ribbon.
    #[arg(long)]
    ribbons: bool,
    /// Do not fill braced quadrilaterals.
    #[arg(long)]
    no_fill: bool,
}

impl StyleArgs {
    fn style(&self, frames: usize) -> RenderStyle {
        RenderStyle {
            ribbons: self.ribbons,
            fill_braced: !self.no_fill,
            frames,
            scale: self.scale,
            ..RenderStyle::default()
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum RenderCmd {
    /// One SVG of a framework.
    Framework {
        input: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[command(flatten)]
        style: StyleArgs,
        /// Output file; standard output if absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Frames of a flex sampled over its parameter domain.
    Flex {
        flex: PathBuf,
        /// Framework whose braces are drawn.
        #[arg(long)]
        framework: Option<PathBuf>,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        frames: usize,
        /// Parameter of a single frame.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value = "frame")]
        prefix: String,
        /// Single looping SVG with all frames.
        #[arg(long)]
        animated: Option<PathBuf>,
        #[arg(long, default_value_t = 4.0)]
        seconds: f64,
        #[command(flatten)]
        style: StyleArgs,
    },
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    emit_text(
        out,
        &serde_json::to_string_pretty(v).expect("json values serialize"),
    )
}

fn emit_text(out: &mut dyn Write, s: &str) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    let newline: &[u8] = if s.ends_with('\n') { b"" } else { b"\n" };
    match out
        .write_all(s.as_bytes())
        .and_then(|_| out.write_all(newline))
    {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(io_err(e)),
        _ => Ok(()),
    }
}

fn to_value<T: serde::Serialize>(doc: &T) -> Value {
    serde_json::to_value(doc).expect("documents serialize")
}

fn pairs(g: &Graph, edges: &[usize]) -> Value {
    edges
        .iter()
        .map(|&e| {
            let (u, v) = g.edge_ids(e);
            json!([u, v])
        })
        .collect()
}

fn coloring_value(g: &Graph, c: &EdgeColoring) -> Value {
    to_value(&ColoringDoc::from_coloring(g, c))
}

/// A coloring of `g`, or of a supergraph with the same vertices restricted
/// to `g`.
fn load_coloring(path: &Path, g: &Graph, full: &Graph) -> Result<EdgeColoring, CliError> {
    let doc: ColoringDoc = load_doc(path)?;
    match doc.to_coloring(g) {
        Ok(c) => Ok(c),
        Err(first) if full.edge_count() > g.edge_count() => match doc.to_coloring(full) {
            Ok(c) => Ok(c.restrict(full, g)?),
            Err(_) => Err(first.into()),
        },
        Err(e) => Err(e.into()),
    }
}

fn load_action(path: &Path) -> Result<SymmetryAction, CliError> {
    Ok(load_doc::<ActionDoc>(path)?.to_action())
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Nac(c) => nac(c, out),
        Command::Ribbons(RibbonsCmd::Compute { graph }) => ribbons(&graph, out),
        Command::Rigidity(RigidityCmd::Decide { input, symmetry }) => {
            decide(&input, symmetry.as_deref(), out)
        }
        Command::Penrose(c) => penrose(c, out),
        Command::Flex(c) => flex(c, out),
        Command::Dixon(c) => dixon(c, out),
        Command::Render(c) => render_cmd(c, out),
    }
}

fn nac(cmd: NacCmd, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        NacCmd::Check {
            graph,
            coloring,
            symmetry,
        } => {
            let l = load(&graph)?;
            let g = l.full();
            let c = load_doc::<ColoringDoc>(&coloring)?.to_coloring(g)?;
            let nac = is_nac(g, &c)?;
            let cartesian = if nac {
                Some(is_cartesian(g, &c)?)
            } else {
                None
            };
            let mut v = json!({ "nac": nac, "cartesian": cartesian });
            if let Some(path) = symmetry {
                v["symmetric"] = json!(is_symmetric_nac(g, &load_action(&path)?, &c)?);
            }
            emit(out, &v)
        }
        NacCmd::Enumerate { graph, limit } => {
            let l = load(&graph)?;
            let g = l.full();
            let all = enumerate_nac(g, limit);
            let list: Vec<Value> = all.iter().map(|c| coloring_value(g, c)).collect();
            emit(out, &json!({ "count": all.len(), "colorings": list }))
        }
        NacCmd::Tower {
            tower,
            ribbons,
            symmetry,
        } => {
            let t = load_doc::<TowerDoc>(&tower)?.to_tower()?;
            let mode = match (ribbons, symmetry) {
                (_, Some(path)) => TowerMode::Symmetric(load_action(&path)?),
                (true, None) => TowerMode::MonochromaticRibbons,
                (false, None) => TowerMode::Plain,
            };
            let chain = tower_chain(&t, &mode)?;
            let v = match chain {
                Some(cs) => {
                    let list: Vec<Value> = cs
                        .iter()
                        .zip(&t.levels)
                        .map(|(c, g)| coloring_value(g, c))
                        .collect();
                    json!({ "exists": true, "chain": list })
                }
                None => json!({ "exists": false, "chain": null }),
            };
            emit(out, &v)
        }
    }
}

fn ribbons(path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let l = load(path)?;
    let g = l.base();
    let rd = l.braced.ribbons();
    let list: Vec<Value> = rd.ribbons().iter().map(|r| pairs(g, r)).collect();
    let simple: Vec<bool> = (0..rd.count()).map(|r| rd.is_simple(r)).collect();
    let cut = is_ribbon_cutting(g).ok();
    let mut v = json!({
        "count": rd.count(),
        "ribbons": list,
        "simple": simple,
        "cutting": cut.as_ref().map(|c| c.cutting),
        "components_after_removal": cut.as_ref().map(|c| c.components_after_removal.clone()),
    });
    if !l.braced.braces().is_empty() {
        v["bracing_edges"] = json!(ribbon_graph(&l.braced).bracing_edges());
    }
    emit(out, &v)
}

fn decide(path: &Path, symmetry: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let l = load(path)?;
    if let Some(f) = &l.framework {
        let report = validate_parallelogram(f);
        if !report.valid {
            let why = match report.offending_cycle {
                Some(c) => format!(
                    "4-cycle {} {} {} {} is not a parallelogram",
                    c[0], c[1], c[2], c[3]
                ),
                None => "placement is not injective".into(),
            };
            return Err(Error::NotParallelogram(why).into());
        }
    }
    let b = &l.braced;
    let g = b.base();
    let ribbons: Vec<Value> = b.ribbons().ribbons().iter().map(|r| pairs(g, r)).collect();
    let (verdict, orbits) = match symmetry {
        Some(p) => {
            let a = load_action(p)?;
            let q = quotient_bracing_graph(b, &a)?;
            (decide_symmetric_rigidity(b, &a)?, Some(q.orbit_of))
        }
        None => (decide_rigidity(b)?, None),
    };
    let mut v = match verdict {
        Verdict::Rigid { spanning_tree } => {
            json!({ "verdict": "rigid", "spanning_tree": spanning_tree })
        }
        Verdict::Flexible { split, coloring } => json!({
            "verdict": "flexible",
            "split": split.iter().map(|c| c.name()).collect::<Vec<_>>(),
            "coloring": coloring_value(b.full_graph(), &coloring),
        }),
    };
    v["ribbons"] = json!(ribbons);
    if let Some(o) = orbits {
        v["orbit_of"] = json!(o);
    }
    if l.doc.as_ref().is_some_and(|d| d.faces.is_some()) {
        v["scope"] = json!("patch-level");
    }
    emit(out, &v)
}

fn parse_window(s: &str) -> Result<Window, CliError> {
    let range = |p: &str| -> Result<(i64, i64), CliError> {
        let bad = || CliError::Usage(format!("bad window range {p:?}, expected kmin:kmax"));
        let (a, b) = p.split_once(':').ok_or_else(bad)?;
        Ok((
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        ))
    };
    let parts: Vec<&str> = s.split(',').collect();
    let ranges = match parts.len() {
        1 => [range(parts[0])?; 5],
        5 => [
            range(parts[0])?,
            range(parts[1])?,
            range(parts[2])?,
            range(parts[3])?,
            range(parts[4])?,
        ],
        _ => return Err(CliError::Usage("window needs one range or five".into())),
    };
    Ok(Window::Index { ranges })
}

fn parse_gamma(s: &str) -> Result<[Rational; 5], CliError> {
    let v = parse_list(s, parse_rational).map_err(CliError::Usage)?;
    v.try_into()
        .map_err(|v: Vec<_>| CliError::Usage(format!("gamma needs 5 offsets, got {}", v.len())))
}

fn parse_line(s: &str) -> Result<Line, CliError> {
    let bad = || CliError::Usage(format!("bad grid line {s:?}, expected FAMILY,INDEX"));
    let (j, k) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        j.trim().parse().map_err(|_| bad())?,
        k.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_tile(s: &str) -> Result<Tile, CliError> {
    Tile::parse(s).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn parse_strategy(s: &str) -> Result<BraceStrategy, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || CliError::Usage(format!("unknown brace strategy {s:?}"));
    Ok(match parts.as_slice() {
        [t] if matches!(*t, "fat" | "thin") => BraceStrategy::AllTiles(parse_tile(t)?),
        ["all-but", t, pair] => {
            let (a, b) = parse_line(pair)?;
            let b = usize::try_from(b).map_err(|_| bad())?;
            BraceStrategy::AllButOrientation(parse_tile(t)?, (a, b))
        }
        ["two-ribbons", a, b] => BraceStrategy::TwoRibbons(parse_line(a)?, parse_line(b)?),
        ["random", t, p, seed] => BraceStrategy::Random {
            tile: parse_tile(t)?,
            p: parse_f64(p).map_err(CliError::Usage)?,
            seed: seed.parse().map_err(|_| bad())?,
        },
        ["faces", list] => BraceStrategy::Explicit(
            parse_list(list, |x| {
                x.parse::<usize>()
                    .map_err(|_| format!("bad face index {x:?}"))
            })
            .map_err(CliError::Usage)?,
        ),
        _ => return Err(bad()),
    })
}

fn load_patch(path: &Path) -> Result<PenrosePatch, CliError> {
    Ok(load_doc::<FrameworkDoc>(path)?.to_patch()?)
}

fn penrose(cmd: PenroseCmd, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        PenroseCmd::Generate {
            gamma,
            window,
            radius,
            perturb,
        } => {
            let gamma = parse_gamma(&gamma)?;
            let window = match (window, radius) {
                (Some(w), _) => parse_window(&w)?,
                (None, Some(r)) => Window::Radius(parse_rational(&r).map_err(CliError::Usage)?),
                (None, None) => return Err(CliError::Usage("need --window or --radius".into())),
            };
            let params = PentagridParams {
                gamma,
                window,
                perturb,
            };
            let patch = generate_patch(&params)?;
            emit_text(
                out,
                &rigidity_kit::io::to_string(&FrameworkDoc::from_patch(&patch)),
            )
        }
        PenroseCmd::Brace { patch, strategy } => {
            let p = load_patch(&patch)?;
            let b = brace(&p, &parse_strategy(&strategy)?)?;
            let mut doc = FrameworkDoc::from_patch(&p);
            doc.braces = Some(b.brace_ids());
            emit_text(out, &rigidity_kit::io::to_string(&doc))
        }
        PenroseCmd::Symmetric {
            variant,
            radius,
            action_out,
        } => {
            let variant = match variant {
                VariantArg::Sun => Variant::Sun,
                VariantArg::Star => Variant::Star,
            };
            let r = parse_rational(&radius).map_err(CliError::Usage)?;
            let (patch, action) = symmetric_patch(r, variant)?;
            if let Some(path) = action_out {
                write_text(
                    &path,
                    &rigidity_kit::io::to_string(&ActionDoc::from_action(&action)),
                )?;
            }
            emit_text(
                out,
                &rigidity_kit::io::to_string(&FrameworkDoc::from_patch(&patch)),
            )
        }
        PenroseCmd::MonteCarlo {
            patch,
            tile,
            p,
            trials,
            seed,
        } => {
            let patch = load_patch(&patch)?;
            let results = p
                .iter()
                .map(|&p| {
                    let f = monte_carlo_rigidity(&patch, tile.into(), p, trials, seed)?;
                    Ok(json!({ "p": p, "rigid_fraction": f }))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            emit(
                out,
                &json!({ "trials": trials, "seed": seed, "results": results }),
            )
        }
        PenroseCmd::Verify { patch } => {
            let patch = load_patch(&patch)?;
            let report = verify_ribbon_properties(&patch);
            let mut v = to_value(&report);
            v["passed"] = json!(report.passed());
            v["faces"] = json!(patch.faces.len());
            emit(out, &v)
        }
    }
}

fn flex(cmd: FlexCmd, out: &mut dyn Write) -> Result<(), CliError> {
    let x = match cmd {
        FlexCmd::Nac {
            graph,
            coloring,
            base,
        } => {
            let l = load(&graph)?;
            let g = l.full();
            let c = load_doc::<ColoringDoc>(&coloring)?.to_coloring(g)?;
            let base = vertex_index(g, base.as_deref(), 0)?;
            let red = monochromatic_components(g, &c, Color::Red)?;
            let blue = monochromatic_components(g, &c, Color::Blue)?;
            let at =
                |blocks: &[Vec<usize>]| blocks.iter().position(|b| b.contains(&base)).unwrap_or(0);
            // scaled and turned copy keeps red and blue sums apart
            let (sin, cos) = 0.7f64.sin_cos();
            let blue_pts: Vec<Point> = spread_points(blue.len(), at(&blue))
                .into_iter()
                .map(|[x, y]| [1.37 * (cos * x - sin * y), 1.37 * (sin * x + cos * y)])
                .collect();
            flex_from_nac(g, &c, &spread_points(red.len(), at(&red)), &blue_pts, base)?
        }
        FlexCmd::Pframework {
            framework,
            coloring,
            base,
        } => {
            let (f, b) = load_framework(&framework)?;
            let c = load_coloring(&coloring, &f.graph, b.full_graph())?;
            let base = vertex_index(&f.graph, base.as_deref(), 0)?;
            pframework_flex(&f, &c, base)?
        }
        FlexCmd::Symmetric {
            framework,
            action,
            coloring,
            base,
        } => {
            let (f, b) = load_framework(&framework)?;
            let c = load_coloring(&coloring, &f.graph, b.full_graph())?;
            let base = vertex_index(&f.graph, base.as_deref(), 0)?;
            symmetric_flex(&f, &load_action(&action)?, &c, base)?
        }
        FlexCmd::Check {
            framework,
            flex,
            samples,
            symmetry,
        } => return check(&framework, &flex, samples, symmetry.as_deref(), out),
    };
    emit_text(out, &rigidity_kit::io::to_string(&FlexDoc::from_flex(&x)))
}

fn check(
    framework: &Path,
    flex: &Path,
    samples: usize,
    symmetry: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (f, _) = load_framework(framework)?;
    let x = load_doc::<FlexDoc>(flex)?.to_flex()?;
    if x.graph != f.graph {
        return Err(CliError::Usage(
            "flex and framework have different graphs".into(),
        ));
    }
    let sym = match symmetry {
        Some(p) => {
            let a = load_action(p)?;
            let perm = a.permutation(&f.graph)?;
            let theta = symmetry_angle(&f, &perm, a.k)?;
            Some((perm, theta))
        }
        None => None,
    };
    let r = check_flex(
        &f,
        &x,
        samples,
        sym.as_ref().map(|(p, t)| (p.as_slice(), *t)),
    );
    let witness = r.witness.map(|(a, b)| pairs(&f.graph, &[a, b]));
    emit(
        out,
        &json!({
            "samples": r.samples,
            "max_length_deviation": r.max_length_deviation,
            "max_angle_variation": r.max_angle_variation,
            "nontrivial": r.nontrivial(),
            "witness": witness,
            "equivariance_residual": r.equivariance_residual,
        }),
    )
}

fn dixon(cmd: DixonCmd, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        DixonCmd::Decide { linkage } => {
            let d = linkage.linkage()?;
            let flexible = dixon_flexible(&d)?;
            emit(
                out,
                &json!({
                    "verdict": if flexible { "flexible" } else { "rigid" },
                    "inf_x": d.effective_inf_x(),
                    "inf_y": d.effective_inf_y(),
                }),
            )
        }
        DixonCmd::Flex {
            linkage,
            frames,
            out_dir,
            scale,
        } => {
            let d = linkage.linkage()?;
            let style = RenderStyle {
                frames,
                scale,
                ..RenderStyle::default()
            };
            style.validate()?;
            let m = dixon_flex(&d)?;
            let times = render::frame_times(&m, frames, None);
            let mut files: Vec<Option<String>> = vec![None; times.len()];
            if let Some(dir) = &out_dir {
                create_dir(dir)?;
                let svgs = render::render_frames(&m, &times, &style, &Decorations::default())?;
                for (i, svg) in svgs.iter().enumerate() {
                    let path = out_path(dir, "dixon", i, svgs.len());
                    write_text(&path, svg)?;
                    files[i] = Some(path.display().to_string());
                }
            }
            let list: Vec<Value> = times
                .iter()
                .zip(files)
                .map(|(&t, file)| {
                    let (x, y) = m.coordinates(t);
                    let mut v = json!({ "t": t, "x": x, "y": y });
                    if let Some(file) = file {
                        v["file"] = json!(file);
                    }
                    v
                })
                .collect();
            emit(
                out,
                &json!({
                    "c": m.c,
                    "shrinking": if m.shrink_x { "x" } else { "y" },
                    "frames": list,
                }),
            )
        }
    }
}

fn render_cmd(cmd: RenderCmd, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        RenderCmd::Framework {
            input,
            coloring,
            style,
            output,
        } => {
            let (f, b) = load_framework(&input)?;
            let c = coloring
                .map(|p| load_coloring(&p, &f.graph, b.full_graph()))
                .transpose()?;
            let deco = Decorations {
                coloring: c.as_ref(),
                braces: b.braces(),
            };
            let svg = render::render_framework(&f.graph, &f.points, &style.style(1), &deco)?;
            match output {
                Some(path) => write_text(&path, &svg),
                None => emit_text(out, &svg),
            }
        }
        RenderCmd::Flex {
            flex,
            framework,
            coloring,
            frames,
            t,
            out_dir,
            prefix,
            animated,
            seconds,
            style,
        } => {
            let x = load_doc::<FlexDoc>(&flex)?.to_flex()?;
            let g = x.graph.clone();
            let braces: Vec<(usize, usize)> = match &framework {
                Some(p) => {
                    let (_, b) = load_framework(p)?;
                    b.brace_ids()
                        .iter()
                        .map(|(u, v)| Ok((g.require_index(u)?, g.require_index(v)?)))
                        .collect::<Result<_, Error>>()?
                }
                None => Vec::new(),
            };
            let full = g.with_extra_edges(&braces)?;
            let c = coloring.map(|p| load_coloring(&p, &g, &full)).transpose()?;
            let deco = Decorations {
                coloring: c.as_ref(),
                braces: &braces,
            };
            let style = style.style(frames);
            style.validate()?;
            if t.is_some() && frames != 1 {
                return Err(CliError::Usage("--t needs --frames 1".into()));
            }
            let times = render::frame_times(&x, frames, t);
            if let Some(path) = &animated {
                write_text(
                    path,
                    &render::render_animated(&x, &times, seconds, &style, &deco)?,
                )?;
            }
            let svgs = render::render_frames(&x, &times, &style, &deco)?;
            match out_dir {
                Some(dir) => {
                    create_dir(&dir)?;
                    let mut list = Vec::new();
                    for (i, (svg, t)) in svgs.iter().zip(&times).enumerate() {
                        let path = out_path(&dir, &prefix, i, svgs.len());
                        write_text(&path, svg)?;
                        list.push(json!({ "t": t, "file": path.display().to_string() }));
                    }
                    emit(out, &json!({ "frames": list }))
                }
                None if svgs.len() == 1 => emit_text(out, &svgs[0]),
                None if animated.is_some() => Ok(()),
                None => Err(CliError::Usage("several frames need --out-dir".into())),
            }
        }
    }
}
