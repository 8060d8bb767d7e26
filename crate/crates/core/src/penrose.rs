//! Penrose rhombus patches from pentagrids, with exact coordinates.
//!
//! Family `j` of the pentagrid consists of the lines `z·e_j + γ_j = k`,
//! `k ∈ ℤ`. A patch is the dual of the finite arrangement formed by the
//! window lines: every intersection of two window lines becomes a rhombus
//! whose corners are `Σ_j K_j e_j`, where `K_j` counts (up to an offset) the
//! window lines of family `j` below the point. Inside the window this agrees
//! with the usual ceiling-index construction; at the border the outer lines
//! are simply absent, so every window line crosses every non-parallel one
//! exactly once and the patch is a rhombic tiling of a convex decagon.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{sin_fifth_ratio, Cyclo5, QSqrt5, Rational};
use crate::error::{Error, Result};
use crate::framework::{ribbon_directions, validate_parallelogram, Framework};
use crate::graph::{validate_symmetry_action, Graph, SymmetryAction, VertexId};
use crate::ribbons::{compute_ribbons, decide_rigidity, ribbon_graph, BracedGraph};

/// A grid line: family `j` and index `k`.
pub type Line = (usize, i64);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Window {
    /// Lines `k_min[j] ..= k_max[j]` of each family.
    Index { ranges: [(i64, i64); 5] },
    /// Lines with `|k − γ_j| ≤ radius`.
    Radius(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PentagridParams {
    pub gamma: [Rational; 5],
    pub window: Window,
    /// Resolve concurrent window lines by shifting every offset by the same
    /// infinitesimal amount instead of failing.
    pub perturb: bool,
}

impl PentagridParams {
    pub fn new(gamma: [Rational; 5], window: Window) -> Self {
        PentagridParams {
            gamma,
            window,
            perturb: false,
        }
    }

    /// Same index range for all five families.
    pub fn uniform(gamma: [Rational; 5], kmin: i64, kmax: i64) -> Self {
        PentagridParams::new(
            gamma,
            Window::Index {
                ranges: [(kmin, kmax); 5],
            },
        )
    }

    /// Window line indices per family.
    pub fn ranges(&self) -> Result<[(i64, i64); 5]> {
        let sum = self.gamma.iter().fold(Rational::zero(), |a, &b| a + b);
        if !sum.is_integer() {
            return Err(Error::InvalidParams(format!(
                "offsets sum to {sum}, not an integer"
            )));
        }
        let ranges = match &self.window {
            Window::Index { ranges } => *ranges,
            Window::Radius(r) => {
                if *r < Rational::zero() {
                    return Err(Error::InvalidParams("negative radius".into()));
                }
                let mut out = [(0, 0); 5];
                for (j, o) in out.iter_mut().enumerate() {
                    let g = self.gamma[j];
                    *o = (
                        (g - r).ceil().to_integer() as i64,
                        (g + r).floor().to_integer() as i64,
                    );
                }
                out
            }
        };
        for (j, &(a, b)) in ranges.iter().enumerate() {
            if a > b {
                return Err(Error::InvalidParams(format!(
                    "window of family {j} is empty"
                )));
            }
        }
        Ok(ranges)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tile {
    /// Fat rhombus, angles 72° and 108°.
    #[serde(rename = "T")]
    Fat,
    /// Thin rhombus, angles 36° and 144°.
    #[serde(rename = "t")]
    Thin,
}

impl Tile {
    pub fn parse(s: &str) -> Result<Tile> {
        match s {
            "T" | "fat" => Ok(Tile::Fat),
            "t" | "thin" => Ok(Tile::Thin),
            _ => Err(Error::UnknownOrientation(s.to_owned())),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Tile::Fat => "T",
            Tile::Thin => "t",
        }
    }

    /// The two interior angles in degrees, acute first.
    pub fn angles_deg(self) -> (f64, f64) {
        match self {
            Tile::Fat => (72.0, 108.0),
            Tile::Thin => (36.0, 144.0),
        }
    }
}

/// Tile type of a rhombus with edge directions `e_j`, `e_l`.
pub fn tile_type(j: usize, l: usize) -> Result<Tile> {
    match (l + 5 - j % 5) % 5 {
        0 => Err(Error::EqualDirectionIndices(j)),
        1 | 4 => Ok(Tile::Fat),
        _ => Ok(Tile::Thin),
    }
}

/// One rhombus: the intersection of `lines[0]` and `lines[1]` (families in
/// increasing order). With `(r, k_r), (s, k_s) = lines`, corner `i` has
/// indices `K_r = k_r + [i ∈ {1,2}]`, `K_s = k_s + [i ∈ {2,3}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub lines: [Line; 2],
    pub corners: [usize; 4],
}

impl Face {
    pub fn tile(&self) -> Tile {
        tile_type(self.lines[0].0, self.lines[1].0).expect("distinct families")
    }

    /// Unordered family pair.
    pub fn orientation(&self) -> (usize, usize) {
        (self.lines[0].0, self.lines[1].0)
    }

    /// The diagonal used as a brace: corners 1 and 3, i.e. the acute corners
    /// of a thin rhombus and the obtuse corners of a fat one.
    pub fn brace(&self) -> (usize, usize) {
        (self.corners[1], self.corners[3])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PenrosePatch {
    pub framework: Framework,
    pub faces: Vec<Face>,
    /// Grid line crossed by each edge, by edge index.
    pub edge_lines: Vec<Line>,
}

impl PenrosePatch {
    pub fn graph(&self) -> &Graph {
        &self.framework.graph
    }

    pub fn exact(&self) -> &[Cyclo5] {
        self.framework
            .exact
            .as_deref()
            .expect("patches carry exact coordinates")
    }

    /// Distinct grid lines in ascending order.
    pub fn lines(&self) -> Vec<Line> {
        let mut v: Vec<Line> = self.edge_lines.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// `e_j = α e_r + β e_s`.
fn coefficients(r: usize, s: usize, j: usize) -> (QSqrt5, QSqrt5) {
    let d = sin_fifth_ratio(s as i64 - r as i64);
    (
        sin_fifth_ratio(s as i64 - j as i64) / d,
        sin_fifth_ratio(j as i64 - r as i64) / d,
    )
}

/// Builds the patch of the window lines.
pub fn generate_patch(p: &PentagridParams) -> Result<PenrosePatch> {
    let ranges = p.ranges()?;
    let gamma: Vec<QSqrt5> = p.gamma.iter().map(|&g| QSqrt5::from_rational(g)).collect();
    let mut raw_faces: Vec<([Line; 2], [Cyclo5; 4])> = Vec::new();
    for r in 0..5 {
        for s in r + 1..5 {
            let others: Vec<(usize, QSqrt5, QSqrt5, i32)> = (0..5)
                .filter(|&j| j != r && j != s)
                .map(|j| {
                    let (a, b) = coefficients(r, s, j);
                    // sign of the value's derivative under γ ↦ γ + ε
                    let drift = (QSqrt5::one() - a - b).signum();
                    debug_assert_ne!(drift, 0);
                    (j, a, b, drift)
                })
                .collect();
            for kr in ranges[r].0..=ranges[r].1 {
                let xa = QSqrt5::from_int(kr as i128) - gamma[r];
                for ks in ranges[s].0..=ranges[s].1 {
                    let xb = QSqrt5::from_int(ks as i128) - gamma[s];
                    let mut k = [0i64; 5];
                    let mut concurrent = 2;
                    for &(j, a, b, drift) in &others {
                        let value = a * xa + b * xb + gamma[j];
                        let (lo, hi) = ranges[j];
                        let kj = match value.as_integer() {
                            Some(n) if (lo as i128..=hi as i128).contains(&n) => {
                                concurrent += 1;
                                if drift > 0 {
                                    n as i64 + 1
                                } else {
                                    n as i64
                                }
                            }
                            _ => value.ceil(),
                        };
                        k[j] = kj.clamp(lo, hi + 1);
                    }
                    if concurrent > 2 && !p.perturb {
                        return Err(Error::DegeneratePentagrid {
                            a: (r, kr),
                            b: (s, ks),
                            count: concurrent,
                        });
                    }
                    let mut corners = [Cyclo5::ZERO; 4];
                    for (i, c) in corners.iter_mut().enumerate() {
                        k[r] = kr + i64::from(i == 1 || i == 2);
                        k[s] = ks + i64::from(i == 2 || i == 3);
                        *c = Cyclo5::new(k);
                    }
                    raw_faces.push(([(r, kr), (s, ks)], corners));
                }
            }
        }
    }
    assemble(raw_faces)
}

fn assemble(raw_faces: Vec<([Line; 2], [Cyclo5; 4])>) -> Result<PenrosePatch> {
    let mut points: Vec<Cyclo5> = raw_faces.iter().flat_map(|(_, c)| *c).collect();
    points.sort_unstable_by(|a, b| a.norm_sq().cmp(&b.norm_sq()).then(a.cmp(b)));
    points.dedup();
    let index: HashMap<Cyclo5, usize> = points.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    let mut edge_line: BTreeMap<(usize, usize), Line> = BTreeMap::new();
    let mut faces = Vec::with_capacity(raw_faces.len());
    for (lines, corners) in raw_faces {
        let c = corners.map(|x| index[&x]);
        for (i, line) in [(0, lines[0]), (1, lines[1]), (2, lines[0]), (3, lines[1])] {
            let (u, v) = if i < 2 {
                (c[i], c[i + 1])
            } else {
                (c[(i + 1) % 4], c[i])
            };
            let key = (u.min(v), u.max(v));
            if let Some(&old) = edge_line.get(&key) {
                if old != line {
                    return Err(Error::InvalidParams(format!(
                        "edge crosses two grid lines {old:?} and {line:?}"
                    )));
                }
            }
            edge_line.insert(key, line);
        }
        faces.push(Face { lines, corners: c });
    }
    let graph = Graph::from_indexed(points.len(), &edge_line.keys().copied().collect::<Vec<_>>())?;
    let edge_lines = edge_line.values().copied().collect();
    Ok(PenrosePatch {
        framework: Framework::exact(graph, points)?,
        faces,
        edge_lines,
    })
}

/// Checks of the ribbon structure of a patch.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RibbonPropertyReport {
    pub ribbons: usize,
    /// Every combinatorial ribbon is the edge set of exactly one grid line.
    pub ribbons_match_lines: bool,
    pub all_simple: bool,
    /// Two ribbons are adjacent iff their lines are not parallel.
    pub adjacency_iff_nonparallel: bool,
    /// Every ribbon has edges parallel to one `e_j` and normal orthogonal to it.
    pub five_directions: bool,
    /// Each non-parallel pair shares exactly one rhombus, fat iff the
    /// families are cyclically adjacent.
    pub unique_shared_face_of_predicted_type: bool,
    pub parallelogram: bool,
    pub unit_edges: bool,
    pub angles_ok: bool,
    pub unchecked: Vec<String>,
}

impl RibbonPropertyReport {
    pub fn passed(&self) -> bool {
        self.ribbons_match_lines
            && self.all_simple
            && self.adjacency_iff_nonparallel
            && self.five_directions
            && self.unique_shared_face_of_predicted_type
            && self.parallelogram
            && self.unit_edges
            && self.angles_ok
    }
}

/// Interior angles of every rhombus, in radians, corner by corner.
pub fn face_angles(patch: &PenrosePatch) -> Vec<[f64; 4]> {
    let pts = &patch.framework.points;
    patch
        .faces
        .iter()
        .map(|f| {
            let mut out = [0.0; 4];
            for (i, o) in out.iter_mut().enumerate() {
                let p = pts[f.corners[i]];
                let a = pts[f.corners[(i + 1) % 4]];
                let b = pts[f.corners[(i + 3) % 4]];
                let (ax, ay, bx, by) = (a[0] - p[0], a[1] - p[1], b[0] - p[0], b[1] - p[1]);
                *o = (ax * by - ay * bx).abs().atan2(ax * bx + ay * by);
            }
            out
        })
        .collect()
}

pub fn verify_ribbon_properties(patch: &PenrosePatch) -> RibbonPropertyReport {
    let g = patch.graph();
    let exact = patch.exact();
    let rd = compute_ribbons(g);
    let lines = patch.lines();
    let line_id: HashMap<Line, usize> = lines.iter().enumerate().map(|(i, &l)| (l, i)).collect();

    let ribbons_match_lines = rd.count() == lines.len()
        && rd.ribbons().iter().all(|r| {
            r.iter()
                .all(|&e| patch.edge_lines[e] == patch.edge_lines[r[0]])
        });

    let five_directions = match ribbon_directions(&patch.framework, &rd) {
        Ok(normals) => rd.ribbons().iter().zip(&normals).all(|(r, n)| {
            let j = patch.edge_lines[r[0]].0;
            let [ex, ey] = Cyclo5::unit(j).to_f64();
            r.iter().all(|&e| {
                let (u, v) = g.edge(e);
                (exact[v] - exact[u])
                    .as_signed_unit()
                    .map(|s| s.unsigned_abs() as usize - 1)
                    == Some(j)
            }) && (n[0] * ex + n[1] * ey).abs() < 1e-9
        }),
        Err(_) => false,
    };

    // shared faces per line pair
    let mut shared: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, f) in patch.faces.iter().enumerate() {
        let (a, b) = (line_id[&f.lines[0]], line_id[&f.lines[1]]);
        shared.entry((a.min(b), a.max(b))).or_default().push(i);
    }
    let unique_shared_face_of_predicted_type = (0..lines.len()).all(|a| {
        (a + 1..lines.len()).all(|b| {
            let (la, lb) = (lines[a], lines[b]);
            let faces = shared.get(&(a, b)).map_or(&[][..], |v| &v[..]);
            if la.0 == lb.0 {
                faces.is_empty()
            } else {
                faces.len() == 1 && patch.faces[faces[0]].tile() == tile_type(la.0, lb.0).unwrap()
            }
        })
    });

    let braced = BracedGraph::unbraced(g.clone());
    let adjacency_iff_nonparallel = match &braced {
        Ok(b) => {
            let rg = ribbon_graph(b);
            let family = |r: usize| patch.edge_lines[rd.edges(r)[0]].0;
            let adjacent: std::collections::HashSet<(usize, usize)> =
                rg.edges.iter().copied().collect();
            (0..rd.count()).all(|r| {
                (r + 1..rd.count()).all(|s| adjacent.contains(&(r, s)) == (family(r) != family(s)))
            })
        }
        Err(_) => false,
    };

    let unit_edges = g
        .edges()
        .iter()
        .all(|&(u, v)| (exact[v] - exact[u]).as_signed_unit().is_some());
    let allowed = [36.0f64, 72.0, 108.0, 144.0].map(f64::to_radians);
    let angles_ok = face_angles(patch)
        .iter()
        .flatten()
        .all(|a| allowed.iter().any(|b| (a - b).abs() < 1e-9));

    RibbonPropertyReport {
        ribbons: rd.count(),
        ribbons_match_lines,
        all_simple: rd.all_simple(),
        adjacency_iff_nonparallel,
        five_directions,
        unique_shared_face_of_predicted_type,
        parallelogram: validate_parallelogram(&patch.framework).valid,
        unit_edges,
        angles_ok,
        unchecked: vec![
            "infinitely many ribbons per direction (not observable on a finite patch)".into(),
        ],
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BraceStrategy {
    /// Every rhombus crossed by either of two grid lines.
    TwoRibbons(Line, Line),
    AllTiles(Tile),
    /// Every rhombus of the type except those with the given family pair.
    AllButOrientation(Tile, (usize, usize)),
    /// Each rhombus of the type independently with probability `p`.
    Random {
        tile: Tile,
        p: f64,
        seed: u64,
    },
    Explicit(Vec<usize>),
}

/// Indices of the rhombi selected by a strategy.
pub fn select_faces(patch: &PenrosePatch, strategy: &BraceStrategy) -> Result<Vec<usize>> {
    let faces = &patch.faces;
    let all = 0..faces.len();
    Ok(match strategy {
        BraceStrategy::TwoRibbons(a, b) => {
            let lines = patch.lines();
            for l in [a, b] {
                if lines.binary_search(l).is_err() {
                    return Err(Error::UnknownRibbon(l.0, l.1));
                }
            }
            all.filter(|&i| faces[i].lines.iter().any(|l| l == a || l == b))
                .collect()
        }
        BraceStrategy::AllTiles(t) => all.filter(|&i| faces[i].tile() == *t).collect(),
        BraceStrategy::AllButOrientation(t, (x, y)) => {
            let o = ((*x).min(*y), (*x).max(*y));
            if o.1 >= 5 || o.0 == o.1 || tile_type(o.0, o.1)? != *t {
                return Err(Error::UnknownOrientation(format!("{}{}", o.0, o.1)));
            }
            all.filter(|&i| faces[i].tile() == *t && faces[i].orientation() != o)
                .collect()
        }
        BraceStrategy::Random { tile, p, seed } => {
            check_probability(*p)?;
            let draws = face_draws(*seed, 0, faces.len());
            all.filter(|&i| faces[i].tile() == *tile && draws[i] < *p)
                .collect()
        }
        BraceStrategy::Explicit(list) => {
            if let Some(&bad) = list.iter().find(|&&i| i >= faces.len()) {
                return Err(Error::UnknownFace(bad));
            }
            let mut v = list.clone();
            v.sort_unstable();
            v.dedup();
            v
        }
    })
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// One uniform draw in `[0, 1)` per face for a trial; every trial has its
/// own stream so that the selected sets grow with `p`.
fn face_draws(seed: u64, trial: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    (0..n).map(|_| rng.random::<f64>()).collect()
}

/// Braced graph with one brace per selected rhombus.
pub fn brace(patch: &PenrosePatch, strategy: &BraceStrategy) -> Result<BracedGraph> {
    let braces: Vec<(usize, usize)> = select_faces(patch, strategy)?
        .into_iter()
        .map(|i| patch.faces[i].brace())
        .collect();
    BracedGraph::from_indices(patch.graph().clone(), &braces)
}

/// Fraction of trials whose random bracing makes the bracing graph of the
/// grid lines connected.
pub fn monte_carlo_rigidity(
    patch: &PenrosePatch,
    tile: Tile,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    check_probability(p)?;
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let lines = patch.lines();
    let line_id: HashMap<Line, usize> = lines.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let pairs: Vec<Option<(usize, usize)>> = patch
        .faces
        .iter()
        .map(|f| (f.tile() == tile).then(|| (line_id[&f.lines[0]], line_id[&f.lines[1]])))
        .collect();
    let rigid = (0..trials as u64)
        .into_par_iter()
        .filter(|&trial| {
            let draws = face_draws(seed, trial, pairs.len());
            let mut uf = petgraph::unionfind::UnionFind::<usize>::new(lines.len());
            let mut parts = lines.len();
            for (pair, u) in pairs.iter().zip(draws) {
                if let (Some((a, b)), true) = (pair, u < p) {
                    if uf.union(*a, *b) {
                        parts -= 1;
                    }
                }
            }
            parts <= 1
        })
        .count();
    Ok(rigid as f64 / trials as f64)
}

/// The two fivefold symmetric patterns obtained from equal offsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Sun,
    Star,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Variant> {
        match s {
            "sun" => Ok(Variant::Sun),
            "star" => Ok(Variant::Star),
            _ => Err(Error::SymmetricConstruction(format!("unknown variant {s}"))),
        }
    }

    /// Common offset of all five families.
    pub fn offset(self) -> Rational {
        match self {
            Variant::Sun => Rational::new(-1, 5),
            Variant::Star => Rational::new(2, 5),
        }
    }
}

/// Fivefold symmetric patch: equal offsets, lines with `|k − γ| ≤ radius`,
/// and the clockwise rotation by 2π/5 as a `C_5` action.
pub fn symmetric_patch(
    radius: Rational,
    variant: Variant,
) -> Result<(PenrosePatch, SymmetryAction)> {
    let c = variant.offset();
    let params = PentagridParams {
        gamma: [c; 5],
        window: Window::Radius(radius),
        perturb: true,
    };
    let patch = generate_patch(&params)?;
    let action = rotation_action(&patch)?;
    let report = validate_symmetry_action(patch.graph(), &action)?;
    if !report.is_valid() {
        return Err(Error::SymmetricConstruction(format!("{report:?}")));
    }
    Ok((patch, action))
}

/// The clockwise rotation by 2π/5 acting on a patch with exact coordinates.
pub fn rotation_action(patch: &PenrosePatch) -> Result<SymmetryAction> {
    let exact = patch.exact();
    let index: HashMap<Cyclo5, usize> = exact.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let g = patch.graph();
    let perm = exact
        .iter()
        .map(|c| {
            index.get(&c.rotate_cw()).copied().ok_or_else(|| {
                Error::SymmetricConstruction("vertex set is not rotation invariant".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let generator: BTreeMap<VertexId, VertexId> = perm
        .iter()
        .enumerate()
        .map(|(i, &j)| (g.vertex(i).clone(), g.vertex(j).clone()))
        .collect();
    Ok(SymmetryAction::new(5, generator))
}

/// Verdict of the grid-line bracing graph of a braced patch; `true` when
/// rigid. Convenience wrapper over [`decide_rigidity`].
pub fn patch_is_rigid(b: &BracedGraph) -> Result<bool> {
    Ok(decide_rigidity(b)?.is_rigid())
}
