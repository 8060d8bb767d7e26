//! Deterministic SVG output for frameworks and motions.

use std::fmt::Write;

use rigidity_kit::flex::{sample_times, Motion};
use rigidity_kit::graph::four_cycles;
use rigidity_kit::{compute_ribbons, Color, EdgeColoring, Graph, Point};

use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderStyle {
    pub red: String,
    pub blue: String,
    pub uncolored: String,
    pub brace: String,
    /// Draw a marker at each edge midpoint, colored per ribbon.
    pub ribbons: bool,
    /// Fill the 4-cycles spanned by braces.
    pub fill_braced: bool,
    pub face_fill: String,
    pub frames: usize,
    /// Pixels per unit length.
    pub scale: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            red: "#d62728".into(),
            blue: "#1f77b4".into(),
            uncolored: "#333333".into(),
            brace: "#7f7f7f".into(),
            ribbons: false,
            fill_braced: true,
            face_fill: "#e8d9a8".into(),
            frames: 1,
            scale: 60.0,
        }
    }
}

impl RenderStyle {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.frames == 0 {
            return Err(CliError::Usage("frame count must be at least 1".into()));
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(CliError::Usage("scale must be positive".into()));
        }
        Ok(())
    }
}

/// Everything drawn besides the placement itself.
#[derive(Clone, Debug, Default)]
pub struct Decorations<'a> {
    pub coloring: Option<&'a EdgeColoring>,
    /// Brace diagonals as vertex index pairs.
    pub braces: &'a [(usize, usize)],
}

const MARGIN: f64 = 0.5;

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

struct Viewport {
    min: Point,
    max: Point,
    scale: f64,
}

impl Viewport {
    fn around<'a>(frames: impl IntoIterator<Item = &'a Vec<Point>>, scale: f64) -> Viewport {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in frames.into_iter().flatten() {
            for i in 0..2 {
                min[i] = min[i].min(p[i]);
                max[i] = max[i].max(p[i]);
            }
        }
        if min[0] > max[0] {
            min = [0.0, 0.0];
            max = [0.0, 0.0];
        }
        Viewport {
            min: [min[0] - MARGIN, min[1] - MARGIN],
            max: [max[0] + MARGIN, max[1] + MARGIN],
            scale,
        }
    }

    /// Plane point to canvas coordinates; the y axis points up in the plane.
    fn map(&self, p: Point) -> (String, String) {
        (
            num((p[0] - self.min[0]) * self.scale),
            num((self.max[1] - p[1]) * self.scale),
        )
    }

    fn header(&self, out: &mut String) {
        let w = num((self.max[0] - self.min[0]) * self.scale);
        let h = num((self.max[1] - self.min[1]) * self.scale);
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
        );
    }
}

/// Quadrilaterals whose diagonal is a brace, one per brace.
fn braced_faces(g: &Graph, braces: &[(usize, usize)]) -> Vec<[usize; 4]> {
    let cycles = four_cycles(g);
    braces
        .iter()
        .filter_map(|&(x, y)| {
            let key = (x.min(y), x.max(y));
            cycles
                .iter()
                .copied()
                .find(|&[a, b, c, d]| (a.min(c), a.max(c)) == key || (b.min(d), b.max(d)) == key)
        })
        .collect()
}

fn edge_color<'s>(style: &'s RenderStyle, c: Option<&EdgeColoring>, e: usize) -> &'s str {
    match c.map(|c| c.color(e)) {
        Some(Color::Red) => &style.red,
        Some(Color::Blue) => &style.blue,
        None => &style.uncolored,
    }
}

fn ribbon_hue(r: usize, count: usize) -> String {
    format!("hsl({},70%,45%)", r * 360 / count.max(1))
}

fn check_decorations(g: &Graph, points: &[Point], deco: &Decorations) -> Result<(), CliError> {
    if points.len() != g.vertex_count() {
        return Err(CliError::Usage(
            "placement does not match the vertex count".into(),
        ));
    }
    if let Some(c) = deco.coloring {
        if c.len() != g.edge_count() {
            return Err(CliError::Usage(
                "coloring does not match the edge count".into(),
            ));
        }
    }
    if deco
        .braces
        .iter()
        .any(|&(a, b)| a.max(b) >= g.vertex_count())
    {
        return Err(CliError::Usage("brace outside the vertex set".into()));
    }
    Ok(())
}

fn body(
    out: &mut String,
    g: &Graph,
    p: &[Point],
    vp: &Viewport,
    style: &RenderStyle,
    deco: &Decorations,
) {
    let width = num(0.04 * style.scale);
    if style.fill_braced && !deco.braces.is_empty() {
        let _ = writeln!(
            out,
            "<g class=\"faces\" fill=\"{}\" stroke=\"none\">",
            style.face_fill
        );
        for quad in braced_faces(g, deco.braces) {
            let pts: Vec<String> = quad
                .iter()
                .map(|&v| {
                    let (x, y) = vp.map(p[v]);
                    format!("{x},{y}")
                })
                .collect();
            let _ = writeln!(out, "<polygon points=\"{}\"/>", pts.join(" "));
        }
        out.push_str("</g>\n");
    }
    let _ = writeln!(
        out,
        "<g class=\"edges\" stroke-width=\"{width}\" stroke-linecap=\"round\">"
    );
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (x1, y1) = vp.map(p[u]);
        let (x2, y2) = vp.map(p[v]);
        let _ = writeln!(
            out,
            "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{}\"/>",
            edge_color(style, deco.coloring, e)
        );
    }
    out.push_str("</g>\n");
    if !deco.braces.is_empty() {
        let dash = num(0.08 * style.scale);
        let _ = writeln!(
            out,
            "<g class=\"braces\" stroke=\"{}\" stroke-width=\"{width}\" stroke-dasharray=\"{dash}\">",
            style.brace
        );
        for &(u, v) in deco.braces {
            let (x1, y1) = vp.map(p[u]);
            let (x2, y2) = vp.map(p[v]);
            let _ = writeln!(
                out,
                "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>"
            );
        }
        out.push_str("</g>\n");
    }
    if style.ribbons && g.edge_count() > 0 {
        let rd = compute_ribbons(g);
        let radius = num(0.07 * style.scale);
        out.push_str("<g class=\"ribbons\">\n");
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let r = rd.ribbon_of(e);
            let (x, y) = vp.map([(p[u][0] + p[v][0]) / 2.0, (p[u][1] + p[v][1]) / 2.0]);
            let _ = writeln!(
                out,
                "<circle cx=\"{x}\" cy=\"{y}\" r=\"{radius}\" fill=\"{}\" data-ribbon=\"{r}\"/>",
                ribbon_hue(r, rd.count())
            );
        }
        out.push_str("</g>\n");
    }
    let radius = num(0.05 * style.scale);
    out.push_str("<g class=\"vertices\" fill=\"#000000\">\n");
    for &q in p {
        let (x, y) = vp.map(q);
        let _ = writeln!(out, "<circle cx=\"{x}\" cy=\"{y}\" r=\"{radius}\"/>");
    }
    out.push_str("</g>\n");
}

/// One SVG document of a placed graph.
pub fn render_framework(
    g: &Graph,
    points: &[Point],
    style: &RenderStyle,
    deco: &Decorations,
) -> Result<String, CliError> {
    style.validate()?;
    check_decorations(g, points, deco)?;
    let frame = points.to_vec();
    let vp = Viewport::around([&frame], style.scale);
    let mut out = String::new();
    vp.header(&mut out);
    body(&mut out, g, points, &vp, style, deco);
    out.push_str("</svg>\n");
    Ok(out)
}

/// Parameters of the frames: `style.frames` values spread over the motion's
/// domain, or `[t]` when a single frame at `t` is requested.
pub fn frame_times<M: Motion + ?Sized>(m: &M, frames: usize, at: Option<f64>) -> Vec<f64> {
    match (frames, at) {
        (1, Some(t)) => vec![t],
        _ => sample_times(m.domain(), frames),
    }
}

/// One SVG per parameter, all sharing the bounding box of the whole sequence.
pub fn render_frames<M: Motion + ?Sized>(
    m: &M,
    times: &[f64],
    style: &RenderStyle,
    deco: &Decorations,
) -> Result<Vec<String>, CliError> {
    style.validate()?;
    let g = m.graph();
    let placements: Vec<Vec<Point>> = times.iter().map(|&t| m.placement_at(t)).collect();
    for p in &placements {
        check_decorations(g, p, deco)?;
    }
    let vp = Viewport::around(&placements, style.scale);
    Ok(placements
        .iter()
        .map(|p| {
            let mut out = String::new();
            vp.header(&mut out);
            body(&mut out, g, p, &vp, style, deco);
            out.push_str("</svg>\n");
            out
        })
        .collect())
}

/// A single SVG whose edges and vertices move through the frames in a loop
/// of `seconds`.
pub fn render_animated<M: Motion + ?Sized>(
    m: &M,
    times: &[f64],
    seconds: f64,
    style: &RenderStyle,
    deco: &Decorations,
) -> Result<String, CliError> {
    style.validate()?;
    let g = m.graph();
    let placements: Vec<Vec<Point>> = times.iter().map(|&t| m.placement_at(t)).collect();
    let Some(first) = placements.first() else {
        return Err(CliError::Usage("no frames".into()));
    };
    check_decorations(g, first, deco)?;
    let vp = Viewport::around(&placements, style.scale);
    let dur = num(seconds);
    let track = |v: usize, axis: usize| -> String {
        placements
            .iter()
            .map(|p| {
                let (x, y) = vp.map(p[v]);
                if axis == 0 {
                    x
                } else {
                    y
                }
            })
            .collect::<Vec<_>>()
            .join(";")
    };
    let animate = |attr: &str, values: String| {
        format!("<animate attributeName=\"{attr}\" values=\"{values}\" dur=\"{dur}s\" repeatCount=\"indefinite\"/>")
    };
    let mut out = String::new();
    vp.header(&mut out);
    let width = num(0.04 * style.scale);
    let _ = writeln!(
        out,
        "<g class=\"edges\" stroke-width=\"{width}\" stroke-linecap=\"round\">"
    );
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (x1, y1) = vp.map(first[u]);
        let (x2, y2) = vp.map(first[v]);
        let _ = writeln!(
            out,
            "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"{}\">",
            edge_color(style, deco.coloring, e)
        );
        for (attr, vertex, axis) in [("x1", u, 0), ("y1", u, 1), ("x2", v, 0), ("y2", v, 1)] {
            let _ = writeln!(out, "{}", animate(attr, track(vertex, axis)));
        }
        out.push_str("</line>\n");
    }
    out.push_str("</g>\n");
    let radius = num(0.05 * style.scale);
    out.push_str("<g class=\"vertices\" fill=\"#000000\">\n");
    for (v, &q) in first.iter().enumerate() {
        let (x, y) = vp.map(q);
        let _ = writeln!(out, "<circle cx=\"{x}\" cy=\"{y}\" r=\"{radius}\">");
        let _ = writeln!(out, "{}", animate("cx", track(v, 0)));
        let _ = writeln!(out, "{}", animate("cy", track(v, 1)));
        out.push_str("</circle>\n");
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
