//! Closed-form flexes built from NAC-colorings, and their numeric checks.
//!
//! A [`Flex`] places vertex `v` at `R(t)(a(v) − A) + (b(v) − B)`, where
//! `R(t)` is the clockwise rotation by `t`, `a` is constant on blue
//! components, `b` is constant on red components, and `(A, B)` is an
//! optional centering pair.

use std::collections::VecDeque;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::framework::{add, dist, norm, sub, Framework, Point, GEOMETRIC_TOL};
use crate::graph::{compose, require_valid_action, Graph, SymmetryAction};
use crate::nac::{
    is_cartesian, is_nac, monochromatic_components, symmetric_nac_with_perm, Color, EdgeColoring,
};
use crate::ribbons::compute_ribbons;

/// Threshold on the variation of a relative edge angle for a motion to
/// count as non-trivial.
pub const ANGLE_WITNESS: f64 = 1e-3;

/// Clockwise rotation of `p` by `t` radians.
pub fn rotate_cw(t: f64, p: Point) -> Point {
    let (s, c) = t.sin_cos();
    [c * p[0] + s * p[1], -s * p[0] + c * p[1]]
}

/// A one-parameter family of placements of a fixed graph.
pub trait Motion {
    fn graph(&self) -> &Graph;
    fn placement_at(&self, t: f64) -> Vec<Point>;
    fn domain(&self) -> (f64, f64);
}

#[derive(Clone, Debug, PartialEq)]
pub struct Flex {
    pub graph: Graph,
    pub base: usize,
    /// Rotated offset per vertex.
    pub rotating: Vec<Point>,
    /// Fixed offset per vertex.
    pub fixed: Vec<Point>,
    pub centering: Option<(Point, Point)>,
}

impl Flex {
    pub fn placement(&self, t: f64) -> Vec<Point> {
        let (ca, cb) = self.centering.unwrap_or(([0.0, 0.0], [0.0, 0.0]));
        self.rotating
            .iter()
            .zip(&self.fixed)
            .map(|(&a, &b)| add(rotate_cw(t, sub(a, ca)), sub(b, cb)))
            .collect()
    }
}

impl Motion for Flex {
    fn graph(&self) -> &Graph {
        &self.graph
    }

    fn placement_at(&self, t: f64) -> Vec<Point> {
        self.placement(t)
    }

    fn domain(&self) -> (f64, f64) {
        (0.0, TAU)
    }
}

/// The framework at parameter `t`.
pub fn evaluate_flex(x: &Flex, t: f64) -> Framework {
    Framework::new(x.graph.clone(), x.placement(t)).expect("one point per vertex")
}

/// Flex from a NAC-coloring and one point per monochromatic component.
///
/// `red_points[i]` is assigned to the `i`-th red component and
/// `blue_points[j]` to the `j`-th blue component, in the order of
/// [`monochromatic_components`]. The components of `base` must get the
/// origin. Vertex `v` in red component `i` and blue component `j` moves as
/// `R(t)·blue_points[j] + red_points[i]`.
pub fn flex_from_nac(
    g: &Graph,
    c: &EdgeColoring,
    red_points: &[Point],
    blue_points: &[Point],
    base: usize,
) -> Result<Flex> {
    if !is_nac(g, c)? {
        return Err(Error::NotNac);
    }
    let red = component_index(
        &monochromatic_components(g, c, Color::Red)?,
        g.vertex_count(),
    );
    let blue = component_index(
        &monochromatic_components(g, c, Color::Blue)?,
        g.vertex_count(),
    );
    for (points, label, color) in [(red_points, &red, "red"), (blue_points, &blue, "blue")] {
        let count = label.iter().max().map_or(0, |m| m + 1);
        if points.len() != count {
            return Err(Error::Format(format!(
                "{} {color} points for {count} {color} components",
                points.len()
            )));
        }
        if points[label[base]] != [0.0, 0.0] {
            return Err(Error::BaseNotAtOrigin);
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if dist(points[i], points[j]) <= GEOMETRIC_TOL {
                    return Err(Error::RepeatedComponentPoint { color });
                }
            }
        }
    }
    Ok(Flex {
        graph: g.clone(),
        base,
        rotating: blue.iter().map(|&j| blue_points[j]).collect(),
        fixed: red.iter().map(|&i| red_points[i]).collect(),
        centering: None,
    })
}

/// Distinct points for `count` components with the one at `origin_at`
/// placed at the origin.
pub fn spread_points(count: usize, origin_at: usize) -> Vec<Point> {
    let mut k = 0;
    (0..count)
        .map(|i| {
            if i == origin_at {
                return [0.0, 0.0];
            }
            k += 1;
            let angle = 2.399963229728653 * k as f64;
            let r = 1.0 + 0.25 * k as f64;
            [r * angle.cos(), r * angle.sin()]
        })
        .collect()
}

fn component_index(blocks: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut label = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            label[v] = i;
        }
    }
    label
}

/// Sums of blue and of red edge displacements along paths from `base`,
/// verified to be path independent.
fn walk_sums(f: &Framework, c: &EdgeColoring, base: usize) -> Result<(Vec<Point>, Vec<Point>)> {
    let g = &f.graph;
    let n = g.vertex_count();
    let mut blue: Vec<Option<Point>> = vec![None; n];
    let mut red: Vec<Option<Point>> = vec![None; n];
    blue[base] = Some([0.0, 0.0]);
    red[base] = Some([0.0, 0.0]);
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if blue[w].is_none() {
                let e = g.edge_id(u, w).unwrap();
                let d = sub(f.points[w], f.points[u]);
                let (db, dr) = match c.color(e) {
                    Color::Blue => (d, [0.0, 0.0]),
                    Color::Red => ([0.0, 0.0], d),
                };
                blue[w] = Some(add(blue[u].unwrap(), db));
                red[w] = Some(add(red[u].unwrap(), dr));
                queue.push_back(w);
            }
        }
    }
    if blue.iter().any(Option::is_none) {
        return Err(Error::Disconnected);
    }
    let blue: Vec<Point> = blue.into_iter().map(Option::unwrap).collect();
    let red: Vec<Point> = red.into_iter().map(Option::unwrap).collect();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let d = sub(f.points[v], f.points[u]);
        let (sum, other) = match c.color(e) {
            Color::Blue => (&blue, &red),
            Color::Red => (&red, &blue),
        };
        let scale = norm(d).max(1.0);
        if dist(sub(sum[v], sum[u]), d) > GEOMETRIC_TOL * scale
            || dist(other[v], other[u]) > GEOMETRIC_TOL * scale
        {
            return Err(Error::WalkSumInconsistent(
                g.vertex(u).clone(),
                g.vertex(v).clone(),
            ));
        }
    }
    Ok((blue, red))
}

fn check_pframework_input(f: &Framework, c: &EdgeColoring) -> Result<()> {
    let report = crate::framework::validate_parallelogram(f);
    if !report.valid {
        return Err(Error::NotParallelogram(match report.offending_cycle {
            Some(cy) => format!("4-cycle {} {} {} {}", cy[0], cy[1], cy[2], cy[3]),
            None => "placement is not injective".into(),
        }));
    }
    if !is_cartesian(&f.graph, c)? {
        return Err(Error::NotCartesian);
    }
    if !compute_ribbons(&f.graph).is_monochromatic(c) {
        return Err(Error::NotCartesian);
    }
    Ok(())
}

/// Flex of a parallelogram framework along a cartesian NAC-coloring with
/// monochromatic ribbons; at `t = 0` it is the framework translated so that
/// `base` sits at the origin.
pub fn pframework_flex(f: &Framework, c: &EdgeColoring, base: usize) -> Result<Flex> {
    check_pframework_input(f, c)?;
    let (blue, red) = walk_sums(f, c, base)?;
    Ok(Flex {
        graph: f.graph.clone(),
        base,
        rotating: blue,
        fixed: red,
        centering: None,
    })
}

/// Rotation angle `θ` (counter-clockwise positive) realizing the action on
/// the placement, `ρ(γv) − c = R_ccw(θ)(ρ(v) − c)`, with `|θ| = 2π/k`.
pub fn symmetry_angle(f: &Framework, perm: &[usize], k: usize) -> Result<f64> {
    let n = f.points.len();
    let centroid = f.points.iter().fold([0.0, 0.0], |s, &p| {
        add(s, [p[0] / n as f64, p[1] / n as f64])
    });
    let step = TAU / k as f64;
    let scale = f
        .points
        .iter()
        .map(|&p| dist(p, centroid))
        .fold(1.0, f64::max);
    for theta in [step, -step] {
        let ok = (0..n).all(|v| {
            let want = add(rotate_cw(-theta, sub(f.points[v], centroid)), centroid);
            dist(want, f.points[perm[v]]) <= GEOMETRIC_TOL * scale
        });
        if ok {
            return Ok(theta);
        }
    }
    Err(Error::InvalidAction(
        "placement is not rotationally symmetric under the action".into(),
    ))
}

/// Flex whose every frame is symmetric under the action: the rotating and
/// fixed parts are centred on the averages over the orbit of `base`.
pub fn symmetric_flex(
    f: &Framework,
    a: &SymmetryAction,
    c: &EdgeColoring,
    base: usize,
) -> Result<Flex> {
    let perm = require_valid_action(&f.graph, a)?;
    if !symmetric_nac_with_perm(&f.graph, &perm, a.k, c)? {
        return Err(Error::NotSymmetric);
    }
    check_pframework_input(f, c)?;
    symmetry_angle(f, &perm, a.k)?;
    let (blue, red) = walk_sums(f, c, base)?;
    let mut orbit = base;
    let (mut sa, mut sb) = ([0.0, 0.0], [0.0, 0.0]);
    for _ in 0..a.k {
        sa = add(sa, blue[orbit]);
        sb = add(sb, red[orbit]);
        orbit = perm[orbit];
    }
    let k = a.k as f64;
    Ok(Flex {
        graph: f.graph.clone(),
        base,
        rotating: blue,
        fixed: red,
        centering: Some(([sa[0] / k, sa[1] / k], [sb[0] / k, sb[1] / k])),
    })
}

/// Largest `‖ρ_t(γv) − R_θ ρ_t(v)‖` over vertices and samples, where `R_θ`
/// rotates counter-clockwise by `theta` about the origin.
pub fn equivariance_residual<M: Motion + ?Sized>(
    m: &M,
    perm: &[usize],
    theta: f64,
    samples: usize,
) -> f64 {
    sample_times(m.domain(), samples)
        .into_iter()
        .map(|t| {
            let p = m.placement_at(t);
            (0..p.len())
                .map(|v| dist(p[perm[v]], rotate_cw(-theta, p[v])))
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// Report of [`check_flex`].
#[derive(Clone, Debug, PartialEq)]
pub struct FlexReport {
    pub samples: usize,
    pub max_length_deviation: f64,
    pub max_angle_variation: f64,
    /// Two edges whose relative angle varies by more than [`ANGLE_WITNESS`].
    pub witness: Option<(usize, usize)>,
    pub equivariance_residual: Option<f64>,
}

impl FlexReport {
    pub fn nontrivial(&self) -> bool {
        self.witness.is_some()
    }

    pub fn preserves_lengths(&self, tol: f64) -> bool {
        self.max_length_deviation <= tol
    }
}

/// `samples` parameters spread uniformly over the closed domain.
pub fn sample_times((lo, hi): (f64, f64), samples: usize) -> Vec<f64> {
    match samples {
        0 => Vec::new(),
        1 => vec![lo],
        n => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Samples a motion and measures edge-length drift against `f`, looks for a
/// pair of edges whose relative angle changes, and optionally measures the
/// symmetry residual for `(permutation, angle)`.
pub fn check_flex<M: Motion + ?Sized>(
    f: &Framework,
    m: &M,
    samples: usize,
    symmetry: Option<(&[usize], f64)>,
) -> FlexReport {
    let g = m.graph();
    let lengths = f.edge_lengths();
    let times = sample_times(m.domain(), samples);
    let mut max_dev: f64 = 0.0;
    let mut variation = vec![0.0f64; g.edge_count()];
    let mut reference: Option<Vec<f64>> = None;
    for &t in &times {
        let p = m.placement_at(t);
        let vecs: Vec<Point> = g.edges().iter().map(|&(u, v)| sub(p[v], p[u])).collect();
        for (d, &l) in vecs.iter().zip(&lengths) {
            max_dev = max_dev.max((norm(*d) - l).abs());
        }
        if vecs.is_empty() {
            continue;
        }
        let r = vecs[0];
        let angles: Vec<f64> = vecs
            .iter()
            .map(|d| (r[0] * d[1] - r[1] * d[0]).atan2(r[0] * d[0] + r[1] * d[1]))
            .collect();
        match &reference {
            None => reference = Some(angles),
            Some(a0) => {
                for (e, (&a, &b)) in angles.iter().zip(a0).enumerate() {
                    variation[e] = variation[e].max(wrap_angle(a - b).abs());
                }
            }
        }
    }
    let (best, max_angle_variation) =
        variation
            .iter()
            .enumerate()
            .fold(
                (None, 0.0),
                |(bi, bv), (e, &v)| {
                    if v > bv {
                        (Some(e), v)
                    } else {
                        (bi, bv)
                    }
                },
            );
    let witness = best
        .filter(|_| max_angle_variation > ANGLE_WITNESS)
        .map(|e| (0, e));
    FlexReport {
        samples: times.len(),
        max_length_deviation: max_dev,
        max_angle_variation,
        witness,
        equivariance_residual: symmetry
            .map(|(perm, theta)| equivariance_residual(m, perm, theta, samples)),
    }
}

/// Largest `‖ρ_0(v) − (ρ(v) − ρ(base))‖`.
pub fn base_condition_residual(f: &Framework, x: &Flex) -> f64 {
    let p0 = x.placement(0.0);
    let b = f.points[x.base];
    p0.iter()
        .zip(&f.points)
        .map(|(&q, &p)| dist(q, sub(p, b)))
        .fold(0.0, f64::max)
}

/// Powers `γ^0 .. γ^{k-1}` of a permutation.
pub fn permutation_powers(perm: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(0..perm.len()).collect::<Vec<_>>()];
    for j in 1..k {
        out.push(compose(perm, &out[j - 1]));
    }
    out
}
