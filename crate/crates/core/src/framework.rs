//! Plane realizations of graphs and their parallelogram checks.

use crate::cyclotomic::Cyclo5;
use crate::error::{Error, Result};
use crate::graph::{four_cycles, Graph, VertexId};
use crate::ribbons::RibbonDecomposition;

/// Edge lengths below this count as zero for float placements.
pub const ZERO_LENGTH_TOL: f64 = 1e-12;
/// Tolerance of float geometric identities.
pub const GEOMETRIC_TOL: f64 = 1e-9;

pub type Point = [f64; 2];

pub(crate) fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

pub(crate) fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1]]
}

pub(crate) fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

pub(crate) fn dist(a: Point, b: Point) -> f64 {
    norm(sub(a, b))
}

/// A graph with a point per vertex; optionally exact fivefold coordinates,
/// in which case `points` holds their float images.
#[derive(Clone, Debug, PartialEq)]
pub struct Framework {
    pub graph: Graph,
    pub points: Vec<Point>,
    pub exact: Option<Vec<Cyclo5>>,
}

impl Framework {
    pub fn new(graph: Graph, points: Vec<Point>) -> Result<Framework> {
        if points.len() != graph.vertex_count() {
            return Err(Error::Format(format!(
                "{} points for {} vertices",
                points.len(),
                graph.vertex_count()
            )));
        }
        Ok(Framework {
            graph,
            points,
            exact: None,
        })
    }

    pub fn exact(graph: Graph, exact: Vec<Cyclo5>) -> Result<Framework> {
        let mut f = Framework::new(graph, exact.iter().map(Cyclo5::to_f64).collect())?;
        f.exact = Some(exact);
        Ok(f)
    }

    pub fn point(&self, v: usize) -> Point {
        self.points[v]
    }

    pub fn edge_vector(&self, e: usize) -> Point {
        let (u, v) = self.graph.edge(e);
        sub(self.points[v], self.points[u])
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        (0..self.graph.edge_count())
            .map(|e| norm(self.edge_vector(e)))
            .collect()
    }

    pub fn translated(&self, by: Point) -> Framework {
        Framework {
            graph: self.graph.clone(),
            points: self.points.iter().map(|&p| add(p, by)).collect(),
            exact: None,
        }
    }
}

/// Adjacent vertices are placed at distinct points.
pub fn validate_framework(f: &Framework) -> bool {
    f.graph.edges().iter().all(|&(u, v)| match &f.exact {
        Some(x) => x[u] != x[v],
        None => dist(f.points[u], f.points[v]) > ZERO_LENGTH_TOL,
    })
}

/// Outcome of [`validate_parallelogram`].
#[derive(Clone, Debug, PartialEq)]
pub struct ParallelogramReport {
    pub valid: bool,
    pub injective: bool,
    /// First 4-cycle `u1 u2 u3 u4` with `ρ(u2) − ρ(u1) ≠ ρ(u3) − ρ(u4)`.
    pub offending_cycle: Option<[VertexId; 4]>,
}

/// Every 4-cycle is a parallelogram and the placement is injective.
pub fn validate_parallelogram(f: &Framework) -> ParallelogramReport {
    let g = &f.graph;
    let offending = four_cycles(g)
        .into_iter()
        .find(|&[a, b, c, d]| match &f.exact {
            Some(x) => x[b] - x[a] != x[c] - x[d],
            None => {
                dist(sub(f.points[b], f.points[a]), sub(f.points[c], f.points[d])) > GEOMETRIC_TOL
            }
        });
    let injective = match &f.exact {
        Some(x) => {
            let mut sorted = x.clone();
            sorted.sort_unstable();
            sorted.windows(2).all(|w| w[0] != w[1])
        }
        None => {
            let mut idx: Vec<usize> = (0..f.points.len()).collect();
            idx.sort_by(|&i, &j| f.points[i][0].total_cmp(&f.points[j][0]));
            // sweep over x with a window of width GEOMETRIC_TOL
            (0..idx.len()).all(|i| {
                idx[i + 1..]
                    .iter()
                    .take_while(|&&j| f.points[j][0] - f.points[idx[i]][0] <= GEOMETRIC_TOL)
                    .all(|&j| dist(f.points[j], f.points[idx[i]]) > GEOMETRIC_TOL)
            })
        }
    };
    let offending_cycle = offending.map(|c| c.map(|v| g.vertex(v).clone()));
    ParallelogramReport {
        valid: offending_cycle.is_none() && injective,
        injective,
        offending_cycle,
    }
}

/// Unit normal per ribbon, orthogonal to all of its edges, with positive
/// x-coordinate (or x = 0 and positive y).
pub fn ribbon_directions(f: &Framework, rd: &RibbonDecomposition) -> Result<Vec<Point>> {
    rd.ribbons()
        .iter()
        .enumerate()
        .map(|(r, edges)| {
            let d = f.edge_vector(edges[0]);
            let l = norm(d);
            let mut n = [-d[1] / l, d[0] / l];
            if n[0] < -ZERO_LENGTH_TOL || (n[0].abs() <= ZERO_LENGTH_TOL && n[1] < 0.0) {
                n = [-n[0], -n[1]];
            }
            for &e in &edges[1..] {
                let w = f.edge_vector(e);
                if (n[0] * w[0] + n[1] * w[1]).abs() > GEOMETRIC_TOL * norm(w).max(1.0) {
                    return Err(Error::InconsistentRibbonDirection { ribbon: r });
                }
            }
            Ok(n)
        })
        .collect()
}

/// Whether two unit directions are parallel.
pub fn are_parallel(a: Point, b: Point) -> bool {
    ((a[0] * b[0] + a[1] * b[1]).abs() - 1.0).abs() <= GEOMETRIC_TOL
}
