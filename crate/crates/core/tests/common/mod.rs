#![allow(dead_code)]

use proptest::prelude::*;
use rigidity_kit::framework::Point;
use rigidity_kit::graph::families::{grid, grid_vertex};
use rigidity_kit::*;

/// Simple graph on `0..n` with the edges picked by `mask` among all pairs.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_indexed(n, &edges).unwrap()
}

/// Graphs with up to `max_vertices` vertices and at most `max_edges` edges.
pub fn small_graph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = Graph> {
    (2..=max_vertices, any::<u64>()).prop_map(move |(n, mask)| {
        let g = graph_from_mask(n, mask);
        let keep: Vec<(usize, usize)> = g.edges().iter().copied().take(max_edges).collect();
        Graph::from_indexed(n, &keep).unwrap()
    })
}

pub fn coloring_from_mask(g: &Graph, mask: u64) -> EdgeColoring {
    EdgeColoring::from_fn(g, |e| {
        if mask >> e & 1 == 1 {
            Color::Red
        } else {
            Color::Blue
        }
    })
}

/// Grid with a parallelogram placement: column steps `a`, row steps `b`.
pub fn skew_grid(rows: usize, cols: usize, a: &[Point], b: &[Point]) -> Framework {
    let g = grid(rows, cols);
    let mut pts = vec![[0.0, 0.0]; g.vertex_count()];
    for y in 0..=rows {
        for x in 0..=cols {
            let mut p = [0.0, 0.0];
            for s in &a[..x] {
                p = [p[0] + s[0], p[1] + s[1]];
            }
            for s in &b[..y] {
                p = [p[0] + s[0], p[1] + s[1]];
            }
            pts[grid_vertex(cols, x, y)] = p;
        }
    }
    Framework::new(g, pts).unwrap()
}

/// Step vectors at angles in (0, 60°) for columns and (90°, 150°) for rows,
/// so that the placement is injective.
pub fn skew_grid_strategy() -> impl Strategy<Value = Framework> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(rows, cols)| {
        let step = |lo: f64, hi: f64| {
            (0.5f64..2.0, lo..hi).prop_map(|(l, t): (f64, f64)| [l * t.cos(), l * t.sin()])
        };
        (
            Just(rows),
            Just(cols),
            proptest::collection::vec(step(0.05, 1.0), cols),
            proptest::collection::vec(step(1.6, 2.6), rows),
        )
            .prop_map(|(rows, cols, a, b)| skew_grid(rows, cols, &a, &b))
    })
}

/// Offsets `n/100` summing to zero.
pub fn gamma_strategy() -> impl Strategy<Value = [Rational; 5]> {
    proptest::array::uniform4(-99i128..100).prop_map(|g| {
        let last: i128 = -g.iter().sum::<i128>();
        [g[0], g[1], g[2], g[3], last].map(|n| Rational::new(n, 100))
    })
}

pub fn random_patch(gamma: [Rational; 5], lo: i64, hi: i64) -> PenrosePatch {
    let mut p = PentagridParams::uniform(gamma, lo, hi);
    p.perturb = true;
    generate_patch(&p).unwrap()
}
