//! Small named frameworks and graphs used by tests, benches and the CLI.

use crate::framework::{add, sub, Framework, Point};
use crate::graph::{families, Graph, VertexId};
use crate::ribbons::BracedGraph;

/// A braced P-framework with ribbons numbered by a representative edge.
#[derive(Clone, Debug)]
pub struct LabelledSample {
    pub framework: Framework,
    pub braced: BracedGraph,
    /// `(label, representative edge)`, labels counted from 1.
    pub ribbon_labels: Vec<(usize, (VertexId, VertexId))>,
}

impl LabelledSample {
    /// Label of each ribbon id of the braced graph.
    pub fn label_of_ribbon(&self) -> Vec<usize> {
        let g = self.braced.base();
        let rd = self.braced.ribbons();
        let mut out = vec![0; rd.count()];
        for (label, (u, v)) in &self.ribbon_labels {
            let e = g.find_edge(u, v).expect("labelled edge exists");
            out[rd.ribbon_of(e)] = *label;
        }
        out
    }

    /// Unordered label pairs of the given ribbon-id pairs, sorted.
    pub fn labelled_pairs(&self, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let lab = self.label_of_ribbon();
        let mut out: Vec<_> = pairs
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (lab[a], lab[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn rot(deg: f64, p: Point) -> Point {
    let (s, c) = deg.to_radians().sin_cos();
    [c * p[0] - s * p[1], s * p[0] + c * p[1]]
}

fn pairs(text: &str) -> Vec<(VertexId, VertexId)> {
    text.split_whitespace()
        .map(|p| {
            let mut ch = p.chars().map(|c| VertexId::Name(c.to_string()));
            (ch.next().unwrap(), ch.next().unwrap())
        })
        .collect()
}

fn build(
    names: &str,
    edges: &str,
    braces: &str,
    points: Vec<Point>,
    labels: &str,
) -> LabelledSample {
    let vertices: Vec<VertexId> = names
        .chars()
        .map(|c| VertexId::Name(c.to_string()))
        .collect();
    let graph = Graph::new(vertices, pairs(edges)).expect("sample graph");
    let braced = BracedGraph::new(graph.clone(), &pairs(braces)).expect("sample braces");
    let framework = Framework::new(graph, points).expect("sample placement");
    let ribbon_labels = pairs(labels)
        .into_iter()
        .enumerate()
        .map(|(i, e)| (i + 1, e))
        .collect();
    LabelledSample {
        framework,
        braced,
        ribbon_labels,
    }
}

fn square_with_wing() -> Vec<Point> {
    let (a, b, c, d) = ([0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]);
    let e = add(b, rot(30.0, [0.8, 0.0]));
    let f = add(e, sub(c, b));
    let g = add(e, rot(-20.0, [1.1, 0.0]));
    let h = add(g, sub(f, e));
    vec![a, b, c, d, e, f, g, h]
}

/// Ten vertices, four ribbons, three braces; the bracing graph is connected.
pub fn ten_vertex_braced() -> LabelledSample {
    let mut p = square_with_wing();
    let (b, c, d, e, f, g) = (p[1], p[2], p[3], p[4], p[5], p[6]);
    p.push(add(b, sub(g, e)));
    p.push(add(d, sub(f, c)));
    build(
        "abcdefghjk",
        "ab bc cd da be ef fc eg gh hf gj bj dk fk",
        "ac bf ej",
        p,
        "ad ab be bj",
    )
}

/// Thirteen vertices, six ribbons, three braces; two ribbons stay unbraced.
pub fn thirteen_vertex_braced() -> LabelledSample {
    let mut p = square_with_wing();
    let (c, d, f) = (p[2], p[3], p[5]);
    let k = add(d, sub(f, c));
    let l = add(k, rot(105.0, [0.9, 0.0]));
    let m = add(f, sub(l, k));
    let n = add(k, rot(25.0, sub(add(m, [1.3, 0.0]), k)));
    let o = add(f, sub(n, m));
    p.extend([k, l, m, n, o]);
    build(
        "abcdefghklmno",
        "ab bc cd da be ef fc eg gh hf dk fk kl lm mf mn no of",
        "ac eh fl",
        p,
        "ad ab be eg kl mn",
    )
}

/// Named small graphs for exhaustive coloring checks.
pub fn named_graphs() -> Vec<(&'static str, Graph)> {
    use families::*;
    vec![
        ("path5", path(5)),
        ("cycle4", cycle(4)),
        ("cycle6", cycle(6)),
        ("k4", complete(4)),
        ("k33", complete_bipartite(3, 3)),
        ("cube", cube()),
        ("grid2x2", grid(2, 2)),
        ("grid1x3", grid(1, 3)),
        ("ten_vertex", ten_vertex_braced().braced.base().clone()),
        (
            "thirteen_vertex",
            thirteen_vertex_braced().braced.base().clone(),
        ),
    ]
}
