//! Finite simple graphs, 4-cycles and cyclic symmetry actions.
//!
//! Vertices carry opaque identifiers ([`VertexId`]) but every algorithm in
//! the crate works on dense indices. The vertex list is kept sorted, so index
//! order coincides with identifier order and canonical outputs can be
//! produced by comparing indices.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Opaque vertex identifier.
///
/// Integers sort numerically and before names. Strings that parse as an
/// integer are normalized to [`VertexId::Int`], so `"3"` and `3` denote the
/// same vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexId {
    Int(i64),
    Name(String),
}

impl VertexId {
    pub fn parse(s: &str) -> VertexId {
        match s.parse::<i64>() {
            Ok(i) => VertexId::Int(i),
            Err(_) => VertexId::Name(s.to_owned()),
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexId::Int(i) => write!(f, "{i}"),
            VertexId::Name(s) => f.write_str(s),
        }
    }
}

impl From<i64> for VertexId {
    fn from(i: i64) -> Self {
        VertexId::Int(i)
    }
}

impl From<usize> for VertexId {
    fn from(i: usize) -> Self {
        VertexId::Int(i as i64)
    }
}

impl From<i32> for VertexId {
    fn from(i: i32) -> Self {
        VertexId::Int(i as i64)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId::parse(s)
    }
}

impl Serialize for VertexId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            VertexId::Int(i) => s.serialize_i64(*i),
            VertexId::Name(n) => s.serialize_str(n),
        }
    }
}

impl<'de> Deserialize<'de> for VertexId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        Ok(match Raw::deserialize(d)? {
            Raw::Int(i) => VertexId::Int(i),
            Raw::Str(s) => VertexId::parse(&s),
        })
    }
}

/// Immutable finite simple graph.
#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    edges: Vec<(usize, usize)>,
    edge_index: HashMap<(usize, usize), usize>,
    adj: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph, rejecting loops, repeated edges and undeclared endpoints.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut vs: Vec<VertexId> = vertices.into_iter().collect();
        vs.sort();
        for w in vs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0].clone()));
            }
        }
        let index: HashMap<VertexId, usize> = vs
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let mut es = Vec::new();
        for (a, b) in edges {
            let ia = *index
                .get(&a)
                .ok_or_else(|| Error::UnknownVertex(a.clone()))?;
            let ib = *index
                .get(&b)
                .ok_or_else(|| Error::UnknownVertex(b.clone()))?;
            if ia == ib {
                return Err(Error::SelfLoop(a));
            }
            es.push((ia.min(ib), ia.max(ib)));
        }
        es.sort_unstable();
        for w in es.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateEdge(vs[w[0].0].clone(), vs[w[0].1].clone()));
            }
        }
        Ok(Self::assemble(vs, index, es))
    }

    /// Graph on vertices `0..n` given by index pairs.
    pub fn from_indexed(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        Graph::new(
            (0..n).map(VertexId::from),
            edges
                .iter()
                .map(|&(a, b)| (VertexId::from(a), VertexId::from(b))),
        )
    }

    fn assemble(
        vertices: Vec<VertexId>,
        index: HashMap<VertexId, usize>,
        edges: Vec<(usize, usize)>,
    ) -> Graph {
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (i, &(a, b)) in edges.iter().enumerate() {
            adj[a].push(b);
            adj[b].push(a);
            edge_index.insert((a, b), i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            vertices,
            index,
            edges,
            edge_index,
            adj,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &VertexId {
        &self.vertices[i]
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn require_index(&self, v: &VertexId) -> Result<usize> {
        self.index_of(v)
            .ok_or_else(|| Error::UnknownVertex(v.clone()))
    }

    /// Edges as index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edge_ids(&self, e: usize) -> (&VertexId, &VertexId) {
        let (a, b) = self.edges[e];
        (&self.vertices[a], &self.vertices[b])
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    /// Edge index for a pair of vertex identifiers.
    pub fn find_edge(&self, u: &VertexId, v: &VertexId) -> Result<usize> {
        let a = self.require_index(u)?;
        let b = self.require_index(v)?;
        self.edge_id(a, b)
            .ok_or_else(|| Error::UnknownEdge(u.clone(), v.clone()))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).len() <= 1
    }

    /// Subgraph induced by the given vertex identifiers.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> Result<Graph> {
        let mut mask = vec![false; self.vertex_count()];
        for v in keep {
            mask[self.require_index(v)?] = true;
        }
        let vs = self
            .vertices
            .iter()
            .zip(&mask)
            .filter(|(_, &m)| m)
            .map(|(v, _)| v.clone());
        let es = self
            .edges
            .iter()
            .filter(|&&(a, b)| mask[a] && mask[b])
            .map(|&(a, b)| (self.vertices[a].clone(), self.vertices[b].clone()));
        Graph::new(vs, es)
    }

    /// Spanning subgraph keeping the edges whose mask entry is true.
    pub fn spanning_subgraph(&self, keep_edge: &[bool]) -> Graph {
        let es: Vec<(usize, usize)> = self
            .edges
            .iter()
            .zip(keep_edge)
            .filter(|(_, &k)| k)
            .map(|(&e, _)| e)
            .collect();
        Self::assemble(self.vertices.clone(), self.index.clone(), es)
    }

    /// Same vertex set with additional edges (given as index pairs).
    pub fn with_extra_edges(&self, extra: &[(usize, usize)]) -> Result<Graph> {
        let es = self
            .edges
            .iter()
            .chain(extra)
            .map(|&(a, b)| (self.vertices[a].clone(), self.vertices[b].clone()));
        Graph::new(self.vertices.iter().cloned(), es)
    }

    /// Relabels vertices through `f`, which must be injective.
    pub fn relabel<F: Fn(&VertexId) -> VertexId>(&self, f: F) -> Result<Graph> {
        Graph::new(
            self.vertices.iter().map(&f),
            self.edges
                .iter()
                .map(|&(a, b)| (f(&self.vertices[a]), f(&self.vertices[b]))),
        )
    }
}

/// Connected components as sorted index blocks, ordered by least vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<usize>> {
    components_by(g.vertex_count(), |v| g.neighbors(v).iter().copied())
}

/// Component label per vertex for the spanning subgraph given by `keep_edge`.
pub(crate) fn component_labels(
    g: &Graph,
    keep_edge: impl Fn(usize) -> bool,
) -> (Vec<usize>, usize) {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if label[w] == usize::MAX && keep_edge(g.edge_id(u, w).unwrap()) {
                    label[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

pub(crate) fn blocks_from_labels(label: &[usize], count: usize) -> Vec<Vec<usize>> {
    let mut blocks = vec![Vec::new(); count];
    for (v, &l) in label.iter().enumerate() {
        blocks[l].push(v);
    }
    blocks
}

fn components_by<I, F>(n: usize, neighbors: F) -> Vec<Vec<usize>>
where
    I: Iterator<Item = usize>,
    F: Fn(usize) -> I,
{
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut block = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for w in neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    block.push(w);
                    stack.push(w);
                }
            }
        }
        block.sort_unstable();
        out.push(block);
    }
    out
}

/// All 4-cycles, each once, as `[a, b, c, d]` with `a` the least vertex and
/// `b < d` (so `a-b-c-d-a` is the lexicographically least rotation/reflection).
pub fn four_cycles(g: &Graph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..g.vertex_count() {
        let nbrs: Vec<usize> = g.neighbors(a).iter().copied().filter(|&x| x > a).collect();
        for (i, &b) in nbrs.iter().enumerate() {
            for &d in &nbrs[i + 1..] {
                // common neighbours of b and d other than a, all larger than a
                let (nb, nd) = (g.neighbors(b), g.neighbors(d));
                let (mut p, mut q) = (0, 0);
                while p < nb.len() && q < nd.len() {
                    match nb[p].cmp(&nd[q]) {
                        std::cmp::Ordering::Less => p += 1,
                        std::cmp::Ordering::Greater => q += 1,
                        std::cmp::Ordering::Equal => {
                            let c = nb[p];
                            if c > a {
                                out.push([a, b, c, d]);
                            }
                            p += 1;
                            q += 1;
                        }
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Cyclic group action `C_k` given by the image of its generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryAction {
    pub k: usize,
    pub generator: BTreeMap<VertexId, VertexId>,
}

impl SymmetryAction {
    pub fn new(k: usize, generator: BTreeMap<VertexId, VertexId>) -> Self {
        SymmetryAction { k, generator }
    }

    /// Builds an action from an index permutation of `g`.
    pub fn from_permutation(g: &Graph, k: usize, perm: &[usize]) -> Self {
        let generator = perm
            .iter()
            .enumerate()
            .map(|(i, &j)| (g.vertex(i).clone(), g.vertex(j).clone()))
            .collect();
        SymmetryAction { k, generator }
    }

    /// Generator as an index permutation of `g`'s vertices.
    pub fn permutation(&self, g: &Graph) -> Result<Vec<usize>> {
        if self.generator.len() != g.vertex_count() {
            return Err(Error::WrongVertexSet(format!(
                "generator has {} entries, graph has {} vertices",
                self.generator.len(),
                g.vertex_count()
            )));
        }
        let mut perm = vec![usize::MAX; g.vertex_count()];
        let mut hit = vec![false; g.vertex_count()];
        for (from, to) in &self.generator {
            let i = g
                .index_of(from)
                .ok_or_else(|| Error::WrongVertexSet(format!("unknown vertex {from}")))?;
            let j = g
                .index_of(to)
                .ok_or_else(|| Error::WrongVertexSet(format!("unknown vertex {to}")))?;
            if hit[j] {
                return Err(Error::WrongVertexSet(format!("{to} has two preimages")));
            }
            hit[j] = true;
            perm[i] = j;
        }
        Ok(perm)
    }

    /// Restriction to a subgraph; fails unless the vertex set is invariant.
    pub fn restrict(&self, sub: &Graph) -> Result<SymmetryAction> {
        let mut generator = BTreeMap::new();
        for v in sub.vertices() {
            let w = self
                .generator
                .get(v)
                .ok_or_else(|| Error::WrongVertexSet(format!("unknown vertex {v}")))?;
            if sub.index_of(w).is_none() {
                return Err(Error::InvalidAction(format!(
                    "vertex set not invariant: {v} maps to {w}"
                )));
            }
            generator.insert(v.clone(), w.clone());
        }
        Ok(SymmetryAction {
            k: self.k,
            generator,
        })
    }
}

/// Outcome of [`validate_symmetry_action`], one flag per condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub automorphism: bool,
    pub exact_order: bool,
    pub partially_invariant_are_invariant: bool,
    pub invariant_independent: bool,
}

impl SymmetryReport {
    pub fn is_valid(&self) -> bool {
        self.automorphism
            && self.exact_order
            && self.partially_invariant_are_invariant
            && self.invariant_independent
    }
}

pub(crate) fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // (p ∘ q)(v) = p(q(v))
    q.iter().map(|&v| p[v]).collect()
}

/// Checks the four conditions that make `a` a `C_k`-symmetry of `g`.
pub fn validate_symmetry_action(g: &Graph, a: &SymmetryAction) -> Result<SymmetryReport> {
    let perm = a.permutation(g)?;
    let n = g.vertex_count();
    let automorphism = g.edges().iter().all(|&(u, v)| g.has_edge(perm[u], perm[v]));

    let identity: Vec<usize> = (0..n).collect();
    let mut powers = vec![identity.clone()];
    for j in 1..=a.k.max(1) {
        powers.push(compose(&perm, &powers[j - 1]));
    }
    let exact_order =
        a.k >= 2 && powers[a.k] == identity && (1..a.k).all(|j| powers[j] != identity);

    let invariant: Vec<bool> = (0..n).map(|v| perm[v] == v).collect();
    let partially_invariant_are_invariant = (0..n).all(|v| {
        let partial = (1..a.k).any(|j| powers[j][v] == v);
        !partial || invariant[v]
    });
    let invariant_independent = g
        .edges()
        .iter()
        .all(|&(u, v)| !(invariant[u] && invariant[v]));

    Ok(SymmetryReport {
        automorphism,
        exact_order,
        partially_invariant_are_invariant,
        invariant_independent,
    })
}

/// Errors unless the action passes every check.
pub(crate) fn require_valid_action(g: &Graph, a: &SymmetryAction) -> Result<Vec<usize>> {
    let report = validate_symmetry_action(g, a)?;
    if !report.is_valid() {
        return Err(Error::InvalidAction(format!("{report:?}")));
    }
    a.permutation(g)
}

/// Small named graph families used throughout tests, benches and the CLI.
pub mod families {
    use super::*;

    pub fn path(n: usize) -> Graph {
        let es: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_indexed(n, &es).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let es: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_indexed(n, &es).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let es: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Graph::from_indexed(n, &es).unwrap()
    }

    pub fn complete_bipartite(m: usize, n: usize) -> Graph {
        let es: Vec<_> = (0..m)
            .flat_map(|i| (0..n).map(move |j| (i, m + j)))
            .collect();
        Graph::from_indexed(m + n, &es).unwrap()
    }

    /// 1-skeleton of the 3-cube, vertices `0..8` by bit pattern.
    pub fn cube() -> Graph {
        let mut es = Vec::new();
        for v in 0..8usize {
            for bit in [1, 2, 4] {
                if v & bit == 0 {
                    es.push((v, v | bit));
                }
            }
        }
        Graph::from_indexed(8, &es).unwrap()
    }

    /// Vertex index of `(x, y)` in [`grid`].
    pub fn grid_vertex(cols: usize, x: usize, y: usize) -> usize {
        y * (cols + 1) + x
    }

    /// Square grid with `rows × cols` unit cells; vertex `(x, y)` has index
    /// `y * (cols + 1) + x`.
    pub fn grid(rows: usize, cols: usize) -> Graph {
        let mut es = Vec::new();
        for y in 0..=rows {
            for x in 0..=cols {
                let v = grid_vertex(cols, x, y);
                if x < cols {
                    es.push((v, grid_vertex(cols, x + 1, y)));
                }
                if y < rows {
                    es.push((v, grid_vertex(cols, x, y + 1)));
                }
            }
        }
        Graph::from_indexed((rows + 1) * (cols + 1), &es).unwrap()
    }

    /// Quarter-turn rotation of the `n × n` grid about its centre.
    pub fn grid_rotation(n: usize) -> SymmetryAction {
        let g = grid(n, n);
        let perm: Vec<usize> = (0..g.vertex_count())
            .map(|v| {
                let (x, y) = (v % (n + 1), v / (n + 1));
                grid_vertex(n, n - y, x)
            })
            .collect();
        SymmetryAction::from_permutation(&g, 4, &perm)
    }
}
