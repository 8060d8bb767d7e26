//! Ribbons, braced graphs, ribbon and bracing graphs, and the
//! connectivity-based rigidity decisions (plain and symmetric).

use std::collections::{BTreeSet, HashMap};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    component_labels, connected_components, four_cycles, require_valid_action, Graph,
    SymmetryAction, VertexId,
};
use crate::nac::{symmetric_nac_with_perm, Color, EdgeColoring};

/// Partition of the edges into ribbons. Ribbon ids follow the least edge
/// index they contain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonDecomposition {
    edge_ribbon: Vec<usize>,
    ribbons: Vec<Vec<usize>>,
    simple: Vec<bool>,
}

impl RibbonDecomposition {
    pub fn count(&self) -> usize {
        self.ribbons.len()
    }

    pub fn ribbon_of(&self, e: usize) -> usize {
        self.edge_ribbon[e]
    }

    /// Edge indices of ribbon `r`, ascending.
    pub fn edges(&self, r: usize) -> &[usize] {
        &self.ribbons[r]
    }

    pub fn ribbons(&self) -> &[Vec<usize>] {
        &self.ribbons
    }

    /// Whether the edges of ribbon `r` contain no 4-cycle.
    pub fn is_simple(&self, r: usize) -> bool {
        self.simple[r]
    }

    pub fn all_simple(&self) -> bool {
        self.simple.iter().all(|&s| s)
    }

    pub fn is_monochromatic(&self, c: &EdgeColoring) -> bool {
        self.ribbons
            .iter()
            .all(|r| r.iter().all(|&e| c.color(e) == c.color(r[0])))
    }
}

/// Closes the opposite-edge relation of all 4-cycles.
pub fn compute_ribbons(g: &Graph) -> RibbonDecomposition {
    let cycles = four_cycles(g);
    ribbons_from_cycles(g, &cycles)
}

fn cycle_edges(g: &Graph, c: &[usize; 4]) -> [usize; 4] {
    let e = |i: usize, j: usize| g.edge_id(c[i], c[j]).unwrap();
    [e(0, 1), e(1, 2), e(2, 3), e(3, 0)]
}

fn ribbons_from_cycles(g: &Graph, cycles: &[[usize; 4]]) -> RibbonDecomposition {
    let mut uf = UnionFind::<usize>::new(g.edge_count());
    for c in cycles {
        let [e01, e12, e23, e30] = cycle_edges(g, c);
        uf.union(e01, e23);
        uf.union(e12, e30);
    }
    let mut id_of_root = HashMap::new();
    let mut ribbons: Vec<Vec<usize>> = Vec::new();
    let mut edge_ribbon = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() {
        let root = uf.find(e);
        let id = *id_of_root.entry(root).or_insert_with(|| {
            ribbons.push(Vec::new());
            ribbons.len() - 1
        });
        ribbons[id].push(e);
        edge_ribbon.push(id);
    }
    let mut simple = vec![true; ribbons.len()];
    for c in cycles {
        let es = cycle_edges(g, c);
        let r = edge_ribbon[es[0]];
        if es.iter().all(|&e| edge_ribbon[e] == r) {
            simple[r] = false;
        }
    }
    RibbonDecomposition {
        edge_ribbon,
        ribbons,
        simple,
    }
}

/// Result of [`is_ribbon_cutting`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RibbonCutReport {
    pub cutting: bool,
    /// First ribbon whose removal leaves the graph connected.
    pub witness: Option<usize>,
    /// Number of components after removing each ribbon.
    pub components_after_removal: Vec<usize>,
}

impl RibbonCutReport {
    /// Every ribbon splits the graph into exactly two pieces.
    pub fn exactly_two(&self) -> bool {
        self.components_after_removal.iter().all(|&n| n == 2)
    }
}

pub fn is_ribbon_cutting(g: &Graph) -> Result<RibbonCutReport> {
    ribbon_cut_report(g, &compute_ribbons(g))
}

fn ribbon_cut_report(g: &Graph, rd: &RibbonDecomposition) -> Result<RibbonCutReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let components_after_removal: Vec<usize> = (0..rd.count())
        .map(|r| component_labels(g, |e| rd.ribbon_of(e) != r).1)
        .collect();
    let witness = components_after_removal.iter().position(|&n| n < 2);
    Ok(RibbonCutReport {
        cutting: witness.is_none(),
        witness,
        components_after_removal,
    })
}

/// Ribbon-cutting graph together with a set of braces (diagonals of its
/// 4-cycles).
#[derive(Clone, Debug)]
pub struct BracedGraph {
    base: Graph,
    braces: Vec<(usize, usize)>,
    full: Graph,
    cycles: Vec<[usize; 4]>,
    ribbons: RibbonDecomposition,
    /// Per brace, the 4-cycles of the base it is a diagonal of.
    brace_cycles: Vec<Vec<usize>>,
}

impl BracedGraph {
    pub fn new(base: Graph, braces: &[(VertexId, VertexId)]) -> Result<BracedGraph> {
        let idx = braces
            .iter()
            .map(|(u, w)| Ok((base.require_index(u)?, base.require_index(w)?)))
            .collect::<Result<Vec<_>>>()?;
        BracedGraph::from_indices(base, &idx)
    }

    pub fn from_indices(base: Graph, braces: &[(usize, usize)]) -> Result<BracedGraph> {
        let cycles = four_cycles(&base);
        let ribbons = ribbons_from_cycles(&base, &cycles);
        let report = ribbon_cut_report(&base, &ribbons)?;
        if let Some(r) = report.witness {
            return Err(Error::NotRibbonCutting { ribbon: r });
        }
        let mut braces: Vec<(usize, usize)> =
            braces.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        braces.sort_unstable();
        braces.dedup();
        let mut diagonal_of: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (i, c) in cycles.iter().enumerate() {
            for (x, y) in [(c[0], c[2]), (c[1], c[3])] {
                diagonal_of.entry((x.min(y), x.max(y))).or_default().push(i);
            }
        }
        let mut brace_cycles = Vec::with_capacity(braces.len());
        for &(a, b) in &braces {
            let (u, w) = (base.vertex(a).clone(), base.vertex(b).clone());
            if a == b {
                return Err(Error::SelfLoop(u));
            }
            if base.has_edge(a, b) {
                return Err(Error::BraceIsEdge(u, w));
            }
            match diagonal_of.get(&(a, b)) {
                Some(cs) => brace_cycles.push(cs.clone()),
                None => return Err(Error::BraceNotDiagonal(u, w)),
            }
        }
        let full = base.with_extra_edges(&braces)?;
        Ok(BracedGraph {
            base,
            braces,
            full,
            cycles,
            ribbons,
            brace_cycles,
        })
    }

    pub fn unbraced(base: Graph) -> Result<BracedGraph> {
        BracedGraph::from_indices(base, &[])
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// Braces as sorted index pairs into the base vertex set.
    pub fn braces(&self) -> &[(usize, usize)] {
        &self.braces
    }

    pub fn brace_ids(&self) -> Vec<(VertexId, VertexId)> {
        self.braces
            .iter()
            .map(|&(a, b)| (self.base.vertex(a).clone(), self.base.vertex(b).clone()))
            .collect()
    }

    /// The braced graph itself: base edges plus braces.
    pub fn full_graph(&self) -> &Graph {
        &self.full
    }

    pub fn ribbons(&self) -> &RibbonDecomposition {
        &self.ribbons
    }

    pub fn four_cycles(&self) -> &[[usize; 4]] {
        &self.cycles
    }

    /// The two ribbons of a 4-cycle (opposite pairs `01/23` and `12/30`).
    fn cycle_ribbons(&self, c: &[usize; 4]) -> (usize, usize) {
        let es = cycle_edges(&self.base, c);
        (self.ribbons.ribbon_of(es[0]), self.ribbons.ribbon_of(es[1]))
    }

    /// Ribbons each brace belongs to.
    fn brace_ribbons(&self, i: usize) -> BTreeSet<usize> {
        self.brace_cycles[i]
            .iter()
            .flat_map(|&c| {
                let (r, s) = self.cycle_ribbons(&self.cycles[c]);
                [r, s]
            })
            .collect()
    }
}

/// Ribbons of a braced graph: each base ribbon plus the braces of the
/// 4-cycles in which it supplies a pair of opposite sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracedRibbons {
    /// Base edge indices per ribbon.
    pub edges: Vec<Vec<usize>>,
    /// Brace indices per ribbon (into [`BracedGraph::braces`]).
    pub braces: Vec<Vec<usize>>,
}

impl BracedRibbons {
    /// Edge indices of ribbon `r` within [`BracedGraph::full_graph`].
    pub fn full_edges(&self, b: &BracedGraph, r: usize) -> Vec<usize> {
        let base = b.base();
        let full = b.full_graph();
        let mut out: Vec<usize> = self.edges[r]
            .iter()
            .map(|&e| {
                let (x, y) = base.edge(e);
                full.edge_id(x, y).unwrap()
            })
            .chain(self.braces[r].iter().map(|&i| {
                let (x, y) = b.braces()[i];
                full.edge_id(x, y).unwrap()
            }))
            .collect();
        out.sort_unstable();
        out
    }
}

pub fn braced_ribbons(b: &BracedGraph) -> BracedRibbons {
    let mut braces = vec![Vec::new(); b.ribbons.count()];
    for i in 0..b.braces.len() {
        for r in b.brace_ribbons(i) {
            braces[r].push(i);
        }
    }
    BracedRibbons {
        edges: b.ribbons.ribbons().to_vec(),
        braces,
    }
}

/// Ribbon graph with the bracing subgraph marked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RibbonGraph {
    pub ribbon_count: usize,
    /// Ribbon pairs `(r, s)`, `r < s`, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Per edge: whether the two braced ribbons intersect.
    pub braced: Vec<bool>,
}

impl RibbonGraph {
    pub fn bracing_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .zip(&self.braced)
            .filter(|(_, &b)| b)
            .map(|(&e, _)| e)
            .collect()
    }

    /// Components of the bracing subgraph, as a label per ribbon.
    pub fn bracing_components(&self) -> (Vec<usize>, usize) {
        ribbon_components(self.ribbon_count, &self.bracing_edges())
    }
}

fn ribbon_components(n: usize, edges: &[(usize, usize)]) -> (Vec<usize>, usize) {
    let g = Graph::from_indexed(n, edges).expect("ribbon pairs form a simple graph");
    let blocks = connected_components(&g);
    let mut label = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        for &r in b {
            label[r] = i;
        }
    }
    (label, blocks.len())
}

/// Adjacency of ribbons through 4-cycles of the unbraced graph; a pair is in
/// the bracing subgraph when one of its shared 4-cycles is braced.
pub fn ribbon_graph(b: &BracedGraph) -> RibbonGraph {
    let mut braced_cycle = vec![false; b.cycles.len()];
    for cs in &b.brace_cycles {
        for &c in cs {
            braced_cycle[c] = true;
        }
    }
    let mut pairs: std::collections::BTreeMap<(usize, usize), bool> = Default::default();
    for (i, c) in b.cycles.iter().enumerate() {
        let (r, s) = b.cycle_ribbons(c);
        if r == s {
            continue;
        }
        let flag = pairs.entry((r.min(s), r.max(s))).or_insert(false);
        *flag |= braced_cycle[i];
    }
    RibbonGraph {
        ribbon_count: b.ribbons.count(),
        edges: pairs.keys().copied().collect(),
        braced: pairs.values().copied().collect(),
    }
}

/// Outcome of a rigidity decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Spanning tree of the (quotient) bracing graph.
    Rigid { spanning_tree: Vec<(usize, usize)> },
    /// Ribbon colors and the cartesian NAC-coloring of the braced graph they
    /// induce.
    Flexible {
        split: Vec<Color>,
        coloring: EdgeColoring,
    },
}

impl Verdict {
    pub fn is_rigid(&self) -> bool {
        matches!(self, Verdict::Rigid { .. })
    }
}

fn spanning_tree(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut uf = UnionFind::<usize>::new(n);
    edges
        .iter()
        .copied()
        .filter(|&(a, b)| uf.union(a, b))
        .collect()
}

/// Rigid iff the bracing graph is connected.
pub fn decide_rigidity(b: &BracedGraph) -> Result<Verdict> {
    let rg = ribbon_graph(b);
    let bracing = rg.bracing_edges();
    let (label, count) = rg.bracing_components();
    if count <= 1 {
        return Ok(Verdict::Rigid {
            spanning_tree: spanning_tree(rg.ribbon_count, &bracing),
        });
    }
    let split: Vec<Color> = label
        .iter()
        .map(|&l| {
            if l == label[0] {
                Color::Red
            } else {
                Color::Blue
            }
        })
        .collect();
    let coloring = cartesian_nac_from_partition(b, &split)?;
    Ok(Verdict::Flexible { split, coloring })
}

/// Colors every edge of the braced graph by the color of its ribbon.
///
/// `split` gives one color per ribbon; ribbons joined in the bracing graph
/// must share a color and both colors must occur.
pub fn cartesian_nac_from_partition(b: &BracedGraph, split: &[Color]) -> Result<EdgeColoring> {
    let rd = &b.ribbons;
    if split.len() != rd.count() {
        return Err(Error::InvalidSplit(format!(
            "{} colors for {} ribbons",
            split.len(),
            rd.count()
        )));
    }
    if !split.contains(&Color::Red) || !split.contains(&Color::Blue) {
        return Err(Error::InvalidSplit("all ribbons have one color".into()));
    }
    for (r, s) in ribbon_graph(b).bracing_edges() {
        if split[r] != split[s] {
            return Err(Error::InvalidSplit(format!(
                "ribbons {r} and {s} are braced together but colored differently"
            )));
        }
    }
    let mut colors = vec![Color::Blue; b.full.edge_count()];
    let br = braced_ribbons(b);
    for (r, &color) in split.iter().enumerate() {
        for e in br.full_edges(b, r) {
            colors[e] = color;
        }
    }
    Ok(EdgeColoring::new(colors))
}

/// Ribbon permutation induced by a vertex permutation.
fn ribbon_permutation(b: &BracedGraph, perm: &[usize]) -> Result<Vec<usize>> {
    let rd = &b.ribbons;
    let g = &b.base;
    let mut image = vec![usize::MAX; rd.count()];
    for (r, edges) in rd.ribbons().iter().enumerate() {
        for &e in edges {
            let (u, v) = g.edge(e);
            let f = g
                .edge_id(perm[u], perm[v])
                .ok_or(Error::NotRibbonCompatible { ribbon: r })?;
            let s = rd.ribbon_of(f);
            if image[r] == usize::MAX {
                image[r] = s;
            } else if image[r] != s {
                return Err(Error::NotRibbonCompatible { ribbon: r });
            }
        }
    }
    Ok(image)
}

fn symmetric_perm(b: &BracedGraph, a: &SymmetryAction) -> Result<Vec<usize>> {
    if a.k == 1 {
        let perm = a.permutation(&b.base)?;
        if perm.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::InvalidAction("order 1 requires the identity".into()));
        }
        return Ok(perm);
    }
    let perm = require_valid_action(&b.base, a)?;
    let braces: BTreeSet<(usize, usize)> = b.braces.iter().copied().collect();
    for &(x, y) in &b.braces {
        let (p, q) = (perm[x], perm[y]);
        if !braces.contains(&(p.min(q), p.max(q))) {
            return Err(Error::InvalidAction("brace set is not invariant".into()));
        }
    }
    Ok(perm)
}

/// Quotient of the bracing graph by the ribbon orbits: the orbit label of
/// every ribbon and the quotient graph on orbit ids `0..n`.
#[derive(Clone, Debug)]
pub struct QuotientBracing {
    pub orbit_of: Vec<usize>,
    pub graph: Graph,
}

pub fn quotient_bracing_graph(b: &BracedGraph, a: &SymmetryAction) -> Result<QuotientBracing> {
    let perm = symmetric_perm(b, a)?;
    quotient_with_perm(b, &perm)
}

fn quotient_with_perm(b: &BracedGraph, perm: &[usize]) -> Result<QuotientBracing> {
    let rperm = ribbon_permutation(b, perm)?;
    let n = rperm.len();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = 0;
    for r in 0..n {
        if orbit_of[r] != usize::MAX {
            continue;
        }
        let mut s = r;
        while orbit_of[s] == usize::MAX {
            orbit_of[s] = orbits;
            s = rperm[s];
        }
        orbits += 1;
    }
    let edges: BTreeSet<(usize, usize)> = ribbon_graph(b)
        .bracing_edges()
        .into_iter()
        .map(|(r, s)| (orbit_of[r], orbit_of[s]))
        .filter(|(x, y)| x != y)
        .map(|(x, y)| (x.min(y), x.max(y)))
        .collect();
    let edges: Vec<_> = edges.into_iter().collect();
    Ok(QuotientBracing {
        orbit_of,
        graph: Graph::from_indexed(orbits, &edges)?,
    })
}

/// Symmetric rigidity decision: rigid iff the quotient bracing graph is
/// connected. The flexible certificate colors red the ribbons whose orbit
/// lies in the quotient component of ribbon 0's orbit.
pub fn decide_symmetric_rigidity(b: &BracedGraph, a: &SymmetryAction) -> Result<Verdict> {
    let perm = symmetric_perm(b, a)?;
    let q = quotient_with_perm(b, &perm)?;
    let blocks = connected_components(&q.graph);
    if blocks.len() <= 1 {
        return Ok(Verdict::Rigid {
            spanning_tree: spanning_tree(q.graph.vertex_count(), q.graph.edges()),
        });
    }
    let red_block = &blocks[0];
    let split: Vec<Color> = q
        .orbit_of
        .iter()
        .map(|o| {
            if red_block.binary_search(o).is_ok() {
                Color::Red
            } else {
                Color::Blue
            }
        })
        .collect();
    let coloring = cartesian_nac_from_partition(b, &split)?;
    // braces are invariant, so the same vertex permutation acts on the braced graph
    if !symmetric_nac_with_perm(&b.full, &perm, a.k, &coloring)? {
        return Err(Error::NotSymmetric);
    }
    Ok(Verdict::Flexible { split, coloring })
}
