//! NAC-colorings: validity, enumeration, cartesian and symmetric variants,
//! and chains of colorings along a tower of nested graphs.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::graph::{
    blocks_from_labels, component_labels, compose, require_valid_action, Graph, SymmetryAction,
    VertexId,
};
use crate::ribbons::compute_ribbons;

/// Largest edge count accepted by [`is_nac_oracle`].
pub const ORACLE_EDGE_LIMIT: usize = 24;

/// Largest edge count of a single tower level.
pub const TOWER_LEVEL_EDGE_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Blue,
    Red,
}

impl Color {
    pub fn swap(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
        }
    }
}

/// Red/blue assignment indexed by the edge indices of a [`Graph`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeColoring {
    colors: Vec<Color>,
}

impl EdgeColoring {
    pub fn new(colors: Vec<Color>) -> Self {
        EdgeColoring { colors }
    }

    pub fn from_fn(g: &Graph, f: impl Fn(usize) -> Color) -> Self {
        EdgeColoring {
            colors: (0..g.edge_count()).map(f).collect(),
        }
    }

    /// Coloring from explicit red and blue edge lists, which must cover the
    /// edge set exactly once.
    pub fn from_pairs(
        g: &Graph,
        red: &[(VertexId, VertexId)],
        blue: &[(VertexId, VertexId)],
    ) -> Result<Self> {
        let mut colors: Vec<Option<Color>> = vec![None; g.edge_count()];
        for (list, color) in [(red, Color::Red), (blue, Color::Blue)] {
            for (u, v) in list {
                let e = g.find_edge(u, v).map_err(|_| {
                    Error::ColoringDomainMismatch(format!("{u}-{v} is not an edge"))
                })?;
                if colors[e].replace(color).is_some() {
                    return Err(Error::ColoringDomainMismatch(format!(
                        "{u}-{v} is colored twice"
                    )));
                }
            }
        }
        let colors = colors
            .into_iter()
            .enumerate()
            .map(|(e, c)| {
                c.ok_or_else(|| {
                    let (u, v) = g.edge_ids(e);
                    Error::ColoringDomainMismatch(format!("{u}-{v} is uncolored"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EdgeColoring { colors })
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, e: usize) -> Color {
        self.colors[e]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn is_red(&self, e: usize) -> bool {
        self.colors[e] == Color::Red
    }

    pub fn swapped(&self) -> EdgeColoring {
        EdgeColoring {
            colors: self.colors.iter().map(|c| c.swap()).collect(),
        }
    }

    pub fn is_surjective(&self) -> bool {
        self.colors.contains(&Color::Red) && self.colors.contains(&Color::Blue)
    }

    /// Edges of one color as identifier pairs, in edge order.
    pub fn pairs(&self, g: &Graph, color: Color) -> Vec<(VertexId, VertexId)> {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == color)
            .map(|(e, _)| {
                let (u, v) = g.edge_ids(e);
                (u.clone(), v.clone())
            })
            .collect()
    }

    /// Restriction to a subgraph whose edges all belong to `g`.
    pub fn restrict(&self, g: &Graph, sub: &Graph) -> Result<EdgeColoring> {
        check_domain(g, self)?;
        let colors = (0..sub.edge_count())
            .map(|e| {
                let (u, v) = sub.edge_ids(e);
                g.find_edge(u, v).map(|f| self.colors[f])
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EdgeColoring { colors })
    }
}

pub(crate) fn check_domain(g: &Graph, c: &EdgeColoring) -> Result<()> {
    if c.len() != g.edge_count() {
        return Err(Error::ColoringDomainMismatch(format!(
            "coloring has {} entries, graph has {} edges",
            c.len(),
            g.edge_count()
        )));
    }
    Ok(())
}

fn labels_of(g: &Graph, c: &EdgeColoring, color: Color) -> (Vec<usize>, usize) {
    component_labels(g, |e| c.color(e) == color)
}

/// Surjective and no cycle carries exactly one edge of some color.
///
/// Equivalent formulation used here: every red edge joins two different blue
/// components, and every blue edge two different red components.
pub fn is_nac(g: &Graph, c: &EdgeColoring) -> Result<bool> {
    check_domain(g, c)?;
    if !c.is_surjective() {
        return Ok(false);
    }
    let (red, _) = labels_of(g, c, Color::Red);
    let (blue, _) = labels_of(g, c, Color::Blue);
    Ok(g.edges()
        .iter()
        .enumerate()
        .all(|(e, &(u, v))| match c.color(e) {
            Color::Red => blue[u] != blue[v],
            Color::Blue => red[u] != red[v],
        }))
}

/// Reference check by explicit enumeration of every cycle.
pub fn is_nac_oracle(g: &Graph, c: &EdgeColoring) -> Result<bool> {
    CycleOracle::new(g)?.check(c)
}

/// The simple cycles of a graph as edge bitmasks, for repeated oracle checks
/// against one graph.
#[derive(Clone, Debug)]
pub struct CycleOracle {
    edges: usize,
    cycles: Vec<u32>,
}

impl CycleOracle {
    pub fn new(g: &Graph) -> Result<Self> {
        if g.edge_count() > ORACLE_EDGE_LIMIT {
            return Err(Error::TooManyEdges {
                edges: g.edge_count(),
                limit: ORACLE_EDGE_LIMIT,
            });
        }
        let mut cycles = Vec::new();
        for_each_cycle(g, |edges| {
            cycles.push(edges.iter().fold(0u32, |m, &e| m | 1 << e));
            true
        });
        cycles.sort_unstable();
        cycles.dedup();
        Ok(CycleOracle {
            edges: g.edge_count(),
            cycles,
        })
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn check(&self, c: &EdgeColoring) -> Result<bool> {
        if c.len() != self.edges {
            return Err(Error::ColoringDomainMismatch(format!(
                "coloring has {} entries, graph has {} edges",
                c.len(),
                self.edges
            )));
        }
        let red = (0..self.edges)
            .filter(|&e| c.is_red(e))
            .fold(0u32, |m, e| m | 1 << e);
        Ok(self.check_mask(red))
    }

    /// Same as [`CycleOracle::check`] with the red edges given as a bitmask.
    pub fn check_mask(&self, red: u32) -> bool {
        let all = if self.edges == 32 {
            u32::MAX
        } else {
            (1u32 << self.edges) - 1
        };
        if red & all == 0 || red & all == all {
            return false;
        }
        self.cycles.iter().all(|&m| {
            let r = (red & m).count_ones();
            r != 1 && r + 1 != m.count_ones()
        })
    }
}

/// Calls `f` with the edge list of every simple cycle (each cycle is visited
/// once per direction). Stops early when `f` returns false.
fn for_each_cycle(g: &Graph, mut f: impl FnMut(&[usize]) -> bool) {
    fn walk(
        g: &Graph,
        start: usize,
        at: usize,
        on_path: &mut [bool],
        path: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        for &w in g.neighbors(at) {
            if w < start {
                continue;
            }
            let e = g.edge_id(at, w).unwrap();
            if w == start {
                if path.len() >= 2 {
                    path.push(e);
                    let go_on = f(path);
                    path.pop();
                    if !go_on {
                        return false;
                    }
                }
            } else if !on_path[w] {
                on_path[w] = true;
                path.push(e);
                let go_on = walk(g, start, w, on_path, path, f);
                path.pop();
                on_path[w] = false;
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
    let mut on_path = vec![false; g.vertex_count()];
    let mut path = Vec::new();
    for s in 0..g.vertex_count() {
        on_path[s] = true;
        let go_on = walk(g, s, s, &mut on_path, &mut path, &mut f);
        on_path[s] = false;
        if !go_on {
            return;
        }
    }
}

/// Union-find with undo, used by the backtracking search.
struct RollbackDsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<Option<(usize, usize)>>,
}

impl RollbackDsu {
    fn new(n: usize) -> Self {
        RollbackDsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            self.history.push(None);
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push(Some((a, b)));
    }

    fn undo(&mut self) {
        if let Some(Some((a, b))) = self.history.pop() {
            self.parent[b] = b;
            self.size[a] -= self.size[b];
        }
    }
}

/// Edge order in which every edge after the first touches an earlier one
/// (for connected graphs), so conflicts surface early.
fn search_order(g: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.edge_count());
    let mut taken = vec![false; g.edge_count()];
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..g.vertex_count() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                let e = g.edge_id(u, w).unwrap();
                if !taken[e] {
                    taken[e] = true;
                    order.push(e);
                }
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    colors: Vec<Option<Color>>,
    red: RollbackDsu,
    blue: RollbackDsu,
    limit: Option<usize>,
    out: Vec<EdgeColoring>,
}

impl Search<'_> {
    fn full(&self) -> bool {
        self.limit.is_some_and(|l| self.out.len() >= l)
    }

    fn dsu(&self, c: Color) -> &RollbackDsu {
        match c {
            Color::Red => &self.red,
            Color::Blue => &self.blue,
        }
    }

    /// Assigns `e` and reports whether the partial coloring is still
    /// extendable. The caller undoes the assignment.
    fn assign(&mut self, e: usize, c: Color) -> bool {
        let (u, v) = self.g.edge(e);
        self.colors[e] = Some(c);
        let other = c.swap();
        let closes_cycle = self.dsu(other).find(u) == self.dsu(other).find(v);
        match c {
            Color::Red => self.red.union(u, v),
            Color::Blue => self.blue.union(u, v),
        }
        if closes_cycle {
            return false;
        }
        // an already colored edge of the other color whose endpoints are now
        // joined by a path in color c lies on a cycle with one such edge
        let d = self.dsu(c);
        self.order.iter().all(|&f| match self.colors[f] {
            Some(col) if col == other => {
                let (x, y) = self.g.edge(f);
                d.find(x) != d.find(y)
            }
            _ => true,
        })
    }

    fn unassign(&mut self, e: usize, c: Color) {
        self.colors[e] = None;
        match c {
            Color::Red => self.red.undo(),
            Color::Blue => self.blue.undo(),
        }
    }

    fn run(&mut self, depth: usize, has_red: bool) {
        if self.full() {
            return;
        }
        if depth == self.order.len() {
            if has_red {
                let c = EdgeColoring::new(self.colors.iter().map(|c| c.unwrap()).collect());
                debug_assert!(is_nac(self.g, &c).unwrap());
                let swapped = c.swapped();
                self.out.push(c);
                if !self.full() {
                    self.out.push(swapped);
                }
            }
            return;
        }
        let e = self.order[depth];
        let choices: &[Color] = if depth == 0 {
            &[Color::Blue]
        } else {
            &[Color::Blue, Color::Red]
        };
        for &c in choices {
            if self.assign(e, c) {
                self.run(depth + 1, has_red || c == Color::Red);
            }
            self.unassign(e, c);
            if self.full() {
                return;
            }
        }
    }
}

/// All NAC-colorings, each immediately followed by its color swap.
///
/// The order is the depth-first order of a search that colors edges in
/// breadth-first order with the first edge fixed blue, trying blue before
/// red. `limit` stops the search once that many colorings are collected.
pub fn enumerate_nac(g: &Graph, limit: Option<usize>) -> Vec<EdgeColoring> {
    if g.edge_count() < 2 || limit == Some(0) {
        return Vec::new();
    }
    let mut search = Search {
        g,
        order: search_order(g),
        colors: vec![None; g.edge_count()],
        red: RollbackDsu::new(g.vertex_count()),
        blue: RollbackDsu::new(g.vertex_count()),
        limit,
        out: Vec::new(),
    };
    search.run(0, false);
    search.out
}

/// Components of the spanning subgraph formed by the edges of one color;
/// isolated vertices are singletons.
pub fn monochromatic_components(
    g: &Graph,
    c: &EdgeColoring,
    color: Color,
) -> Result<Vec<Vec<usize>>> {
    check_domain(g, c)?;
    let (label, count) = labels_of(g, c, color);
    Ok(blocks_from_labels(&label, count))
}

/// No red component meets a blue component in more than one vertex.
pub fn is_cartesian(g: &Graph, c: &EdgeColoring) -> Result<bool> {
    if !is_nac(g, c)? {
        return Err(Error::NotNac);
    }
    let (red, _) = labels_of(g, c, Color::Red);
    let (blue, _) = labels_of(g, c, Color::Blue);
    let mut seen = HashSet::with_capacity(g.vertex_count());
    Ok((0..g.vertex_count()).all(|v| seen.insert((red[v], blue[v]))))
}

/// Whether `c` is a NAC-coloring invariant under the action such that no two
/// distinct partially invariant components of one color share an edge.
pub fn is_symmetric_nac(g: &Graph, a: &SymmetryAction, c: &EdgeColoring) -> Result<bool> {
    let perm = require_valid_action(g, a)?;
    symmetric_nac_with_perm(g, &perm, a.k, c)
}

pub(crate) fn symmetric_nac_with_perm(
    g: &Graph,
    perm: &[usize],
    k: usize,
    c: &EdgeColoring,
) -> Result<bool> {
    if !is_nac(g, c)? {
        return Ok(false);
    }
    let invariant = g.edges().iter().enumerate().all(|(e, &(u, v))| {
        let f = g.edge_id(perm[u], perm[v]).expect("automorphism");
        c.color(f) == c.color(e)
    });
    if !invariant {
        return Ok(false);
    }
    let mut powers = vec![perm.to_vec()];
    for j in 1..k.saturating_sub(1) {
        powers.push(compose(perm, &powers[j - 1]));
    }
    for color in [Color::Red, Color::Blue] {
        let (label, count) = labels_of(g, c, color);
        let blocks = blocks_from_labels(&label, count);
        let partial: Vec<bool> = blocks
            .iter()
            .map(|b| powers.iter().any(|p| label[p[b[0]]] == label[b[0]]))
            .collect();
        let joined = g
            .edges()
            .iter()
            .any(|&(u, v)| label[u] != label[v] && partial[label[u]] && partial[label[v]]);
        if joined {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nested finite graphs with two marked edges of the first level.
#[derive(Clone, Debug)]
pub struct TowerInstance {
    pub levels: Vec<Graph>,
    pub e1: (VertexId, VertexId),
    pub e2: (VertexId, VertexId),
}

#[derive(Clone, Debug)]
pub enum TowerMode {
    Plain,
    MonochromaticRibbons,
    Symmetric(SymmetryAction),
}

impl TowerInstance {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedTower(m));
        let Some(first) = self.levels.first() else {
            return bad("no levels".into());
        };
        let e1 = first.find_edge(&self.e1.0, &self.e1.1);
        let e2 = first.find_edge(&self.e2.0, &self.e2.1);
        match (e1, e2) {
            (Ok(a), Ok(b)) if a != b => {}
            (Ok(_), Ok(_)) => return bad("marked edges coincide".into()),
            _ => return bad("marked edges must lie in the first level".into()),
        }
        for (n, g) in self.levels.iter().enumerate() {
            if !g.is_connected() {
                return bad(format!("level {n} is disconnected"));
            }
            if g.edge_count() > TOWER_LEVEL_EDGE_LIMIT {
                return Err(Error::TooManyEdges {
                    edges: g.edge_count(),
                    limit: TOWER_LEVEL_EDGE_LIMIT,
                });
            }
        }
        for (n, w) in self.levels.windows(2).enumerate() {
            let (small, big) = (&w[0], &w[1]);
            if small.vertex_count() >= big.vertex_count() {
                return bad(format!(
                    "level {n} is not strictly smaller than level {}",
                    n + 1
                ));
            }
            let induced = big.induced_subgraph(small.vertices()).map_err(|_| {
                Error::MalformedTower(format!("level {n} is not contained in level {}", n + 1))
            })?;
            if &induced != small {
                return bad(format!(
                    "level {n} is not an induced subgraph of level {}",
                    n + 1
                ));
            }
        }
        Ok(())
    }
}

/// Members of the admissible set at one level: NAC-colorings with the first
/// marked edge blue and the second red, filtered by mode.
fn admissible(g: &Graph, e1: usize, e2: usize, mode: &TowerMode) -> Result<Vec<EdgeColoring>> {
    let ribbons = match mode {
        TowerMode::MonochromaticRibbons => Some(compute_ribbons(g)),
        _ => None,
    };
    let perm = match mode {
        TowerMode::Symmetric(a) => {
            let restricted = a.restrict(g)?;
            Some((require_valid_action(g, &restricted)?, a.k))
        }
        _ => None,
    };
    let mut out = Vec::new();
    for c in enumerate_nac(g, None) {
        if c.color(e1) != Color::Blue || c.color(e2) != Color::Red {
            continue;
        }
        if let Some(rd) = &ribbons {
            if !rd.is_monochromatic(&c) {
                continue;
            }
        }
        if let Some((p, k)) = &perm {
            if !symmetric_nac_with_perm(g, p, *k, &c)? {
                continue;
            }
        }
        out.push(c);
    }
    Ok(out)
}

/// A sequence of admissible colorings, one per level, each the restriction
/// of the next; `None` iff no such sequence exists.
pub fn tower_chain(t: &TowerInstance, mode: &TowerMode) -> Result<Option<Vec<EdgeColoring>>> {
    t.validate()?;
    let mut sets = Vec::with_capacity(t.levels.len());
    for g in &t.levels {
        let a = g.find_edge(&t.e1.0, &t.e1.1)?;
        let b = g.find_edge(&t.e2.0, &t.e2.1)?;
        sets.push(admissible(g, a, b, mode)?);
    }

    // restriction of each coloring to the previous level, as an index there
    let mut parent: Vec<Vec<Option<usize>>> = vec![Vec::new(); t.levels.len()];
    for n in 1..t.levels.len() {
        let index: HashMap<&EdgeColoring, usize> = sets[n - 1]
            .iter()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        parent[n] = sets[n]
            .iter()
            .map(|c| {
                c.restrict(&t.levels[n], &t.levels[n - 1])
                    .map(|r| index.get(&r).copied())
            })
            .collect::<Result<Vec<_>>>()?;
    }

    // good[n][i]: coloring i of level n extends to the last level
    let last = t.levels.len() - 1;
    let mut good: Vec<Vec<bool>> = sets.iter().map(|s| vec![false; s.len()]).collect();
    good[last].iter_mut().for_each(|g| *g = true);
    for n in (1..=last).rev() {
        for (i, p) in parent[n].iter().enumerate() {
            if let (true, Some(p)) = (good[n][i], p) {
                good[n - 1][*p] = true;
            }
        }
    }

    let Some(mut current) = good[0].iter().position(|&g| g) else {
        return Ok(None);
    };
    let mut chain = vec![sets[0][current].clone()];
    for n in 1..=last {
        current = (0..sets[n].len())
            .find(|&i| good[n][i] && parent[n][i] == Some(current))
            .expect("reachability guarantees a successor");
        chain.push(sets[n][current].clone());
    }
    Ok(Some(chain))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn coloring(colors: &str) -> EdgeColoring {
        EdgeColoring::new(
            colors
                .chars()
                .map(|c| if c == 'r' { Color::Red } else { Color::Blue })
                .collect(),
        )
    }

    /// Red iff the edge touches the centre of the 2×2 grid.
    pub(crate) fn grid_star_coloring(g: &Graph) -> EdgeColoring {
        EdgeColoring::from_fn(g, |e| {
            let (u, v) = g.edge(e);
            if u == 4 || v == 4 {
                Color::Red
            } else {
                Color::Blue
            }
        })
    }

    #[test]
    fn triangle_with_single_blue_edge_is_not_nac() {
        let g = cycle(3);
        let c = coloring("rrb");
        assert!(!is_nac(&g, &c).unwrap());
        assert!(!is_nac_oracle(&g, &c).unwrap());
    }

    #[test]
    fn alternating_square_is_nac() {
        // cycle(4) edges sorted: 01, 03, 12, 23; alternating around the cycle
        let g = cycle(4);
        let c = EdgeColoring::from_fn(&g, |e| {
            let (u, v) = g.edge(e);
            if (u, v) == (0, 1) || (u, v) == (2, 3) {
                Color::Red
            } else {
                Color::Blue
            }
        });
        assert!(is_nac(&g, &c).unwrap());
        assert!(is_nac_oracle(&g, &c).unwrap());
    }

    #[test]
    fn grid_star_coloring_is_nac() {
        let g = grid(2, 2);
        let c = grid_star_coloring(&g);
        assert!(is_nac(&g, &c).unwrap());
        assert!(is_nac_oracle(&g, &c).unwrap());
    }

    #[test]
    fn oracle_degenerate_cases() {
        let g = cycle(5);
        assert!(!is_nac_oracle(&g, &coloring("rrrrr")).unwrap());
        let edge = path(2);
        assert!(!is_nac_oracle(&edge, &coloring("r")).unwrap());
        assert!(!is_nac_oracle(&edge, &coloring("b")).unwrap());
        assert!(matches!(
            is_nac_oracle(&complete(8), &EdgeColoring::new(vec![Color::Red; 28])),
            Err(Error::TooManyEdges { .. })
        ));
    }

    #[test]
    fn domain_mismatch_is_reported() {
        assert!(matches!(
            is_nac(&cycle(4), &coloring("rb")),
            Err(Error::ColoringDomainMismatch(_))
        ));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_nac(&cycle(3), None).len(), 0);
        let g = grid(2, 2);
        let all = enumerate_nac(&g, None);
        assert_eq!(all.len(), 254);
        let perm = grid_rotation(2).permutation(&g).unwrap();
        let invariant: Vec<_> =
            all.iter()
                .filter(|c| {
                    g.edges().iter().enumerate().all(|(e, &(u, v))| {
                        c.color(g.edge_id(perm[u], perm[v]).unwrap()) == c.color(e)
                    })
                })
                .collect();
        assert_eq!(invariant.len(), 2);
        assert_eq!(*invariant[0], invariant[1].swapped());
        let star = grid_star_coloring(&g);
        assert!(invariant.contains(&&star));
        assert_eq!(enumerate_nac(&g, Some(1)).len(), 1);
    }

    #[test]
    fn square_enumeration_matches_brute_force() {
        let g = cycle(4);
        let brute = (0..16u32)
            .filter(|m| {
                let c = EdgeColoring::from_fn(&g, |e| {
                    if m >> e & 1 == 1 {
                        Color::Red
                    } else {
                        Color::Blue
                    }
                });
                is_nac_oracle(&g, &c).unwrap()
            })
            .count();
        assert_eq!(brute, 6);
        assert_eq!(enumerate_nac(&g, None).len(), 6);
    }

    #[test]
    fn component_counts() {
        let g = cycle(4);
        let c = EdgeColoring::from_fn(&g, |e| {
            let (u, v) = g.edge(e);
            if (u, v) == (0, 1) || (u, v) == (2, 3) {
                Color::Red
            } else {
                Color::Blue
            }
        });
        assert_eq!(
            monochromatic_components(&g, &c, Color::Red).unwrap(),
            vec![vec![0, 1], vec![2, 3]]
        );
        let grid = grid(2, 2);
        let blue =
            monochromatic_components(&grid, &grid_star_coloring(&grid), Color::Blue).unwrap();
        assert_eq!(blue, vec![vec![0, 1, 2, 3, 5, 6, 7, 8], vec![4]]);
        let all_red = EdgeColoring::new(vec![Color::Red; 4]);
        assert_eq!(
            monochromatic_components(&g, &all_red, Color::Red)
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn cartesian_examples() {
        let g = cycle(4);
        let alt = EdgeColoring::from_fn(&g, |e| {
            if e == 0 || e == 3 {
                Color::Red
            } else {
                Color::Blue
            }
        });
        assert!(is_cartesian(&g, &alt).unwrap());
        let grid = grid(2, 2);
        assert!(!is_cartesian(&grid, &grid_star_coloring(&grid)).unwrap());
        assert!(is_cartesian(&path(3), &coloring("rb")).unwrap());
        assert!(matches!(
            is_cartesian(&cycle(3), &coloring("rrb")),
            Err(Error::NotNac)
        ));
    }

    #[test]
    fn grid_star_is_not_symmetric() {
        let g = grid(2, 2);
        let c = grid_star_coloring(&g);
        assert!(!is_symmetric_nac(&g, &grid_rotation(2), &c).unwrap());
    }

    #[test]
    fn non_invariant_coloring_is_not_symmetric() {
        // 4-cycle with the quarter turn: alternating coloring is swapped by it
        let g = cycle(4);
        let a = SymmetryAction::from_permutation(&g, 4, &[1, 2, 3, 0]);
        let c = EdgeColoring::from_fn(&g, |e| {
            if e == 0 || e == 3 {
                Color::Red
            } else {
                Color::Blue
            }
        });
        assert!(is_nac(&g, &c).unwrap());
        assert!(!is_symmetric_nac(&g, &a, &c).unwrap());
    }

    fn v(i: usize) -> VertexId {
        VertexId::from(i)
    }

    fn grid_tower(sizes: &[usize]) -> TowerInstance {
        // grids nested about their lower-left corner, relabelled by (x, y)
        let levels = sizes
            .iter()
            .map(|&n| {
                grid(n, n)
                    .relabel(|id| {
                        let VertexId::Int(i) = id else { unreachable!() };
                        let i = *i as usize;
                        VertexId::Name(format!("{}_{}", i % (n + 1), i / (n + 1)))
                    })
                    .unwrap()
            })
            .collect();
        TowerInstance {
            levels,
            e1: ("0_0".into(), "1_0".into()),
            e2: ("0_0".into(), "0_1".into()),
        }
    }

    #[test]
    fn grid_tower_has_chain() {
        let t = grid_tower(&[1, 2]);
        for mode in [TowerMode::Plain, TowerMode::MonochromaticRibbons] {
            let chain = tower_chain(&t, &mode).unwrap().expect("chain");
            assert_eq!(chain.len(), 2);
            for (c, g) in chain.iter().zip(&t.levels) {
                assert!(is_nac(g, c).unwrap());
            }
            for n in 1..2 {
                assert_eq!(
                    chain[n].restrict(&t.levels[n], &t.levels[n - 1]).unwrap(),
                    chain[n - 1]
                );
            }
        }
    }

    #[test]
    fn triangle_tower_has_no_chain() {
        let t = TowerInstance {
            levels: vec![cycle(3)],
            e1: (v(0), v(1)),
            e2: (v(1), v(2)),
        };
        assert_eq!(tower_chain(&t, &TowerMode::Plain).unwrap(), None);
    }

    #[test]
    fn single_level_tower_returns_member() {
        let t = TowerInstance {
            levels: vec![cycle(4)],
            e1: (v(0), v(1)),
            e2: (v(1), v(2)),
        };
        let chain = tower_chain(&t, &TowerMode::Plain).unwrap().unwrap();
        assert_eq!(chain.len(), 1);
        let g = &t.levels[0];
        assert!(is_nac(g, &chain[0]).unwrap());
        assert_eq!(chain[0].color(g.edge_id(0, 1).unwrap()), Color::Blue);
        assert_eq!(chain[0].color(g.edge_id(1, 2).unwrap()), Color::Red);
    }

    #[test]
    fn malformed_towers_are_rejected() {
        let same = TowerInstance {
            levels: vec![cycle(4)],
            e1: (v(0), v(1)),
            e2: (v(1), v(0)),
        };
        assert!(matches!(
            tower_chain(&same, &TowerMode::Plain),
            Err(Error::MalformedTower(_))
        ));
        let not_nested = TowerInstance {
            levels: vec![cycle(4), cycle(5)],
            e1: (v(0), v(1)),
            e2: (v(1), v(2)),
        };
        assert!(matches!(
            tower_chain(&not_nested, &TowerMode::Plain),
            Err(Error::MalformedTower(_))
        ));
    }

    #[test]
    fn symmetric_tower_on_rotating_grids() {
        // the quarter turn admits no symmetric NAC-coloring on the 2×2 grid
        let g = grid(2, 2);
        let t = TowerInstance {
            levels: vec![g.clone()],
            e1: (v(0), v(1)),
            e2: (v(1), v(4)),
        };
        let mode = TowerMode::Symmetric(grid_rotation(2));
        assert_eq!(tower_chain(&t, &mode).unwrap(), None);
    }
}
