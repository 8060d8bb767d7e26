mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use rigidity_kit::graph::{connected_components, four_cycles};
use rigidity_kit::*;

fn quadruple_cycles(g: &Graph) -> BTreeSet<[usize; 4]> {
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let vs = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| vs[i] != vs[j]));
                    if !distinct {
                        continue;
                    }
                    let ids: Option<Vec<usize>> =
                        (0..4).map(|i| g.edge_id(vs[i], vs[(i + 1) % 4])).collect();
                    if let Some(mut ids) = ids {
                        ids.sort_unstable();
                        out.insert([ids[0], ids[1], ids[2], ids[3]]);
                    }
                }
            }
        }
    }
    out
}

fn cycle_edges(g: &Graph, c: [usize; 4]) -> [usize; 4] {
    let mut ids: Vec<usize> = (0..4)
        .map(|i| g.edge_id(c[i], c[(i + 1) % 4]).unwrap())
        .collect();
    ids.sort_unstable();
    [ids[0], ids[1], ids[2], ids[3]]
}

/// Permutation with consecutive cycles of the given lengths.
fn permutation_with_cycles(lengths: &[usize]) -> Vec<usize> {
    let mut perm = Vec::new();
    let mut start = 0;
    for &l in lengths {
        for i in 0..l {
            perm.push(start + (i + 1) % l);
        }
        start += l;
    }
    perm
}

fn order(perm: &[usize]) -> usize {
    let mut q: Vec<usize> = (0..perm.len()).collect();
    for j in 1.. {
        q = q.iter().map(|&v| perm[v]).collect();
        if q.iter().enumerate().all(|(i, &v)| i == v) {
            return j;
        }
    }
    unreachable!()
}

proptest! {
    #[test]
    fn four_cycles_match_quadruple_search(g in small_graph(8, 64)) {
        let fast: BTreeSet<[usize; 4]> = four_cycles(&g).into_iter().map(|c| cycle_edges(&g, c)).collect();
        prop_assert_eq!(fast.len(), four_cycles(&g).len());
        prop_assert_eq!(fast, quadruple_cycles(&g));
    }

    #[test]
    fn components_survive_relabelling(g in small_graph(9, 64), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.relabel(|v| {
            let VertexId::Int(i) = v else { unreachable!() };
            VertexId::Int(perm[*i as usize] as i64 + 100)
        }).unwrap();
        let as_ids = |g: &Graph| -> BTreeSet<BTreeSet<VertexId>> {
            connected_components(g).into_iter().map(|c| c.into_iter().map(|v| g.vertex(v).clone()).collect()).collect()
        };
        let mapped: BTreeSet<BTreeSet<VertexId>> = as_ids(&g)
            .into_iter()
            .map(|c| c.into_iter().map(|v| {
                let VertexId::Int(i) = v else { unreachable!() };
                VertexId::Int(perm[i as usize] as i64 + 100)
            }).collect())
            .collect();
        prop_assert_eq!(mapped, as_ids(&h));
    }

    #[test]
    fn symmetry_validation_matches_orbit_criterion(
        k in 2usize..=6,
        lengths in proptest::collection::vec(prop_oneof![Just(1usize), Just(2), Just(3), Just(6)], 1..5),
        edge_seeds in proptest::collection::vec((any::<usize>(), any::<usize>()), 0..6),
    ) {
        let perm = permutation_with_cycles(&lengths);
        let n = perm.len();
        prop_assume!(n >= 2);
        // the union of orbits of random pairs is invariant under `perm`
        let mut edges = BTreeSet::new();
        for (a, b) in edge_seeds {
            let (mut u, mut v) = (a % n, b % n);
            for _ in 0..order(&perm) {
                if u != v {
                    edges.insert((u.min(v), u.max(v)));
                }
                u = perm[u];
                v = perm[v];
            }
        }
        let g = Graph::from_indexed(n, &edges.into_iter().collect::<Vec<_>>()).unwrap();
        let a = SymmetryAction::from_permutation(&g, k, &perm);
        let report = validate_symmetry_action(&g, &a).unwrap();
        prop_assert!(report.automorphism);
        let fixed: Vec<usize> = (0..n).filter(|&v| perm[v] == v).collect();
        let expected = order(&perm) == k
            && lengths.iter().all(|&l| l == 1 || l == k)
            && fixed.iter().all(|&u| fixed.iter().all(|&v| !g.has_edge(u, v)));
        prop_assert_eq!(report.is_valid(), expected);
    }
}

#[test]
fn non_automorphisms_are_reported() {
    let g = families::path(3);
    let a = SymmetryAction::from_permutation(&g, 3, &[1, 2, 0]);
    assert!(!validate_symmetry_action(&g, &a).unwrap().automorphism);
}
