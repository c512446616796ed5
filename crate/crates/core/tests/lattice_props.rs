use std::collections::HashSet;

use maxwell_core::lattice::{asymptotic_free_edge_count, expected_counts};
use maxwell_core::{AxialGauge, Lattice};
use proptest::prelude::*;

fn binom2(d: usize) -> usize {
    d * (d - 1) / 2
}

/// Stratum from the unique boundary face whose relative interior holds the edge.
fn stratum_by_faces(d: usize, n: usize, x: &[usize], axis: usize) -> usize {
    // per coordinate: None = free, Some(c) = fixed at c
    let choices: Vec<Option<usize>> = vec![None, Some(0), Some(n)];
    let mut hits = Vec::new();
    let total = 3usize.pow(d as u32);
    'faces: for code in 0..total {
        let mut c = code;
        let mut free = 0;
        for (j, &xj) in x.iter().enumerate() {
            let ch = choices[c % 3];
            c /= 3;
            match ch {
                None => {
                    free += 1;
                    if j != axis && !(0 < xj && xj < n) {
                        continue 'faces;
                    }
                }
                Some(v) => {
                    if j == axis || xj != v {
                        continue 'faces;
                    }
                }
            }
        }
        hits.push(d - free);
    }
    assert_eq!(hits.len(), 1, "edge interior to {} faces", hits.len());
    hits[0]
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, a: usize) -> usize {
        let p = self.0[a];
        if p == a {
            return a;
        }
        let r = self.find(p);
        self.0[a] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
        ra != rb
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn counts_match_closed_forms(d in 2usize..=4, n in 1usize..=6) {
        let lat = Lattice::new(d, n).unwrap();
        let v = (n + 1).pow(d as u32);
        let e = d * n * (n + 1).pow(d as u32 - 1);
        let p = binom2(d) * n * n * (n + 1).pow(d as u32 - 2);
        prop_assert_eq!((lat.vertex_count(), lat.edge_count(), lat.plaquette_count()), (v, e, p));
        prop_assert_eq!(expected_counts(d, n), (v, e, p));
        prop_assert_eq!(lat.strata_histogram().iter().sum::<usize>(), e);
    }

    #[test]
    fn strata_match_face_enumeration(d in 2usize..=4, n in 1usize..=4) {
        let lat = Lattice::new(d, n).unwrap();
        for (id, e) in lat.edges().iter().enumerate() {
            prop_assert_eq!(lat.stratum(id), stratum_by_faces(d, n, e.base.coords(), e.axis));
        }
    }

    #[test]
    fn neighbor_counts_follow_plaquette_count(d in 2usize..=4, n in 1usize..=4) {
        let lat = Lattice::new(d, n).unwrap();
        for id in 0..lat.edge_count() {
            let m = 2 * (d - 1) - lat.stratum(id);
            prop_assert_eq!(lat.plaquettes_containing(id).unwrap().len(), m);
            let (plus, minus) = lat.neighbor_sets(id).unwrap();
            prop_assert_eq!(plus.len(), m);
            prop_assert_eq!(minus.len(), 2 * m);
            let all: HashSet<usize> = plus.iter().chain(&minus).copied().collect();
            prop_assert_eq!(all.len(), 3 * m);
            prop_assert!(!all.contains(&id));
        }
    }

    #[test]
    fn axial_tree_spans_without_cycles(d in 2usize..=4, n in 1usize..=5) {
        let lat = Lattice::new(d, n).unwrap();
        let g = AxialGauge::new(&lat);
        let mut uf = UnionFind((0..lat.vertex_count()).collect());
        for &id in g.tree_edges() {
            let e = lat.edge(id);
            let a = lat.vertex_index(&e.base.to_signed()).unwrap();
            let b = lat.vertex_index(&e.head().to_signed()).unwrap();
            prop_assert!(uf.union(a, b), "cycle through edge {}", id);
        }
        let root = uf.find(0);
        for v in 0..lat.vertex_count() {
            prop_assert_eq!(uf.find(v), root);
        }
        prop_assert_eq!(g.free_edges().len(), lat.edge_count() + 1 - lat.vertex_count());
    }

    #[test]
    fn zero_sets_complement_free_edges(d in 2usize..=4, n in 1usize..=4) {
        let lat = Lattice::new(d, n).unwrap();
        let g = AxialGauge::new(&lat);
        let free: HashSet<usize> = g.free_edges().iter().copied().collect();
        for i in 0..d {
            let zeros: HashSet<Vec<usize>> = g.zero_set(i).iter().map(|v| v.0.clone()).collect();
            for v in lat.vertices() {
                let open = !zeros.contains(&v.0);
                let edge = lat.edge_id(&v.to_signed(), i);
                prop_assert_eq!(open, edge.is_some_and(|id| free.contains(&id)));
            }
        }
        prop_assert_eq!(g.zero_set(d - 1).len(), lat.vertex_count());
    }
}

#[test]
fn plaquettes_share_at_most_one_edge() {
    for (d, n) in [(2, 3), (3, 2), (4, 1)] {
        let lat = Lattice::new(d, n).unwrap();
        let sets: Vec<HashSet<usize>> = lat
            .plaquettes()
            .iter()
            .map(|p| lat.plaquette_edges(p).iter().map(|e| e.0).collect())
            .collect();
        for (a, sa) in sets.iter().enumerate() {
            assert_eq!(sa.len(), 4);
            for sb in &sets[a + 1..] {
                assert!(sa.intersection(sb).count() <= 1);
            }
        }
    }
}

#[test]
fn free_edge_count_d2_is_n_squared() {
    for n in 1..=10 {
        let lat = Lattice::new(2, n).unwrap();
        assert_eq!(AxialGauge::new(&lat).free_edges().len(), n * n);
    }
    // leading terms agree, lower-order ones differ
    assert_eq!(asymptotic_free_edge_count(2, 1), 0);
    assert_eq!(asymptotic_free_edge_count(3, 4), 2 * 64 - 3 * 16 + 1);
}
