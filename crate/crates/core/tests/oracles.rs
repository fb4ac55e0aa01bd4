//! Oracle answers checked against the materialised search space.

use itertools::Itertools;
use proptest::prelude::*;

use pe_core::formula::{build_delta, build_eta, DistanceFormula};
use pe_core::graph::Graph;
use pe_core::lab::{materialize, tuple_at, tuple_index, BipartiteGraph, DEFAULT_MATERIALIZE_BUDGET};
use pe_core::oracle::{ImplicitBipartite, WeakWitness, DEFAULT_EXTENSION_BUDGET};
use pe_core::profiles::{measure_profile_complexity, DEFAULT_ENUMERATION_BUDGET};

fn formulas() -> Vec<DistanceFormula> {
    vec![
        build_delta(1, 1).unwrap(),
        build_delta(2, 1).unwrap(),
        build_delta(2, 2).unwrap(),
        build_eta(2, 1).unwrap(),
        build_eta(2, 2).unwrap(),
    ]
}

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=6).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(&e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

struct Space {
    h: BipartiteGraph,
    n: usize,
    c: usize,
    d: usize,
}

impl Space {
    fn new(g: &Graph, f: &DistanceFormula) -> Space {
        Space {
            h: materialize(g, f, DEFAULT_MATERIALIZE_BUDGET).unwrap(),
            n: g.n(),
            c: f.c(),
            d: f.d(),
        }
    }

    fn edge(&self, a: &[usize], b: &[usize]) -> bool {
        self.h.has_edge(tuple_index(a, self.n), tuple_index(b, self.n))
    }

    fn lefts(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.h.left()).map(|i| tuple_at(i, self.c, self.n))
    }

    fn rights(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.h.right()).map(|i| tuple_at(i, self.d, self.n))
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn candidate_and_weak_witness(g in graph(), picks in proptest::collection::vec(any::<usize>(), 0..4)) {
        for f in formulas() {
            let ib = ImplicitBipartite::new(&g, f.clone()).unwrap();
            let s = Space::new(&g, &f);
            let b: Vec<Vec<usize>> = picks.iter().map(|&i| tuple_at(i % s.h.right(), s.d, s.n)).collect();
            let expect = s.lefts().any(|a| b.iter().all(|w| s.edge(&a, w)));
            match ib.candidate_oracle(&b).unwrap() {
                Some(a) => prop_assert!(b.iter().all(|w| s.edge(&a, w))),
                None => prop_assert!(!expect),
            }
            for a in s.lefts() {
                match ib.weak_witness_oracle(&a).unwrap() {
                    WeakWitness::Solution => prop_assert!(s.rights().all(|w| s.edge(&a, &w))),
                    WeakWitness::Witness(w) => prop_assert!(!s.edge(&a, &w)),
                }
            }
        }
    }

    #[test]
    fn strong_witness(g in graph(), picks in proptest::collection::vec(any::<usize>(), 1..4), p in 1usize..=2) {
        for f in formulas() {
            let ib = ImplicitBipartite::new(&g, f.clone()).unwrap();
            let s = Space::new(&g, &f);
            let a: Vec<Vec<usize>> = picks.iter().map(|&i| tuple_at(i % s.h.left(), s.c, s.n)).collect();
            let rights: Vec<Vec<usize>> = s.rights().collect();
            let defeats = |set: &[&Vec<usize>]| a.iter().all(|x| set.iter().any(|w| !s.edge(x, w)));
            let exists = (1..=p).any(|size| rights.iter().combinations(size).any(|set| defeats(&set)));
            match ib.strong_witness_oracle(&a, p).unwrap() {
                Some(set) => {
                    prop_assert!(set.len() <= p);
                    prop_assert!(defeats(&set.iter().collect::<Vec<_>>()));
                }
                None => prop_assert!(!exists),
            }
        }
    }

    #[test]
    fn extension(g in graph(), picks in proptest::collection::vec(any::<usize>(), 0..3)) {
        for f in formulas() {
            let ib = ImplicitBipartite::new(&g, f.clone()).unwrap();
            let s = Space::new(&g, &f);
            let b: Vec<Vec<usize>> = picks.iter().map(|&i| tuple_at(i % s.h.right(), s.d, s.n)).collect();
            let exists = s
                .lefts()
                .any(|a| b.iter().all(|w| s.edge(&a, w)) && s.rights().any(|w| !s.edge(&a, &w)));
            match ib.extension_oracle(&b, DEFAULT_EXTENSION_BUDGET).unwrap() {
                Some((a, w)) => {
                    prop_assert!(b.iter().all(|x| s.edge(&a, x)));
                    prop_assert!(!s.edge(&a, &w));
                }
                None => prop_assert!(!exists),
            }
        }
    }

    #[test]
    fn profile_count_grows_with_pivot_size(g in graph(), r in 1u32..=3) {
        let mut last = 0;
        for m in 0..=g.n() {
            let c = measure_profile_complexity(&g, r, m, 100, 0, DEFAULT_ENUMERATION_BUDGET).unwrap();
            prop_assert!(c.exact);
            prop_assert!(c.count >= last && c.count <= g.n());
            last = c.count;
        }
    }
}
