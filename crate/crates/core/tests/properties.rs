mod common;

use std::collections::BTreeSet;

use apex_core::{brute_force_oracle, is_planar, solve_exact, Graph, VertexId};
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (4u32..10).prop_flat_map(|n| {
        let pairs = (n * (n - 1) / 2) as usize;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::new();
            for v in 0..n {
                g.add_vertex(VertexId(v));
            }
            let all = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
            for ((a, b), keep) in all.zip(bits) {
                if keep {
                    g.add_edge(VertexId(a), VertexId(b));
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solver_matches_enumeration(g in graph_strategy(), k in 0usize..4) {
        let expected = common::min_apex(&g, k).is_some();
        prop_assert_eq!(solve_exact(&g, k).is_feasible(), expected);
        prop_assert_eq!(brute_force_oracle(&g, k).unwrap().is_feasible(), expected);
    }

    #[test]
    fn returned_sets_are_apex_sets(g in graph_strategy(), k in 0usize..4) {
        if let Some(x) = solve_exact(&g, k).apex_set {
            prop_assert!(x.len() <= k);
            prop_assert!(is_planar(&g.without(&x)));
        }
    }

    #[test]
    fn feasibility_is_monotone_in_k(g in graph_strategy(), k in 0usize..3) {
        if solve_exact(&g, k).is_feasible() {
            prop_assert!(solve_exact(&g, k + 1).is_feasible());
        }
    }

    #[test]
    fn deleting_a_vertex_costs_at_most_one(g in graph_strategy(), k in 0usize..3) {
        let v = g.vertices().next().unwrap();
        let h = g.without(&BTreeSet::from([v]));
        if solve_exact(&g, k).is_feasible() {
            prop_assert!(solve_exact(&h, k).is_feasible());
        }
    }
}
