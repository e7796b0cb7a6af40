mod common;

use std::time::Duration;

use common::{all_labelled, brute_hamiltonian};
use proptest::prelude::*;
use toughham::graph::named;
use toughham::hamiltonicity::{
    hamiltonian_cycle, hamiltonian_cycle_backtrack, hamiltonian_cycle_dp, validate_cycle,
    HamiltonResult,
};
use toughham::Graph;

fn found(r: &HamiltonResult, g: &Graph) -> bool {
    match r {
        HamiltonResult::Found(c) => {
            assert!(validate_cycle(g, c, g.vertices()));
            true
        }
        HamiltonResult::NoCycle => false,
        HamiltonResult::Timeout => panic!("timeout on a small graph"),
    }
}

#[test]
fn solvers_agree_with_permutation_search_up_to_six() {
    for n in 1..=6 {
        for g in all_labelled(n) {
            let want = brute_hamiltonian(&g);
            assert_eq!(found(&hamiltonian_cycle_dp(&g), &g), want, "{g:?}");
            let bt = hamiltonian_cycle_backtrack(&g, Duration::from_secs(5));
            assert_eq!(found(&bt, &g), want, "{g:?}");
        }
    }
}

#[test]
fn non_hamiltonian_controls() {
    assert_eq!(hamiltonian_cycle(&named::petersen()), HamiltonResult::NoCycle);
    assert_eq!(hamiltonian_cycle(&named::complete_bipartite(2, 3)), HamiltonResult::NoCycle);
    let bt = hamiltonian_cycle_backtrack(&named::petersen(), Duration::from_secs(5));
    assert_eq!(bt, HamiltonResult::NoCycle);
}

#[test]
fn large_dense_graph_uses_backtracking() {
    let g = named::complete_bipartite(40, 40);
    assert!(found(&hamiltonian_cycle(&g), &g));
    // Two K20 sharing vertex 19: a cut vertex rules out a cycle.
    let mut gb = toughham::GraphBuilder::new(39).unwrap();
    gb.add_clique((0..20).collect()).unwrap();
    gb.add_clique((19..39).collect()).unwrap();
    let g = gb.build();
    assert!(!found(&hamiltonian_cycle(&g), &g));
    let g = named::complete_bipartite(40, 41);
    assert!(!found(&hamiltonian_cycle(&g), &g));
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u8..3, n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] != 0 {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn dp_and_backtracking_agree(g in arb_graph(12)) {
        let dp = found(&hamiltonian_cycle_dp(&g), &g);
        let bt = found(&hamiltonian_cycle_backtrack(&g, Duration::from_secs(10)), &g);
        prop_assert_eq!(dp, bt);
    }
}
