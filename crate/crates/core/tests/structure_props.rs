use proptest::prelude::*;
use toughham::generators::{enumerate_small, EnumFilter};
use toughham::structure::{
    check_lemma3, decompose_cutset, star_matching, sweep_lemmas, StarMatchingResult,
};
use toughham::{Error, Graph, VertexSet};

/// Hall's condition for stars: every subset of centres sees at least as
/// many `y_side` vertices as it demands.
fn hall_holds(g: &Graph, x: VertexSet, y: VertexSet, demand: &[usize]) -> bool {
    let xs = x.to_vec();
    (1u32..1 << xs.len()).all(|mask| {
        let sub: VertexSet = xs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
        let need: usize = sub.iter().map(|v| demand[v]).sum();
        (g.neighborhood_of(sub) & y).len() >= need
    })
}

fn arb_bipartite() -> impl Strategy<Value = (Graph, VertexSet, VertexSet, Vec<usize>)> {
    (1usize..=5, 1usize..=9).prop_flat_map(|(a, b)| {
        (
            proptest::collection::vec(any::<bool>(), a * b),
            proptest::collection::vec(1usize..=3, a),
        )
            .prop_map(move |(bits, dem)| {
                let n = a + b;
                let edges: Vec<_> = (0..a)
                    .flat_map(|i| (0..b).map(move |j| (i, a + j)))
                    .zip(&bits)
                    .filter(|(_, &on)| on)
                    .map(|(e, _)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                let mut demand = vec![0; n];
                demand[..a].copy_from_slice(&dem);
                (g, (0..a).collect(), (a..n).collect(), demand)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn star_matching_exists_iff_hall(input in arb_bipartite()) {
        let (g, x, y, demand) = input;
        let res = star_matching(&g, x, y, |v| demand[v]).unwrap();
        let hall = hall_holds(&g, x, y, &demand);
        match res {
            StarMatchingResult::Matching(m) => {
                prop_assert!(hall);
                prop_assert!(m.verify(&g, x, y, |v| demand[v]));
            }
            StarMatchingResult::Deficient { set, neighbors, demand: need } => {
                prop_assert!(!hall);
                prop_assert!(set.is_subset(x) && !set.is_empty());
                prop_assert_eq!(neighbors, g.neighborhood_of(set) & y);
                prop_assert_eq!(need, set.iter().map(|v| demand[v]).sum::<usize>());
                prop_assert!(neighbors.len() < need);
            }
        }
    }
}

#[test]
fn lemma_sweep_up_to_seven_is_clean() {
    for n in 1..=7 {
        for g in enumerate_small(n, EnumFilter::P2p3Free).unwrap() {
            let t = sweep_lemmas(&g).unwrap();
            assert_eq!(t.violations(), 0, "{g:?}");
        }
    }
}

#[test]
fn checkers_refuse_graphs_with_the_pattern() {
    let c7 = toughham::graph::named::cycle(7);
    let s: VertexSet = [0, 3].into_iter().collect();
    assert!(matches!(check_lemma3(&c7, s), Err(Error::NotFree(_))));
}

/// Every cutset of every free graph on up to eight vertices either
/// decomposes with consistent invariants or is refused with a reason.
#[test]
fn decomposition_invariants_on_small_free_graphs() {
    let mut decomposed = 0;
    for n in 5..=8 {
        for g in enumerate_small(n, EnumFilter::P2p3Free).unwrap() {
            for bits in 1u128..(1 << n) - 1 {
                let s = VertexSet::from_bits(bits);
                match decompose_cutset(&g, s) {
                    Ok(d) => {
                        decomposed += 1;
                        d.check_invariants(&g).unwrap_or_else(|e| panic!("{g:?} {s}: {e}"));
                        assert!(d.q_disjoint());
                    }
                    Err(Error::Precondition(_)) | Err(Error::ToughnessRefutation { .. }) => {}
                    Err(e) => panic!("unexpected {e}"),
                }
            }
        }
    }
    assert!(decomposed > 0);
}
