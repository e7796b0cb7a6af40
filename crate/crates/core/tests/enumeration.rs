use std::collections::BTreeSet;

use itertools::Itertools;
use toughham::generators::{canonical_code, enumerate_small, EnumFilter};
use toughham::pattern::is_p2p3_free;
use toughham::Graph;

/// Brute-force canonical form: the smallest adjacency string over all
/// relabellings.
fn brute_code(g: &Graph) -> Vec<bool> {
    let n = g.n();
    (0..n)
        .permutations(n)
        .map(|p| {
            (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| g.has_edge(p[i], p[j]))
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

/// Connected graphs on `n` vertices, deduplicated by the brute-force form.
fn brute_connected(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let mut seen = BTreeSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if g.is_connected() {
            seen.insert(brute_code(&g));
        }
    }
    seen.len()
}

#[test]
fn counts_match_brute_force_up_to_five() {
    for n in 1..=5 {
        assert_eq!(enumerate_small(n, EnumFilter::None).unwrap().len(), brute_connected(n), "n={n}");
    }
}

#[test]
fn known_connected_counts() {
    let expected = [1, 1, 2, 6, 21, 112, 853, 11117];
    for (n, &want) in (1..=8).zip(&expected) {
        assert_eq!(enumerate_small(n, EnumFilter::None).unwrap().len(), want, "n={n}");
    }
}

#[test]
fn outputs_are_pairwise_non_isomorphic() {
    let graphs = enumerate_small(6, EnumFilter::None).unwrap();
    let forms: BTreeSet<_> = graphs.iter().map(brute_code).collect();
    assert_eq!(forms.len(), graphs.len());
    assert!(graphs.iter().all(|g| canonical_code(g) == canonical_code(&g.permute(&[5, 3, 1, 0, 2, 4]).unwrap())));
}

#[test]
fn free_filter_matches_post_filtering() {
    for n in 1..=7 {
        let all = enumerate_small(n, EnumFilter::None).unwrap();
        let free = enumerate_small(n, EnumFilter::P2p3Free).unwrap();
        let post: Vec<_> = all.into_iter().filter(is_p2p3_free).collect();
        assert_eq!(free, post, "n={n}");
    }
}

#[test]
fn free_counts_regression() {
    let counts: Vec<usize> = (1..=8)
        .map(|n| enumerate_small(n, EnumFilter::P2p3Free).unwrap().len())
        .collect();
    println!("connected (P2 ∪ P3)-free counts n=1..8: {counts:?}");
    assert_eq!(counts, [1, 1, 2, 6, 21, 102, 605, 5146]);
}
