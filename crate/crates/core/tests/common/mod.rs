//! Brute-force oracles that only use `n()` and `has_edge`.
#![allow(dead_code)]

use itertools::Itertools;
use toughham::toughness::Toughness;
use toughham::{Graph, Rational};

pub fn all_labelled(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

/// Components of the graph induced on `alive`, by repeated relaxation.
pub fn brute_components(g: &Graph, alive: &[bool]) -> usize {
    let n = g.n();
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for u in 0..n {
            for v in 0..n {
                if alive[u] && alive[v] && g.has_edge(u, v) && label[v] < label[u] {
                    label[u] = label[v];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..n).filter(|&v| alive[v] && label[v] == v).count()
}

pub fn brute_connected(g: &Graph) -> bool {
    brute_components(g, &vec![true; g.n()]) == 1
}

/// Induced `P₂ ∪ P₃` on exactly five vertices: one edge component and one
/// induced path on three.
pub fn brute_has_p2p3(g: &Graph) -> bool {
    (0..g.n()).combinations(5).any(|vs| {
        vs.iter().permutations(5).any(|p| {
            let e = |i: usize, j: usize| g.has_edge(*p[i], *p[j]);
            e(0, 1)
                && e(2, 3)
                && e(3, 4)
                && !e(2, 4)
                && (0..2).all(|i| (2..5).all(|j| !e(i, j)))
        })
    })
}

pub fn brute_toughness(g: &Graph) -> Toughness {
    let n = g.n();
    if !brute_connected(g) {
        return Toughness::Finite(Rational::ZERO);
    }
    let mut best: Option<Rational> = None;
    for mask in 0u32..1 << n {
        let alive: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 0).collect();
        let c = brute_components(g, &alive);
        if c >= 2 {
            let r = Rational::new(mask.count_ones() as i64, c as i64);
            best = Some(best.map_or(r, |b| b.min(r)));
        }
    }
    best.map_or(Toughness::Infinite, Toughness::Finite)
}

pub fn brute_hamiltonian(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    (1..n).permutations(n - 1).any(|p| {
        g.has_edge(0, p[0])
            && g.has_edge(p[n - 2], 0)
            && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
    })
}
