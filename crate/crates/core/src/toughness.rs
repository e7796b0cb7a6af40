//! Exact toughness by branch and bound over cutsets, plus a randomized
//! falsifier for graphs beyond the exact range.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::rational::Rational;

/// Default largest `n` the exact solvers accept without `force`.
pub const DEFAULT_EXACT_LIMIT: usize = 20;

/// `τ(G)`: a rational, or infinity for complete graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Toughness {
    Finite(Rational),
    Infinite,
}

impl Toughness {
    pub fn finite(self) -> Option<Rational> {
        match self {
            Toughness::Finite(r) => Some(r),
            Toughness::Infinite => None,
        }
    }

    pub fn at_least(self, t: Rational) -> bool {
        match self {
            Toughness::Finite(r) => r >= t,
            Toughness::Infinite => true,
        }
    }
}

impl PartialOrd for Toughness {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Toughness {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Toughness::Finite(a), Toughness::Finite(b)) => a.cmp(b),
            (Toughness::Finite(_), Toughness::Infinite) => Ordering::Less,
            (Toughness::Infinite, Toughness::Finite(_)) => Ordering::Greater,
            (Toughness::Infinite, Toughness::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Toughness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Toughness::Finite(r) => write!(f, "{r}"),
            Toughness::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToughnessCertificate {
    pub tau: Toughness,
    /// Minimizing cutset; `None` for complete graphs.
    pub witness: Option<VertexSet>,
    /// `c(G − witness)`, or 1 for complete graphs.
    pub components: usize,
    /// Set when the input was disconnected and `τ = 0` by convention.
    pub disconnected: bool,
}

impl ToughnessCertificate {
    /// Recomputes `|witness| / c(G − witness)` from scratch.
    pub fn verify(&self, g: &Graph) -> bool {
        match (self.tau, self.witness) {
            (Toughness::Infinite, None) => g.is_complete(),
            (Toughness::Finite(t), Some(s)) => {
                let c = g.count_components(g.vertices() - s);
                c >= 2 && c == self.components && t.cmp_ratio(s.len(), c) == Ordering::Equal
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    pub max_n: usize,
    /// Lift the `max_n` guard.
    pub force: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            max_n: DEFAULT_EXACT_LIMIT,
            force: false,
        }
    }
}

impl ExactOptions {
    fn check(&self, g: &Graph) -> Result<()> {
        if g.n() > self.max_n && !self.force {
            return Err(Error::Capacity {
                n: g.n(),
                limit: self.max_n,
                hint: "; use the randomized falsifier or force the exact search",
            });
        }
        Ok(())
    }
}

pub fn toughness(g: &Graph) -> Result<ToughnessCertificate> {
    toughness_with(g, &ExactOptions::default())
}

/// Exact `τ(G)` with a canonical witness: among minimizing cutsets, the
/// smallest, and among those the lexicographically least.
pub fn toughness_with(g: &Graph, opts: &ExactOptions) -> Result<ToughnessCertificate> {
    opts.check(g)?;
    if g.is_complete() {
        return Ok(ToughnessCertificate {
            tau: Toughness::Infinite,
            witness: None,
            components: 1,
            disconnected: false,
        });
    }
    let all = g.vertices();
    let c0 = g.count_components(all);
    if c0 >= 2 {
        return Ok(ToughnessCertificate {
            tau: Toughness::Finite(Rational::ZERO),
            witness: Some(VertexSet::EMPTY),
            components: c0,
            disconnected: true,
        });
    }

    let mut search = Search::new(g, Goal::Minimize);
    for s in seed_cutsets(g) {
        search.offer(s);
    }
    search.run();
    let (best_s, best_c) = search.best.expect("non-complete graph has a cutset");
    let tau = Rational::new(best_s.len() as i64, best_c as i64);
    let (witness, components) = canonical_witness(g, tau);
    Ok(ToughnessCertificate {
        tau: Toughness::Finite(tau),
        witness: Some(witness),
        components,
        disconnected: false,
    })
}

/// Outcome of a t-toughness decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TToughVerdict {
    Tough,
    /// `|cutset| < t · components`.
    Violated { cutset: VertexSet, components: usize },
}

impl TToughVerdict {
    pub fn is_tough(&self) -> bool {
        matches!(self, TToughVerdict::Tough)
    }
}

pub fn is_t_tough(g: &Graph, t: Rational) -> Result<TToughVerdict> {
    is_t_tough_with(g, t, &ExactOptions::default())
}

pub fn is_t_tough_with(g: &Graph, t: Rational, opts: &ExactOptions) -> Result<TToughVerdict> {
    if t < Rational::ZERO {
        return Err(Error::invalid(format!("toughness threshold {t} is negative")));
    }
    opts.check(g)?;
    if g.is_complete() || t == Rational::ZERO {
        return Ok(TToughVerdict::Tough);
    }
    let c0 = g.count_components(g.vertices());
    if c0 >= 2 {
        return Ok(TToughVerdict::Violated {
            cutset: VertexSet::EMPTY,
            components: c0,
        });
    }
    let mut search = Search::new(g, Goal::Below(t));
    for s in seed_cutsets(g) {
        search.offer(s);
        if search.best.is_some() {
            break;
        }
    }
    if search.best.is_none() {
        search.run();
    }
    Ok(match search.best {
        Some((cutset, components)) => TToughVerdict::Violated { cutset, components },
        None => TToughVerdict::Tough,
    })
}

#[derive(Clone, Copy)]
enum Goal {
    Minimize,
    /// Stop at the first cutset with ratio strictly below the threshold.
    Below(Rational),
}

/// Branch and bound over in/out decisions per vertex.
///
/// With `s` decided in, `o` decided out and `u` undecided, every completion
/// has at most `c(G[o]) + |u − N(o)|` components: undecided vertices next to
/// `o` either join an existing component or are deleted.
struct Search<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    goal: Goal,
    best: Option<(VertexSet, usize)>,
    done: bool,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, goal: Goal) -> Self {
        let mut order: Vec<usize> = (0..g.n()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        Search {
            g,
            order,
            goal,
            best: None,
            done: false,
        }
    }

    /// `|s| / c` beats the current target.
    fn improves(&self, size: usize, c: usize) -> bool {
        if c < 2 {
            return false;
        }
        match (self.goal, self.best) {
            (Goal::Below(t), _) => t.cmp_ratio(size, c) == Ordering::Less,
            (Goal::Minimize, None) => true,
            (Goal::Minimize, Some((bs, bc))) => size * bc < bs.len() * c,
        }
    }

    /// Could some completion with `size` deleted vertices and at most
    /// `max_c` components still improve?
    fn promising(&self, size: usize, max_c: usize) -> bool {
        if max_c < 2 {
            return false;
        }
        self.improves(size, max_c)
    }

    fn offer(&mut self, s: VertexSet) {
        let c = self.g.count_components(self.g.vertices() - s);
        if self.improves(s.len(), c) {
            self.best = Some((s, c));
            if matches!(self.goal, Goal::Below(_)) {
                self.done = true;
            }
        }
    }

    fn run(&mut self) {
        self.branch(0, VertexSet::EMPTY, VertexSet::EMPTY);
    }

    fn branch(&mut self, depth: usize, s: VertexSet, o: VertexSet) {
        if self.done {
            return;
        }
        let g = self.g;
        let undecided: VertexSet = self.order[depth..].iter().collect();
        let free = undecided - g.neighborhood_of(o);
        let c_o = g.count_components(o);
        if !self.promising(s.len(), c_o + free.len()) {
            return;
        }
        if depth == self.order.len() {
            if self.improves(s.len(), c_o) {
                self.best = Some((s, c_o));
                if matches!(self.goal, Goal::Below(_)) {
                    self.done = true;
                }
            }
            return;
        }
        let v = self.order[depth];
        self.branch(depth + 1, s, o.with(v));
        self.branch(depth + 1, s.with(v), o);
    }
}

/// Cheap separators tried before the search: vertex neighbourhoods and
/// edge neighbourhoods.
fn seed_cutsets(g: &Graph) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = (0..g.n()).map(|v| g.neighbors(v)).collect();
    for (u, v) in g.edges() {
        out.push((g.neighbors(u) | g.neighbors(v)).without(u).without(v));
    }
    out
}

/// Smallest, then lexicographically least, `S` with `|S| / c(G−S) = tau`.
fn canonical_witness(g: &Graph, tau: Rational) -> (VertexSet, usize) {
    let p = tau.numer() as usize;
    let q = tau.denom() as usize;
    let all = g.vertices();
    let mut k = p;
    while k <= g.n() {
        let c = k * q / p;
        if c >= 2 {
            for subset in (0..g.n()).combinations(k) {
                let s: VertexSet = subset.iter().collect();
                if g.count_components(all - s) == c {
                    return (s, c);
                }
            }
        }
        k += p;
    }
    unreachable!("tau was attained by the search")
}

/// Result of the randomized falsifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FalsifierVerdict {
    /// Nothing found; this is not a proof of t-toughness.
    NoViolationFound,
    Violation { cutset: VertexSet, components: usize },
}

/// Runs `samples` seeded local searches for a cutset with `|S| < t·c(G−S)`.
///
/// Each sample starts from a vertex neighbourhood, an edge neighbourhood or
/// the complement of a random maximal independent set, then flips single
/// vertices while the ratio strictly drops. Every reported violation is
/// rechecked exactly.
pub fn toughness_lower_bound_check(
    g: &Graph,
    t: Rational,
    samples: usize,
    seed: u64,
) -> FalsifierVerdict {
    let n = g.n();
    let all = g.vertices();
    if n < 2 {
        return FalsifierVerdict::NoViolationFound;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let violates = |s: VertexSet| -> Option<usize> {
        let c = g.count_components(all - s);
        (c >= 2 && t.cmp_ratio(s.len(), c) == Ordering::Less).then_some(c)
    };

    for _ in 0..samples {
        let start = match rng.gen_range(0..3) {
            0 => g.neighbors(rng.gen_range(0..n)),
            1 if !edges.is_empty() => {
                let (u, v) = edges[rng.gen_range(0..edges.len())];
                (g.neighbors(u) | g.neighbors(v)).without(u).without(v)
            }
            _ => all - random_maximal_independent(g, &mut rng),
        };
        let mut s = start;
        if let Some(c) = violates(s) {
            return FalsifierVerdict::Violation {
                cutset: s,
                components: c,
            };
        }
        let mut order: Vec<usize> = (0..n).collect();
        let mut current = ratio_key(g, s);
        for _round in 0..4 * n {
            order.shuffle(&mut rng);
            let mut moved = false;
            for &v in &order {
                let cand = if s.contains(v) { s.without(v) } else { s.with(v) };
                let key = ratio_key(g, cand);
                if better(key, current) {
                    s = cand;
                    current = key;
                    moved = true;
                    if let Some(c) = violates(s) {
                        return FalsifierVerdict::Violation {
                            cutset: s,
                            components: c,
                        };
                    }
                }
            }
            if !moved {
                break;
            }
        }
    }
    FalsifierVerdict::NoViolationFound
}

/// `(|S|, c)` if `S` is a cutset.
fn ratio_key(g: &Graph, s: VertexSet) -> Option<(usize, usize)> {
    let c = g.count_components(g.vertices() - s);
    (c >= 2).then_some((s.len(), c))
}

fn better(a: Option<(usize, usize)>, b: Option<(usize, usize)>) -> bool {
    match (a, b) {
        (Some(_), None) => true,
        (Some((sa, ca)), Some((sb, cb))) => sa * cb < sb * ca,
        _ => false,
    }
}

fn random_maximal_independent(g: &Graph, rng: &mut impl Rng) -> VertexSet {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(rng);
    let mut set = VertexSet::EMPTY;
    let mut blocked = VertexSet::EMPTY;
    for v in order {
        if !blocked.contains(v) {
            set.insert(v);
            blocked = blocked | g.closed_neighbors(v);
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    fn tau(g: &Graph) -> Toughness {
        toughness(g).unwrap().tau
    }

    #[test]
    fn complete_is_infinite() {
        let cert = toughness(&complete(5)).unwrap();
        assert_eq!(cert.tau, Toughness::Infinite);
        assert_eq!(cert.witness, None);
        assert!(cert.verify(&complete(5)));
    }

    #[test]
    fn cycle_six() {
        let g = cycle(6);
        let cert = toughness(&g).unwrap();
        assert_eq!(cert.tau, Toughness::Finite(Rational::ONE));
        let w = cert.witness.unwrap();
        assert_eq!(w.len(), 2);
        let (a, b) = (w.first().unwrap(), w.last().unwrap());
        assert!(!g.has_edge(a, b));
        // Smallest size, then lexicographically least: {0,2}.
        assert_eq!(w, set(&[0, 2]));
        assert!(cert.verify(&g));
    }

    #[test]
    fn complete_bipartite_and_star() {
        let cert = toughness(&complete_bipartite(2, 4)).unwrap();
        assert_eq!(cert.tau, Toughness::Finite(Rational::new(1, 2)));
        assert_eq!(cert.witness, Some(set(&[0, 1])));
        let cert = toughness(&star(3)).unwrap();
        assert_eq!(cert.tau, Toughness::Finite(Rational::new(1, 3)));
        assert_eq!(cert.witness, Some(set(&[0])));
        assert_eq!(cert.components, 3);
    }

    #[test]
    fn petersen_toughness() {
        assert_eq!(tau(&petersen()), Toughness::Finite(Rational::new(4, 3)));
    }

    #[test]
    fn disconnected_convention() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let cert = toughness(&g).unwrap();
        assert!(cert.disconnected);
        assert_eq!(cert.tau, Toughness::Finite(Rational::ZERO));
        assert_eq!(cert.witness, Some(VertexSet::EMPTY));
        assert_eq!(cert.components, 2);
    }

    #[test]
    fn capacity_guard() {
        let g = cycle(21);
        assert!(matches!(toughness(&g), Err(Error::Capacity { .. })));
        let forced = toughness_with(&g, &ExactOptions { max_n: 20, force: true }).unwrap();
        assert_eq!(forced.tau, Toughness::Finite(Rational::ONE));
    }

    #[test]
    fn t_tough_decisions() {
        assert!(is_t_tough(&cycle(6), Rational::ONE).unwrap().is_tough());
        match is_t_tough(&cycle(6), Rational::new(9, 8)).unwrap() {
            TToughVerdict::Violated { cutset, components } => {
                assert_eq!(cutset.len(), 2);
                assert_eq!(components, 2);
                let g = cycle(6);
                assert_eq!(g.count_components(g.vertices() - cutset), 2);
            }
            TToughVerdict::Tough => panic!("C6 is not 9/8-tough"),
        }
        assert!(is_t_tough(&complete(4), Rational::from_int(100)).unwrap().is_tough());
        assert!(is_t_tough(&cycle(5), Rational::from_int(-1)).is_err());
    }

    #[test]
    fn falsifier_examples() {
        for seed in 0..20 {
            match toughness_lower_bound_check(&cycle(6), Rational::from_int(2), 8, seed) {
                FalsifierVerdict::Violation { cutset, components } => {
                    assert!(cutset.len() < 2 * components);
                }
                FalsifierVerdict::NoViolationFound => panic!("seed {seed} missed C6 cut"),
            }
            assert_eq!(
                toughness_lower_bound_check(&complete(5), Rational::from_int(seed as i64), 8, seed),
                FalsifierVerdict::NoViolationFound
            );
        }
        // K6 joined to two independent vertices: the clique is a cutset of ratio 3.
        let mut b = crate::graph::GraphBuilder::new(8).unwrap();
        b.add_clique(VertexSet::full(6)).unwrap();
        b.add_join(VertexSet::full(6), set(&[6, 7])).unwrap();
        let g = b.build();
        match toughness_lower_bound_check(&g, Rational::from_int(4), 8, 3) {
            FalsifierVerdict::Violation { cutset, components } => {
                assert_eq!(components, 2);
                assert!(cutset.len() < 8);
            }
            FalsifierVerdict::NoViolationFound => panic!("missed clique cutset"),
        }
    }
}
