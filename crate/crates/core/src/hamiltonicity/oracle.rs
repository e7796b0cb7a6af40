//! Exact Hamiltonian cycle search: subset dynamic programming for small
//! graphs, pruned backtracking beyond.

use std::time::{Duration, Instant};

use super::cycle::OrientedCycle;
use crate::graph::{Graph, VertexSet};

/// Largest `n` handled by the subset dynamic program.
pub const DP_LIMIT: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HamiltonOptions {
    pub dp_limit: usize,
    /// Budget for the backtracking search.
    pub timeout: Duration,
}

impl Default for HamiltonOptions {
    fn default() -> Self {
        HamiltonOptions {
            dp_limit: DP_LIMIT,
            timeout: Duration::from_secs(10),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HamiltonResult {
    Found(OrientedCycle),
    NoCycle,
    Timeout,
}

impl HamiltonResult {
    pub fn cycle(&self) -> Option<&OrientedCycle> {
        match self {
            HamiltonResult::Found(c) => Some(c),
            _ => None,
        }
    }

    pub fn into_cycle(self) -> Option<OrientedCycle> {
        match self {
            HamiltonResult::Found(c) => Some(c),
            _ => None,
        }
    }
}

pub fn hamiltonian_cycle(g: &Graph) -> HamiltonResult {
    hamiltonian_cycle_with(g, &HamiltonOptions::default())
}

pub fn hamiltonian_cycle_with(g: &Graph, opts: &HamiltonOptions) -> HamiltonResult {
    if let Some(r) = quick_reject(g) {
        return r;
    }
    if g.n() <= opts.dp_limit.min(DP_LIMIT) {
        hamiltonian_cycle_dp(g)
    } else {
        hamiltonian_cycle_backtrack(g, opts.timeout)
    }
}

/// Cheap necessary conditions: 2-connectivity and, for bipartite graphs,
/// equal sides.
fn quick_reject(g: &Graph) -> Option<HamiltonResult> {
    let all = g.vertices();
    let reject = g.n() < 3
        || g.min_degree().unwrap_or(0) < 2
        || !g.is_connected()
        || (0..g.n()).any(|v| g.count_components(all.without(v)) > 1)
        || bipartition(g).is_some_and(|side| 2 * side.len() != g.n());
    reject.then_some(HamiltonResult::NoCycle)
}

/// One colour class of a proper 2-colouring of a connected graph.
fn bipartition(g: &Graph) -> Option<VertexSet> {
    let mut side = VertexSet::singleton(0);
    let mut seen = VertexSet::singleton(0);
    let mut frontier = VertexSet::singleton(0);
    let mut colour = true;
    while !frontier.is_empty() {
        let next = g.neighborhood_of(frontier) - seen;
        colour = !colour;
        if colour {
            side |= next;
        }
        seen |= next;
        frontier = next;
    }
    let other = g.vertices() - side;
    let independent = g.is_independent(side) && g.is_independent(other);
    independent.then_some(side)
}

/// Held–Karp style reachability over subsets of `1..n`, paths start at 0.
///
/// `ends[mask]` holds the vertices `v ∈ mask` such that some path from 0
/// visits exactly `mask ∪ {0}` and stops at `v`. Bit `i` stands for vertex `i + 1`.
pub fn hamiltonian_cycle_dp(g: &Graph) -> HamiltonResult {
    if let Some(r) = quick_reject(g) {
        return r;
    }
    let n = g.n();
    assert!(n <= DP_LIMIT, "dynamic program limited to {DP_LIMIT} vertices");
    let m = n - 1;
    // Neighbour masks in the shifted labelling.
    let adj: Vec<u32> = (1..n).map(|v| (g.neighbors(v).bits() >> 1) as u32).collect();
    let start_adj = (g.neighbors(0).bits() >> 1) as u32;

    let full = (1u32 << m) - 1;
    let mut ends = vec![0u32; 1usize << m];
    for mask in 1..=full {
        let mut acc = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros();
            rest &= rest - 1;
            let prev = mask & !(1 << i);
            let reachable = if prev == 0 {
                start_adj >> i & 1 == 1
            } else {
                ends[prev as usize] & adj[i as usize] != 0
            };
            if reachable {
                acc |= 1 << i;
            }
        }
        ends[mask as usize] = acc;
    }

    let closing = ends[full as usize] & start_adj;
    if closing == 0 {
        return HamiltonResult::NoCycle;
    }
    // Walk back from the least closing end.
    let mut seq = Vec::with_capacity(n);
    let mut mask = full;
    let mut cur = closing.trailing_zeros();
    loop {
        seq.push(cur as usize + 1);
        let prev = mask & !(1 << cur);
        if prev == 0 {
            break;
        }
        let options = ends[prev as usize] & adj[cur as usize];
        mask = prev;
        cur = options.trailing_zeros();
    }
    seq.push(0);
    seq.reverse();
    HamiltonResult::Found(OrientedCycle::from_vec(n, seq))
}

/// Depth-first path extension from a minimum-degree vertex.
///
/// Candidates are tried fewest-unvisited-neighbours first. A branch is cut
/// when an unvisited vertex has fewer than two usable neighbours, when two
/// unvisited vertices are forced to follow the current end, or when the
/// unvisited part plus the end stops being connected.
pub fn hamiltonian_cycle_backtrack(g: &Graph, timeout: Duration) -> HamiltonResult {
    if let Some(r) = quick_reject(g) {
        return r;
    }
    let n = g.n();
    let start = (0..n).min_by_key(|&v| (g.degree(v), v)).expect("n >= 3");
    let mut search = Backtrack {
        g,
        start,
        path: vec![start],
        deadline: Instant::now() + timeout,
        steps: 0,
        timed_out: false,
    };
    let unvisited = g.vertices().without(start);
    if search.extend(unvisited) {
        HamiltonResult::Found(OrientedCycle::from_vec(n, search.path))
    } else if search.timed_out {
        HamiltonResult::Timeout
    } else {
        HamiltonResult::NoCycle
    }
}

struct Backtrack<'a> {
    g: &'a Graph,
    start: usize,
    path: Vec<usize>,
    deadline: Instant,
    steps: u64,
    timed_out: bool,
}

impl Backtrack<'_> {
    fn extend(&mut self, unvisited: VertexSet) -> bool {
        let g = self.g;
        let end = *self.path.last().expect("path starts non-empty");
        if unvisited.is_empty() {
            return g.has_edge(end, self.start);
        }
        self.steps += 1;
        if self.steps % 1024 == 0 && Instant::now() > self.deadline {
            self.timed_out = true;
        }
        if self.timed_out {
            return false;
        }

        let usable = unvisited.with(end).with(self.start);
        let mut forced = VertexSet::EMPTY;
        for v in unvisited.iter() {
            let avail = g.neighbors(v) & usable;
            if avail.len() < 2 {
                return false;
            }
            if avail.len() == 2 && avail.contains(end) && end != self.start {
                forced.insert(v);
            }
        }
        if forced.len() > 1 {
            return false;
        }
        if (g.neighbors(self.start) & unvisited).is_empty() {
            return false;
        }
        let region = unvisited.with(end);
        if g.reach(end, region) != region {
            return false;
        }

        let mut candidates: Vec<usize> = if forced.is_empty() {
            (g.neighbors(end) & unvisited).to_vec()
        } else {
            forced.to_vec()
        };
        candidates.sort_by_key(|&w| ((g.neighbors(w) & unvisited).len(), w));
        for w in candidates {
            self.path.push(w);
            if self.extend(unvisited.without(w)) {
                return true;
            }
            self.path.pop();
            if self.timed_out {
                return false;
            }
        }
        false
    }
}
