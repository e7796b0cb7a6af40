use std::fmt;

use itertools::Itertools;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

const ABSENT: usize = usize::MAX;

/// A cycle with a fixed orientation, stored as its vertex sequence.
#[derive(Clone, PartialEq, Eq)]
pub struct OrientedCycle {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl OrientedCycle {
    /// Checks that `seq` is a cycle of `g` (closing edge included).
    pub fn new(g: &Graph, seq: Vec<usize>) -> Result<Self> {
        check_walk(g, &seq, true)?;
        if seq.len() < 3 {
            return Err(Error::invalid(format!(
                "a cycle needs at least 3 vertices, got {}",
                seq.len()
            )));
        }
        Ok(Self::from_vec(g.n(), seq))
    }

    pub(crate) fn from_vec(n: usize, seq: Vec<usize>) -> Self {
        let mut pos = vec![ABSENT; n];
        for (i, &v) in seq.iter().enumerate() {
            pos[v] = i;
        }
        OrientedCycle { seq, pos }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    pub fn vertices(&self) -> VertexSet {
        self.seq.iter().collect()
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < self.pos.len() && self.pos[v] != ABSENT
    }

    /// `v⁺`. Panics if `v` is not on the cycle.
    #[inline]
    pub fn succ(&self, v: usize) -> usize {
        let i = self.pos[v];
        self.seq[(i + 1) % self.seq.len()]
    }

    /// `v⁻`. Panics if `v` is not on the cycle.
    #[inline]
    pub fn pred(&self, v: usize) -> usize {
        let i = self.pos[v];
        self.seq[(i + self.seq.len() - 1) % self.seq.len()]
    }

    /// Vertices from `u` to `v` following the orientation, both included.
    pub fn arc_forward(&self, u: usize, v: usize) -> Vec<usize> {
        let mut out = vec![u];
        let mut cur = u;
        while cur != v {
            cur = self.succ(cur);
            out.push(cur);
        }
        out
    }

    /// Vertices from `u` to `v` against the orientation, both included.
    pub fn arc_backward(&self, u: usize, v: usize) -> Vec<usize> {
        let mut out = vec![u];
        let mut cur = u;
        while cur != v {
            cur = self.pred(cur);
            out.push(cur);
        }
        out
    }

    /// Cycle edges as `(v, v⁺)` in sequence order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.seq.iter().map(move |&v| (v, self.succ(v)))
    }

    /// Inserts `path` between `after` and `after⁺`. Unchecked.
    pub(crate) fn spliced(&self, after: usize, path: &[usize]) -> OrientedCycle {
        let i = self.pos[after];
        let mut seq = Vec::with_capacity(self.seq.len() + path.len());
        seq.extend_from_slice(&self.seq[..=i]);
        seq.extend_from_slice(path);
        seq.extend_from_slice(&self.seq[i + 1..]);
        Self::from_vec(self.pos.len(), seq)
    }

    /// `u⁺ →C w · path · u ←C w⁺`, closing through `w⁺u⁺`. Unchecked.
    pub(crate) fn rotated(&self, u: usize, w: usize, path: &[usize]) -> OrientedCycle {
        let mut seq = self.arc_forward(self.succ(u), w);
        seq.extend_from_slice(path);
        seq.extend(self.arc_backward(u, self.succ(w)));
        Self::from_vec(self.pos.len(), seq)
    }

    /// Stable digest of the sequence (starting vertex and orientation included).
    pub fn fingerprint(&self) -> u64 {
        let mut h = Sha256::new();
        for &v in &self.seq {
            h.update([v as u8]);
        }
        let d = h.finalize();
        u64::from_be_bytes(d[..8].try_into().expect("digest has 32 bytes"))
    }
}

impl fmt::Debug for OrientedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle[{}]", self.seq.iter().join(" "))
    }
}

impl fmt::Display for OrientedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.seq.iter().join(","))
    }
}

/// A path with distinguished ends `first()` and `last()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSeg {
    seq: Vec<usize>,
}

impl PathSeg {
    pub fn new(g: &Graph, seq: Vec<usize>) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::invalid("empty path"));
        }
        check_walk(g, &seq, false)?;
        Ok(PathSeg { seq })
    }

    pub fn first(&self) -> usize {
        self.seq[0]
    }

    pub fn last(&self) -> usize {
        *self.seq.last().expect("non-empty")
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    pub fn vertices(&self) -> VertexSet {
        self.seq.iter().collect()
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn reversed(&self) -> Vec<usize> {
        self.seq.iter().rev().copied().collect()
    }
}

fn check_walk(g: &Graph, seq: &[usize], closed: bool) -> Result<()> {
    let mut seen = VertexSet::EMPTY;
    for &v in seq {
        g.check_vertex(v)?;
        if seen.contains(v) {
            return Err(Error::invalid(format!("vertex {v} repeated")));
        }
        seen.insert(v);
    }
    for (a, b) in seq.iter().tuple_windows() {
        if !g.has_edge(*a, *b) {
            return Err(Error::invalid(format!("{a}-{b} is not an edge")));
        }
    }
    if closed && seq.len() >= 2 {
        let (a, b) = (seq[seq.len() - 1], seq[0]);
        if !g.has_edge(a, b) {
            return Err(Error::invalid(format!("closing pair {a}-{b} is not an edge")));
        }
    }
    Ok(())
}

/// True iff `c` is a cycle of `g` (length at least 3, no repeats, all hops
/// are edges, position map consistent) covering `required`.
pub fn validate_cycle(g: &Graph, c: &OrientedCycle, required: VertexSet) -> bool {
    if c.pos.len() != g.n() || c.seq.len() < 3 {
        return false;
    }
    if check_walk(g, &c.seq, true).is_err() {
        return false;
    }
    let consistent = c.seq.iter().enumerate().all(|(i, &v)| c.pos[v] == i)
        && c.pos.iter().filter(|&&p| p != ABSENT).count() == c.seq.len();
    consistent && required.is_subset(c.vertices())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn successor_and_arcs() {
        let g = cycle(6);
        let c = OrientedCycle::new(&g, vec![0, 1, 2, 3, 4, 5]).unwrap();
        assert_eq!(c.succ(5), 0);
        assert_eq!(c.pred(0), 5);
        assert_eq!(c.arc_forward(4, 1), vec![4, 5, 0, 1]);
        assert_eq!(c.arc_backward(1, 4), vec![1, 0, 5, 4]);
        for v in 0..6 {
            assert_eq!(c.pred(c.succ(v)), v);
        }
    }

    #[test]
    fn rejects_non_cycles() {
        let g = cycle(6);
        assert!(OrientedCycle::new(&g, vec![0, 1, 2]).is_err());
        assert!(OrientedCycle::new(&g, vec![0, 1]).is_err());
        assert!(OrientedCycle::new(&complete(4), vec![0, 1, 1]).is_err());
    }

    #[test]
    fn validate_examples() {
        let k4 = complete(4);
        let c = OrientedCycle::new(&k4, vec![0, 1, 2, 3]).unwrap();
        assert!(validate_cycle(&k4, &c, k4.vertices()));
        // A hop along a non-edge.
        let bad = OrientedCycle::from_vec(6, vec![0, 1, 3]);
        assert!(!validate_cycle(&cycle(6), &bad, VertexSet::EMPTY));
        let tri = OrientedCycle::new(&k4, vec![0, 1, 2]).unwrap();
        assert!(!validate_cycle(&k4, &tri, k4.vertices()));
        assert!(validate_cycle(&k4, &tri, [0, 2].iter().collect()));
    }

    #[test]
    fn path_checks() {
        let g = path(4);
        assert!(PathSeg::new(&g, vec![0, 1, 2, 3]).is_ok());
        assert!(PathSeg::new(&g, vec![0, 2]).is_err());
        assert!(PathSeg::new(&g, vec![]).is_err());
        assert_eq!(PathSeg::new(&g, vec![2]).unwrap().first(), 2);
    }
}
