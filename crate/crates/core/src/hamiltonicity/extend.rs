//! Absorbing a vertex or a path into a cycle by splicing or rotation.

use super::cycle::{OrientedCycle, PathSeg};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// How the cycle was rebuilt.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// The inserted sequence went between `after` and `after⁺`.
    Splice { after: usize },
    /// `u⁺ →C w · inserted · u ←C w⁺`, closed by the edge `w⁺u⁺`.
    Rotate { u: usize, w: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extended {
    pub cycle: OrientedCycle,
    pub mv: Move,
    /// The inserted vertices in the order they now appear after the anchor.
    pub inserted: Vec<usize>,
}

/// Why no extension exists; each variant carries the set that a toughness
/// argument would delete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtensionFailure {
    /// Successors of `N(x) ∩ V(C)`; an independent set.
    Vertex { successors: VertexSet },
    /// Successor sets of the two path ends, with no edge between them.
    Path { from_first: VertexSet, from_last: VertexSet },
}

impl ExtensionFailure {
    /// The independent set `W` (for a vertex) or `W_x ∪ W_z` restricted to
    /// the pairs the argument uses.
    pub fn witness_set(&self) -> VertexSet {
        match self {
            ExtensionFailure::Vertex { successors } => *successors,
            ExtensionFailure::Path { from_first, from_last } => *from_first | *from_last,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Extended(Extended),
    Failed(ExtensionFailure),
}

impl Extension {
    pub fn extended(self) -> Option<Extended> {
        match self {
            Extension::Extended(e) => Some(e),
            Extension::Failed(_) => None,
        }
    }
}

/// Builds a cycle on `V(C) ∪ {x}`.
///
/// Splices `x` into the lexicographically least cycle edge `uw` with both
/// ends adjacent to `x`; otherwise rotates through the least pair `(u, w)` of
/// neighbours whose successors are adjacent. If neither exists, the
/// successors of the neighbours form an independent set, which is returned.
pub fn extend_with_vertex(g: &Graph, c: &OrientedCycle, x: usize) -> Result<Extension> {
    g.check_vertex(x)?;
    if c.contains(x) {
        return Err(Error::invalid(format!("vertex {x} already on the cycle")));
    }
    let on_cycle = g.neighbors(x) & c.vertices();

    let splice = c
        .arcs()
        .filter(|&(a, b)| on_cycle.contains(a) && on_cycle.contains(b))
        .min_by_key(|&(a, b)| (a.min(b), a.max(b)));
    if let Some((a, _)) = splice {
        return Ok(Extension::Extended(Extended {
            cycle: c.spliced(a, &[x]),
            mv: Move::Splice { after: a },
            inserted: vec![x],
        }));
    }

    for u in on_cycle.iter() {
        let up = c.succ(u);
        for w in on_cycle.iter().filter(|&w| w != u) {
            if g.has_edge(up, c.succ(w)) {
                return Ok(Extension::Extended(Extended {
                    cycle: c.rotated(u, w, &[x]),
                    mv: Move::Rotate { u, w },
                    inserted: vec![x],
                }));
            }
        }
    }

    let successors = on_cycle.iter().map(|u| c.succ(u)).collect();
    Ok(Extension::Failed(ExtensionFailure::Vertex { successors }))
}

/// Builds a cycle on `V(C) ∪ V(P)` for a path `P` from `x` to `z` disjoint from `C`.
///
/// First tries a splice through a cycle edge `uw` with `x ~ u`, `z ~ w`
/// (either orientation, least edge first); then a rotation
/// `u⁺ →C w z P x u ←C w⁺ u⁺` with `u ∈ N(x)`, `w ∈ N(z)`, `u⁺ ~ w⁺`.
pub fn extend_with_path(g: &Graph, c: &OrientedCycle, p: &PathSeg) -> Result<Extension> {
    for &v in p.sequence() {
        g.check_vertex(v)?;
    }
    if !p.vertices().is_disjoint(c.vertices()) {
        return Err(Error::invalid("path shares vertices with the cycle"));
    }
    let (x, z) = (p.first(), p.last());
    let nx = g.neighbors(x) & c.vertices();
    let nz = g.neighbors(z) & c.vertices();

    let mut best: Option<((usize, usize), usize, bool)> = None;
    for (a, b) in c.arcs() {
        let key = (a.min(b), a.max(b));
        if best.is_some_and(|(k, _, _)| k <= key) {
            continue;
        }
        if nx.contains(a) && nz.contains(b) {
            best = Some((key, a, true));
        } else if nz.contains(a) && nx.contains(b) {
            best = Some((key, a, false));
        }
    }
    if let Some((_, a, forward)) = best {
        let inserted = if forward {
            p.sequence().to_vec()
        } else {
            p.reversed()
        };
        return Ok(Extension::Extended(Extended {
            cycle: c.spliced(a, &inserted),
            mv: Move::Splice { after: a },
            inserted,
        }));
    }

    for u in nx.iter() {
        let up = c.succ(u);
        for w in nz.iter().filter(|&w| w != u) {
            if g.has_edge(up, c.succ(w)) {
                let inserted = p.reversed();
                return Ok(Extension::Extended(Extended {
                    cycle: c.rotated(u, w, &inserted),
                    mv: Move::Rotate { u, w },
                    inserted,
                }));
            }
        }
    }

    Ok(Extension::Failed(ExtensionFailure::Path {
        from_first: nx.iter().map(|u| c.succ(u)).collect(),
        from_last: nz.iter().map(|u| c.succ(u)).collect(),
    }))
}
