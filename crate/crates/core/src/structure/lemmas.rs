//! Checkers for the structural facts about clique components that
//! (P₂ ∪ P₃)-freeness forces around a cutset.
//!
//! Each checker validates its preconditions, then tests the statement
//! directly. A violation on a free graph can only be an implementation bug,
//! so the exhaustive sweeps expect none.

use crate::error::{Error, Result};
use crate::graph::{ComponentPartition, Graph, VertexSet};
use crate::pattern::{edge_in, find_p2p3, induced_p3_in, PatternWitness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaVerdict<V> {
    Pass,
    Violation(V),
}

impl<V> LemmaVerdict<V> {
    pub fn is_pass(&self) -> bool {
        matches!(self, LemmaVerdict::Pass)
    }
}

/// A non-clique component next to another nontrivial component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueComponentViolation {
    pub non_clique: VertexSet,
    pub other: VertexSet,
    /// Induced P₃ from the first component plus an edge from the second.
    pub witness: PatternWitness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SingleComponentViolation {
    /// The vertex of the component `x` misses.
    pub missed: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectionPart {
    /// `x` touches every nontrivial clique component.
    TouchesAll,
    /// `x` seeing three components sees all but at most one vertex of each.
    NearlyComplete,
    /// Two nontrivial clique components: near-complete to both or complete to one.
    EitherOr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionViolation {
    pub part: ConnectionPart,
    pub x: usize,
    pub components: Vec<VertexSet>,
}

fn require_free(g: &Graph) -> Result<()> {
    match find_p2p3(g) {
        Some(w) => Err(Error::NotFree(w)),
        None => Ok(()),
    }
}

fn cutset_components(g: &Graph, s: VertexSet) -> Result<ComponentPartition> {
    let parts = g.components(g.vertices() - s)?;
    if parts.count() < 2 {
        return Err(Error::precondition(format!(
            "{s} is not a cutset: G - S has {} component(s)",
            parts.count()
        )));
    }
    Ok(parts)
}

/// If some component of `G − S` is not a clique, every other component is
/// trivial; equivalently, two nontrivial components force all components to
/// be cliques.
pub fn check_lemma3(g: &Graph, s: VertexSet) -> Result<LemmaVerdict<CliqueComponentViolation>> {
    let parts = cutset_components(g, s)?;
    require_free(g)?;
    Ok(clique_components_verdict(g, &parts))
}

pub(crate) fn clique_components_verdict(
    g: &Graph,
    parts: &ComponentPartition,
) -> LemmaVerdict<CliqueComponentViolation> {
    for a in parts.iter().filter(|c| !c.clique) {
        for b in parts.iter().filter(|c| c.vertices != a.vertices && !c.is_trivial()) {
            let p3 = induced_p3_in(g, a.vertices).expect("connected non-clique has an induced P3");
            let (u, v) = edge_in(g, b.vertices).expect("nontrivial component has an edge");
            return LemmaVerdict::Violation(CliqueComponentViolation {
                non_clique: a.vertices,
                other: b.vertices,
                witness: PatternWitness {
                    pattern: "P2+P3".into(),
                    vertices: vec![u, v, p3[0], p3[1], p3[2]],
                },
            });
        }
    }
    LemmaVerdict::Pass
}

/// A vertex `x ∈ S` seeing exactly one component `D` of `G − S`, while some
/// nontrivial component avoids it, is adjacent to all of `D`.
pub fn check_lemma4(
    g: &Graph,
    s: VertexSet,
    x: usize,
) -> Result<LemmaVerdict<SingleComponentViolation>> {
    g.check_vertex(x)?;
    if !s.contains(x) {
        return Err(Error::precondition(format!("{x} is not in S")));
    }
    let parts = cutset_components(g, s)?;
    let touched = parts.touched_by(g, x);
    if touched.len() != 1 {
        return Err(Error::precondition(format!(
            "{x} is adjacent to {} components of G - S, not exactly one",
            touched.len()
        )));
    }
    let d = parts.components[touched[0]].vertices;
    let avoided = parts
        .iter()
        .any(|c| !c.is_trivial() && c.vertices != d && g.neighbors(x).is_disjoint(c.vertices));
    if !avoided {
        return Err(Error::precondition(format!(
            "no nontrivial component of G - S avoids {x}"
        )));
    }
    require_free(g)?;
    Ok(match (d - g.neighbors(x)).first() {
        Some(missed) => LemmaVerdict::Violation(SingleComponentViolation { missed }),
        None => LemmaVerdict::Pass,
    })
}

/// For `S` whose every vertex sees at least two components of `G − S`:
/// every `x ∈ S` touches each nontrivial clique component; if it sees three
/// or more components it misses at most one vertex of each; and for two
/// nontrivial clique components it either misses at most one vertex of
/// each or is complete to one of them.
pub fn check_lemma5(g: &Graph, s: VertexSet) -> Result<LemmaVerdict<ConnectionViolation>> {
    if !g.is_connected() {
        return Err(Error::precondition("graph is not connected"));
    }
    let parts = cutset_components(g, s)?;
    for x in s.iter() {
        let seen = parts.touched_by(g, x).len();
        if seen < 2 {
            return Err(Error::precondition(format!(
                "{x} is adjacent to {seen} component(s) of G - S, fewer than two"
            )));
        }
    }
    require_free(g)?;
    Ok(connection_verdict(g, s, &parts))
}

pub(crate) fn connection_verdict(
    g: &Graph,
    s: VertexSet,
    parts: &ComponentPartition,
) -> LemmaVerdict<ConnectionViolation> {
    let cliques: Vec<VertexSet> = parts
        .iter()
        .filter(|c| c.clique && !c.is_trivial())
        .map(|c| c.vertices)
        .collect();
    for x in s.iter() {
        let nx = g.neighbors(x);
        let near = |d: VertexSet| (d & nx).len() + 1 >= d.len();
        for &d in &cliques {
            if nx.is_disjoint(d) {
                return LemmaVerdict::Violation(ConnectionViolation {
                    part: ConnectionPart::TouchesAll,
                    x,
                    components: vec![d],
                });
            }
        }
        if parts.touched_by(g, x).len() >= 3 {
            if let Some(&d) = cliques.iter().find(|&&d| !near(d)) {
                return LemmaVerdict::Violation(ConnectionViolation {
                    part: ConnectionPart::NearlyComplete,
                    x,
                    components: vec![d],
                });
            }
        }
        for (i, &d1) in cliques.iter().enumerate() {
            for &d2 in &cliques[i + 1..] {
                let ok = (near(d1) && near(d2)) || d1.is_subset(nx) || d2.is_subset(nx);
                if !ok {
                    return LemmaVerdict::Violation(ConnectionViolation {
                        part: ConnectionPart::EitherOr,
                        x,
                        components: vec![d1, d2],
                    });
                }
            }
        }
    }
    LemmaVerdict::Pass
}
