//! Forbidden induced subgraph detection for small patterns.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{named, Graph, VertexSet};

/// Largest pattern the exhaustive search accepts.
pub const MAX_PATTERN_VERTICES: usize = 6;

/// A named pattern graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    name: String,
    graph: Graph,
}

impl Pattern {
    pub fn new(name: impl Into<String>, graph: Graph) -> Result<Self> {
        if graph.n() > MAX_PATTERN_VERTICES {
            return Err(Error::invalid(format!(
                "pattern has {} vertices; at most {MAX_PATTERN_VERTICES} supported",
                graph.n()
            )));
        }
        Ok(Pattern {
            name: name.into(),
            graph,
        })
    }

    /// `P2 ∪ P3` with the edge on `0-1` and the path `2-3-4`.
    pub fn p2_union_p3() -> Self {
        Pattern {
            name: "P2+P3".into(),
            graph: named::p2_union_p3(),
        }
    }

    pub fn two_k2() -> Self {
        Pattern {
            name: "2K2".into(),
            graph: named::two_k2(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

/// Host vertices inducing a copy of a pattern: `vertices[i]` plays pattern vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternWitness {
    pub pattern: String,
    pub vertices: Vec<usize>,
}

impl PatternWitness {
    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().collect()
    }

    /// Checks the correspondence edge by edge against `pattern`.
    pub fn verify(&self, g: &Graph, pattern: &Graph) -> bool {
        let k = pattern.n();
        if self.vertices.len() != k || self.vertex_set().len() != k {
            return false;
        }
        if self.vertices.iter().any(|&v| v >= g.n()) {
            return false;
        }
        (0..k).all(|i| {
            (i + 1..k).all(|j| {
                pattern.has_edge(i, j) == g.has_edge(self.vertices[i], self.vertices[j])
            })
        })
    }
}

impl fmt::Display for PatternWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.pattern, self.vertices.iter().join(","))
    }
}

/// Finds an induced copy of `pattern` in `g`.
///
/// Subsets are scanned in lexicographic order and, within a subset, pattern
/// bijections in lexicographic order, so the witness is deterministic.
pub fn find_induced(g: &Graph, pattern: &Pattern) -> Option<PatternWitness> {
    let p = &pattern.graph;
    let k = p.n();
    if k > g.n() {
        return None;
    }
    let mut pattern_degrees: Vec<usize> = (0..k).map(|v| p.degree(v)).collect();
    pattern_degrees.sort_unstable();
    let pattern_edges = p.edge_count();

    for subset in (0..g.n()).combinations(k) {
        let s: VertexSet = subset.iter().collect();
        let mut degrees: Vec<usize> = subset.iter().map(|&v| g.degree_into(v, s)).collect();
        if degrees.iter().sum::<usize>() != 2 * pattern_edges {
            continue;
        }
        degrees.sort_unstable();
        if degrees != pattern_degrees {
            continue;
        }
        for perm in subset.iter().copied().permutations(k) {
            let ok = (0..k).all(|i| {
                (i + 1..k).all(|j| p.has_edge(i, j) == g.has_edge(perm[i], perm[j]))
            });
            if ok {
                return Some(PatternWitness {
                    pattern: pattern.name.clone(),
                    vertices: perm,
                });
            }
        }
    }
    None
}

/// Looks for an induced `P2 ∪ P3`: for each edge `uv`, an induced `P3`
/// among the vertices outside `N[u] ∪ N[v]`.
pub fn find_p2p3(g: &Graph) -> Option<PatternWitness> {
    for (u, v) in g.edges() {
        let rest = g.vertices() - g.closed_neighbors(u) - g.closed_neighbors(v);
        if rest.len() < 3 {
            continue;
        }
        for mid in rest.iter() {
            let around = g.neighbors(mid) & rest;
            for a in around.iter() {
                let far = around - g.closed_neighbors(a);
                if let Some(c) = far.first() {
                    return Some(PatternWitness {
                        pattern: Pattern::p2_union_p3().name,
                        vertices: vec![u, v, a, mid, c],
                    });
                }
            }
        }
    }
    None
}

pub fn is_p2p3_free(g: &Graph) -> bool {
    find_p2p3(g).is_none()
}

/// Looks for two edges with no edge between them.
pub fn find_2k2(g: &Graph) -> Option<PatternWitness> {
    for (u, v) in g.edges() {
        let rest = g.vertices() - g.closed_neighbors(u) - g.closed_neighbors(v);
        for a in rest.iter() {
            if let Some(b) = (g.neighbors(a) & rest).iter().find(|&b| b > a) {
                return Some(PatternWitness {
                    pattern: Pattern::two_k2().name,
                    vertices: vec![u, v, a, b],
                });
            }
        }
    }
    None
}

pub fn is_2k2_free(g: &Graph) -> bool {
    find_2k2(g).is_none()
}

/// An induced `P3` inside `G[s]`, as `(end, middle, end)`.
pub(crate) fn induced_p3_in(g: &Graph, s: VertexSet) -> Option<[usize; 3]> {
    for mid in s.iter() {
        let around = g.neighbors(mid) & s;
        for a in around.iter() {
            if let Some(c) = (around - g.closed_neighbors(a)).first() {
                return Some([a, mid, c]);
            }
        }
    }
    None
}

/// Some edge inside `G[s]`.
pub(crate) fn edge_in(g: &Graph, s: VertexSet) -> Option<(usize, usize)> {
    s.iter()
        .find_map(|u| (g.neighbors(u) & s).first().map(|v| (u, v)))
}
