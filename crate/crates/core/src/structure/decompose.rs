//! Refining a cutset into the layered structure the cycle assembly works on.

use super::lemmas::{clique_components_verdict, LemmaVerdict};
use super::matching::{star_matching, StarMatching, StarMatchingResult};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::pattern::find_p2p3;

/// Every field is a vertex set of the host graph; `components` are the
/// components of `G − S₂` sorted by size, largest first, ties by least vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutsetDecomposition {
    pub s: VertexSet,
    /// `S` after moving out, one at a time, vertices that see a single component.
    pub s1: VertexSet,
    /// Vertices of `S₁` with no neighbour outside `S₁`.
    pub s0: VertexSet,
    pub s2: VertexSet,
    pub components: Vec<VertexSet>,
    /// Number of components with at least three vertices.
    pub t: usize,
    /// Vertices of `S₂` adjacent to some component other than the two largest.
    pub q1: VertexSet,
    /// Vertices of `S₂` adjacent to fewer than `(|D₁| − 1)/2` vertices of `D₁`.
    pub q2: VertexSet,
    /// Same for `D₂`.
    pub q3: VertexSet,
    /// Components the base cycle does not cover; each vertex becomes a star centre.
    pub w: VertexSet,
    /// `K_{1,2}`-stars centred at `W` with leaves in `S₂`.
    pub matching: StarMatching,
}

impl CutsetDecomposition {
    pub fn nontrivial_count(&self) -> usize {
        self.components.iter().filter(|c| c.len() >= 2).count()
    }

    /// Index (0-based) of the first component that goes into `W`.
    pub fn first_w_index(&self) -> usize {
        let standard = (self.t + 1).max(3) - 1;
        let covers_d2 = if self.nontrivial_count() >= 3 {
            self.t >= 2
        } else {
            self.t >= 2 || !self.q2.is_empty()
        };
        if self.t == 1 && !covers_d2 {
            1
        } else {
            standard
        }
    }

    /// Definitional invariants; the claims that need toughness are checked
    /// by the constructor instead.
    pub fn check_invariants(&self, g: &Graph) -> std::result::Result<(), String> {
        if self.s2 != self.s1 - self.s0 {
            return Err("S2 differs from S1 - S0".into());
        }
        let parts = g.components_unchecked(g.vertices() - self.s2);
        for x in self.s2.iter() {
            if parts.touched_by(g, x).len() < 2 {
                return Err(format!("{x} in S2 sees fewer than two components"));
            }
        }
        if !parts.all_cliques() {
            return Err("G - S2 has a non-clique component".into());
        }
        if self.components.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err("components not sorted by size".into());
        }
        let expected_w = self.components[self.first_w_index().min(self.components.len())..]
            .iter()
            .fold(VertexSet::EMPTY, |a, &c| a | c);
        if self.w != expected_w {
            return Err("W is not the union of the trailing components".into());
        }
        if !self
            .matching
            .verify(g, self.w, self.s2, |_| 2)
        {
            return Err("matching is not a K_{1,2}-matching from W into S2".into());
        }
        Ok(())
    }

    /// `Q₁`, `Q₂`, `Q₃` pairwise disjoint.
    pub fn q_disjoint(&self) -> bool {
        self.q1.is_disjoint(self.q2) && self.q1.is_disjoint(self.q3) && self.q2.is_disjoint(self.q3)
    }
}

/// Builds the decomposition of `G` around the cutset `s`.
///
/// Vertices of `S` that see exactly one component are absorbed into it, least
/// index first, until none remain. Errors if `s` is not a cutset, if `G − S`
/// lacks two nontrivial clique components, if `g` contains `P₂ ∪ P₃`, or if
/// the `K_{1,2}`-matching from `W` into `S₂` does not exist (the error then
/// carries the cutset `N(W₁) ∩ S₂` that breaks toughness).
pub fn decompose_cutset(g: &Graph, s: VertexSet) -> Result<CutsetDecomposition> {
    g.check_subset(s)?;
    let parts = g.components(g.vertices() - s)?;
    if parts.count() < 2 {
        return Err(Error::precondition(format!("{s} is not a cutset")));
    }
    let nontrivial_cliques = parts.iter().filter(|c| c.clique && !c.is_trivial()).count();
    if nontrivial_cliques < 2 {
        return Err(Error::precondition(format!(
            "G - S has {nontrivial_cliques} nontrivial clique component(s), need two"
        )));
    }
    if let Some(w) = find_p2p3(g) {
        return Err(Error::NotFree(w));
    }

    let mut s1 = s;
    loop {
        let parts = g.components_unchecked(g.vertices() - s1);
        if let LemmaVerdict::Violation(v) = clique_components_verdict(g, &parts) {
            return Err(Error::NotFree(v.witness));
        }
        let mover = s1.iter().find(|&x| parts.touched_by(g, x).len() == 1);
        match mover {
            Some(x) => s1.remove(x),
            None => break,
        }
    }

    let outside = g.vertices() - s1;
    let s0: VertexSet = s1
        .iter()
        .filter(|&x| g.neighbors(x).is_disjoint(outside))
        .collect();
    let s2 = s1 - s0;
    let parts = g.components_unchecked(g.vertices() - s2);
    if !parts.all_cliques() {
        let witness = find_p2p3(g).expect("free graphs have clique components here");
        return Err(Error::NotFree(witness));
    }

    let mut components: Vec<VertexSet> = parts.iter().map(|c| c.vertices).collect();
    components.sort_by(|a, b| b.len().cmp(&a.len()).then(a.first().cmp(&b.first())));
    let t = components.iter().filter(|c| c.len() >= 3).count();
    let d1 = components[0];
    let d2 = components[1];

    let q1: VertexSet = s2
        .iter()
        .filter(|&x| {
            components[2..]
                .iter()
                .any(|&c| !g.neighbors(x).is_disjoint(c))
        })
        .collect();
    // deg < (|D| − 1)/2  ⇔  2·deg < |D| − 1
    let below_half = |x: usize, d: VertexSet| 2 * g.degree_into(x, d) + 1 < d.len();
    let q2: VertexSet = s2.iter().filter(|&x| below_half(x, d1)).collect();
    let q3: VertexSet = s2.iter().filter(|&x| below_half(x, d2)).collect();

    let mut dec = CutsetDecomposition {
        s,
        s1,
        s0,
        s2,
        components,
        t,
        q1,
        q2,
        q3,
        w: VertexSet::EMPTY,
        matching: StarMatching::default(),
    };
    let start = dec.first_w_index().min(dec.components.len());
    dec.w = dec.components[start..]
        .iter()
        .fold(VertexSet::EMPTY, |a, &c| a | c);

    match star_matching(g, dec.w, s2, |_| 2)? {
        StarMatchingResult::Matching(m) => dec.matching = m,
        StarMatchingResult::Deficient { set, neighbors, demand } => {
            let components = g.count_components(g.vertices() - neighbors);
            return Err(Error::ToughnessRefutation {
                cutset: neighbors,
                components,
                detail: format!(
                    "no K_{{1,2}}-matching from W into S2: {set} needs {demand} leaves, \
                     has {} neighbours in S2",
                    neighbors.len()
                ),
            });
        }
    }
    Ok(dec)
}
