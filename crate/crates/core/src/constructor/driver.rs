//! The top-level construction: degree-based case split, the low-degree
//! matching route, the minimum-degree-edge cutset route, and oracle fallback
//! where the argument cites rather than constructs.

use super::assemble::{assemble_into, MIN_ORDER};
use super::recorder::{ConstructionOutcome, Recorder, Stage};
use super::trace::{Cmp, Expr, Quantity, Rule};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::hamiltonicity::{hamiltonian_cycle_with, HamiltonOptions, HamiltonResult};
use crate::pattern::find_p2p3;
use crate::rational::Rational;
use crate::structure::{star_matching, StarMatching, StarMatchingResult};
use crate::toughness::{
    is_t_tough_with, toughness_lower_bound_check, ExactOptions, FalsifierVerdict, TToughVerdict,
    DEFAULT_EXACT_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DriverOptions {
    /// Hand every graph with `n < 496` or `δ > n/16 − 1` to the oracle, as
    /// the argument does. Off by default, since at `n ≤ 128` that covers
    /// every input and the construction would never run.
    pub literal_degree_branch: bool,
    pub hamilton: HamiltonOptions,
    /// Largest `G₁` searched exactly for a cutset of ratio below 7.
    pub exact_limit: usize,
    pub falsifier_samples: usize,
    pub seed: u64,
}

impl Default for DriverOptions {
    fn default() -> Self {
        DriverOptions {
            literal_degree_branch: false,
            hamilton: HamiltonOptions::default(),
            exact_limit: DEFAULT_EXACT_LIMIT,
            falsifier_samples: 400,
            seed: 0,
        }
    }
}

/// Low-degree vertices, their `K_{1,2}`-matching, and the vertices it covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeClasses {
    /// `{v : d(v) ≤ 3n/8}`.
    pub v1: VertexSet,
    /// `V(M)`.
    pub v2: VertexSet,
    pub matching: StarMatching,
}

impl DegreeClasses {
    /// Errors with a toughness refutation when the matching does not exist.
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.n();
        let v1: VertexSet = g.vertices().iter().filter(|&v| 8 * g.degree(v) <= 3 * n).collect();
        match star_matching(g, v1, g.vertices() - v1, |_| 2)? {
            StarMatchingResult::Matching(matching) => Ok(DegreeClasses {
                v1,
                v2: matching.vertices(),
                matching,
            }),
            StarMatchingResult::Deficient { set, neighbors, demand } => {
                Err(Error::ToughnessRefutation {
                    cutset: neighbors,
                    components: g.count_components(g.vertices() - neighbors),
                    detail: format!("{set} needs {demand} leaves, has {}", neighbors.len()),
                })
            }
        }
    }

    /// `G₁ = G − V₂` as a vertex set.
    pub fn rest(&self, g: &Graph) -> VertexSet {
        g.vertices() - self.v2
    }
}

pub fn theorem1_driver(g: &Graph) -> Result<ConstructionOutcome> {
    theorem1_driver_with(g, &DriverOptions::default())
}

/// Produces a Hamiltonian cycle with a trace, or the verdict of the oracle
/// when the construction's hypotheses are unmet, or the first broken claim.
///
/// Errors if `n < 3` or `g` contains an induced `P₂ ∪ P₃`.
pub fn theorem1_driver_with(g: &Graph, opts: &DriverOptions) -> Result<ConstructionOutcome> {
    let n = g.n();
    if n < 3 {
        return Err(Error::invalid(format!("need at least 3 vertices, got {n}")));
    }
    if let Some(w) = find_p2p3(g) {
        return Err(Error::NotFree(w));
    }
    let mut rec = Recorder::new(g);
    let min_degree = g.min_degree().unwrap_or(0);
    let literal = opts.literal_degree_branch && (n < 31 * 16 || 16 * (min_degree + 1) > n);
    if g.is_complete() || n < MIN_ORDER || !g.is_connected() || literal {
        return Ok(oracle(rec, opts));
    }

    let (u, v) = g
        .edges()
        .min_by_key(|&(u, v)| (g.degree(u) + g.degree(v), u, v))
        .expect("connected graph on 31+ vertices has edges");
    let staged = if 4 * (g.degree(u) + g.degree(v)) > 3 * n {
        high_degree_case(&mut rec, opts)
    } else {
        min_edge_case(&mut rec, u, v)
    };
    Ok(match staged {
        Ok(r) => rec.finish(r),
        Err(Error::Precondition(_)) | Err(Error::NotFree(_)) => oracle(rec, opts),
        Err(e) => return Err(e),
    })
}

fn oracle(mut rec: Recorder, opts: &DriverOptions) -> ConstructionOutcome {
    match hamiltonian_cycle_with(rec.g, &opts.hamilton) {
        HamiltonResult::Found(c) => {
            let r = rec.set_cycle(Rule::OracleFallback, c.sequence().to_vec(), Vec::new());
            rec.finish(r)
        }
        HamiltonResult::NoCycle => {
            rec.cycle = None;
            rec.push(Rule::OracleFallback, Vec::new(), Vec::new())
                .expect("no checks to fail");
            ConstructionOutcome::NoCycle { trace: rec.trace }
        }
        HamiltonResult::Timeout => {
            rec.cycle = None;
            rec.push(Rule::OracleFallback, Vec::new(), Vec::new())
                .expect("no checks to fail");
            ConstructionOutcome::Timeout { trace: rec.trace }
        }
    }
}

/// Every edge has degree sum above `3n/4`.
fn high_degree_case(rec: &mut Recorder, opts: &DriverOptions) -> Result<Stage> {
    let g = rec.g;
    let classes = match DegreeClasses::new(g) {
        Ok(c) => c,
        Err(Error::ToughnessRefutation { cutset, detail, .. }) => {
            return Ok(Err(rec.failure(
                Rule::Case1Matching,
                "low-degree vertices have a K_{1,2}-matching",
                detail,
                Some(cutset),
            )))
        }
        Err(e) => return Err(e),
    };
    let rest = classes.rest(g);
    let mut checks = vec![
        rec.check(
            "low-degree vertices independent",
            Expr::q(Quantity::EdgesWithin(classes.v1)),
            Cmp::Eq,
            Expr::int(0),
        ),
        rec.check(
            "V1 at most n/16",
            Expr::q(Quantity::SetSize(classes.v1)),
            Cmp::Le,
            Expr::frac_n(1, 16),
        ),
        rec.check(
            "V2 at most 3n/16",
            Expr::q(Quantity::SetSize(classes.v2)),
            Cmp::Le,
            Expr::frac_n(3, 16),
        ),
        rec.check(
            "G1 minimum degree above 3n/16",
            Expr::q(Quantity::MinDegreeWithin(rest)),
            Cmp::Gt,
            Expr::frac_n(3, 16),
        ),
    ];
    for x in (classes.v2 - classes.v1).iter() {
        checks.push(rec.check(
            "leaf has more than 3n/16 neighbours in G1",
            Expr::q(Quantity::DegreeInto(x, rest)),
            Cmp::Gt,
            Expr::frac_n(3, 16),
        ));
    }
    let stars: Vec<usize> = classes.matching.stars.iter().flat_map(|s| s.as_path()).collect();
    if let Err(f) = rec.push(Rule::Case1Matching, stars, checks) {
        return Ok(Err(f));
    }

    let (sub, map) = g.induced_subgraph(rest)?;
    if let HamiltonResult::Found(c) = hamiltonian_cycle_with(&sub, &opts.hamilton) {
        let seq = c.sequence().iter().map(|&i| map[i]).collect();
        return Ok(rec
            .set_cycle(Rule::OracleFallback, seq, Vec::new())
            .and_then(|()| rec.insert_stars(&classes.matching, true, Vec::new()))
            .and_then(|()| rec.require_hamiltonian(Rule::Case1Matching)));
    }

    // G₁ is not Hamiltonian: look for a cutset of G₁ with ratio below 7.
    let seven = Rational::from_int(7);
    let found = if sub.n() <= opts.exact_limit {
        let exact = ExactOptions {
            max_n: opts.exact_limit,
            force: false,
        };
        match is_t_tough_with(&sub, seven, &exact)? {
            TToughVerdict::Violated { cutset, .. } => Some(cutset),
            TToughVerdict::Tough => None,
        }
    } else {
        match toughness_lower_bound_check(&sub, seven, opts.falsifier_samples, opts.seed) {
            FalsifierVerdict::Violation { cutset, .. } => Some(cutset),
            FalsifierVerdict::NoViolationFound => None,
        }
    };
    let Some(s1_local) = found else {
        return Ok(Err(rec.failure(
            Rule::Case1Fallback,
            "G1 has a cutset with ratio below 7",
            format!("none found in G1 on {} vertices", sub.n()),
            None,
        )));
    };
    let s1: VertexSet = s1_local.iter().map(|i| map[i]).collect();
    let s = s1 | classes.v2;
    let checks = vec![
        rec.check(
            "G1 cutset ratio below 7",
            Expr::q(Quantity::SetSize(s1)),
            Cmp::Lt,
            Expr {
                terms: vec![(seven, Quantity::Components(s))],
            },
        ),
        rec.check(
            "G1 cutset below 3n/16",
            Expr::q(Quantity::SetSize(s1)),
            Cmp::Lt,
            Expr::frac_n(3, 16),
        ),
        rec.check(
            "components of G-S nontrivial",
            Expr::q(Quantity::MinComponent(s)),
            Cmp::Ge,
            Expr::int(2),
        ),
    ];
    if let Err(f) = rec.push(Rule::Case1Fallback, s.to_vec(), checks) {
        return Ok(Err(f));
    }
    assemble_into(rec, s)
}

/// Some edge has degree sum at most `3n/4`; `uv` minimizes it.
fn min_edge_case(rec: &mut Recorder, u: usize, v: usize) -> Result<Stage> {
    let g = rec.g;
    let s = (g.neighbors(u) | g.neighbors(v)).without(u).without(v);
    let checks = vec![
        rec.check(
            "minimum edge degree sum at most 3n/4",
            Expr::q(Quantity::Degree(u)).plus(Rational::ONE, Quantity::Degree(v)),
            Cmp::Le,
            Expr::frac_n(3, 4),
        ),
        rec.check(
            "cutset at most 3n/4 - 2",
            Expr::q(Quantity::SetSize(s)),
            Cmp::Le,
            Expr::frac_n(3, 4).plus(Rational::from_int(-2), Quantity::One),
        ),
    ];
    if let Err(f) = rec.push(Rule::Case2Cutset, vec![u, v], checks) {
        return Ok(Err(f));
    }
    assemble_into(rec, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructor::replay_trace;
    use crate::graph::{named, GraphBuilder};
    use crate::hamiltonicity::validate_cycle;

    fn range(a: usize, b: usize) -> VertexSet {
        (a..b).collect()
    }

    fn two_cliques_join(a: usize, b: usize, k: usize) -> Graph {
        let n = a + b + k;
        let mut gb = GraphBuilder::new(n).unwrap();
        gb.add_clique(range(0, a)).unwrap();
        gb.add_clique(range(a, a + b)).unwrap();
        gb.add_clique(range(a + b, n)).unwrap();
        gb.add_join(range(0, a + b), range(a + b, n)).unwrap();
        gb.build()
    }

    fn assert_constructs(g: &Graph) -> ConstructionOutcome {
        let out = theorem1_driver(g).unwrap();
        let c = out.cycle().unwrap_or_else(|| panic!("{out:?}"));
        assert!(validate_cycle(g, c, g.vertices()));
        assert!(replay_trace(g, out.trace()).is_valid());
        out
    }

    #[test]
    fn complete_graphs_go_to_the_oracle() {
        for n in 3..=12 {
            let out = assert_constructs(&named::complete(n));
            assert_eq!(out.trace().rules().collect::<Vec<_>>(), vec![Rule::OracleFallback]);
        }
    }

    #[test]
    fn small_non_hamiltonian_graph() {
        let out = theorem1_driver(&named::complete_bipartite(2, 3)).unwrap();
        assert_eq!(out.verdict(), "hypotheses-unmet-no-cycle");
    }

    #[test]
    fn rejects_graphs_with_the_pattern() {
        assert!(matches!(theorem1_driver(&named::p2_union_p3()), Err(Error::NotFree(_))));
    }

    #[test]
    fn high_degree_route() {
        let g = two_cliques_join(16, 16, 60);
        let out = assert_constructs(&g);
        assert_eq!(out.trace().rules().next(), Some(Rule::Case1Matching));
    }

    #[test]
    fn min_edge_route() {
        let g = two_cliques_join(2, 51, 30);
        let out = assert_constructs(&g);
        assert_eq!(out.trace().rules().next(), Some(Rule::Case2Cutset));
    }

    #[test]
    fn trace_is_bound_to_its_graph() {
        let g = two_cliques_join(16, 16, 60);
        let out = theorem1_driver(&g).unwrap();
        let other = g.without_edge(0, 1).unwrap();
        assert!(!replay_trace(&other, out.trace()).is_valid());

        let mut bad = out.trace().clone();
        let last = bad.steps.len() - 1;
        bad.steps[last].fingerprint ^= 1;
        assert!(!replay_trace(&g, &bad).is_valid());
    }
}
