use std::fmt;

use super::trace::{Check, Cmp, ConstructionTrace, Expr, Quantity, Rule, Step};
use crate::graph::{Graph, VertexSet};
use crate::hamiltonicity::{
    extend_with_path, extend_with_vertex, validate_cycle, Extended, Extension, Move,
    OrientedCycle, PathSeg,
};
use crate::pattern::{find_p2p3, PatternWitness};
use crate::structure::{Star, StarMatching};

/// The first claim of the argument that did not hold on this input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionFailure {
    pub rule: Rule,
    pub claim: String,
    pub detail: String,
    /// Refutation object, e.g. the independent set left by a failed extension.
    pub witness: Option<VertexSet>,
    /// A `P₂ ∪ P₃` copy, searched for whenever a claim check fails.
    pub pattern: Option<PatternWitness>,
}

impl fmt::Display for ConstructionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} ({})", self.rule, self.claim, self.detail)?;
        if let Some(w) = self.witness {
            write!(f, " witness={w}")?;
        }
        if let Some(p) = &self.pattern {
            write!(f, " pattern={p}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionOutcome {
    Hamiltonian {
        cycle: OrientedCycle,
        trace: ConstructionTrace,
    },
    /// The oracle settled the question and found no Hamiltonian cycle.
    NoCycle { trace: ConstructionTrace },
    Timeout { trace: ConstructionTrace },
    Failed {
        failure: ConstructionFailure,
        trace: ConstructionTrace,
    },
}

impl ConstructionOutcome {
    pub fn cycle(&self) -> Option<&OrientedCycle> {
        match self {
            ConstructionOutcome::Hamiltonian { cycle, .. } => Some(cycle),
            _ => None,
        }
    }

    pub fn trace(&self) -> &ConstructionTrace {
        match self {
            ConstructionOutcome::Hamiltonian { trace, .. }
            | ConstructionOutcome::NoCycle { trace }
            | ConstructionOutcome::Timeout { trace }
            | ConstructionOutcome::Failed { trace, .. } => trace,
        }
    }

    pub fn verdict(&self) -> &'static str {
        match self {
            ConstructionOutcome::Hamiltonian { .. } => "hamiltonian",
            ConstructionOutcome::NoCycle { .. } => "hypotheses-unmet-no-cycle",
            ConstructionOutcome::Timeout { .. } => "timeout",
            ConstructionOutcome::Failed { .. } => "construction-failed",
        }
    }
}

pub(crate) type Stage<T = ()> = std::result::Result<T, ConstructionFailure>;

pub(crate) struct Recorder<'g> {
    pub g: &'g Graph,
    pub trace: ConstructionTrace,
    pub cycle: Option<OrientedCycle>,
}

impl<'g> Recorder<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Recorder {
            g,
            trace: ConstructionTrace::new(g),
            cycle: None,
        }
    }

    pub fn check(&self, label: &str, lhs: Expr, op: Cmp, rhs: Expr) -> Check {
        let c = self.cycle.as_ref();
        Check {
            label: label.to_string(),
            lhs_value: lhs.eval(self.g, c).expect("recorded quantities are in range"),
            rhs_value: rhs.eval(self.g, c).expect("recorded quantities are in range"),
            lhs,
            op,
            rhs,
        }
    }

    pub fn failure(&self, rule: Rule, claim: &str, detail: String, witness: Option<VertexSet>) -> ConstructionFailure {
        ConstructionFailure {
            rule,
            claim: claim.to_string(),
            detail,
            witness,
            pattern: None,
        }
    }

    /// Fails on the first check that does not hold.
    pub fn require(&self, rule: Rule, checks: &[Check]) -> Stage {
        match checks.iter().find(|c| !c.holds()) {
            None => Ok(()),
            Some(c) => Err(ConstructionFailure {
                rule,
                claim: c.label.clone(),
                detail: format!("{} = {} vs {} = {}", c.lhs, c.lhs_value, c.rhs, c.rhs_value),
                witness: None,
                pattern: find_p2p3(self.g),
            }),
        }
    }

    pub fn push(&mut self, rule: Rule, vertices: Vec<usize>, checks: Vec<Check>) -> Stage {
        self.require(rule, &checks)?;
        let fingerprint = self.cycle.as_ref().map_or(0, |c| c.fingerprint());
        self.trace.steps.push(Step {
            rule,
            vertices,
            fingerprint,
            checks,
        });
        Ok(())
    }

    pub fn set_cycle(&mut self, rule: Rule, seq: Vec<usize>, checks: Vec<Check>) -> Stage {
        self.require(rule, &checks)?;
        let cycle = OrientedCycle::new(self.g, seq.clone()).map_err(|e| {
            self.failure(rule, "assembled sequence is a cycle", e.to_string(), None)
        })?;
        self.trace.steps.push(Step {
            rule,
            vertices: seq,
            fingerprint: cycle.fingerprint(),
            checks,
        });
        self.cycle = Some(cycle);
        Ok(())
    }

    fn apply(&mut self, e: Extended) {
        let (rule, mut vertices) = match e.mv {
            Move::Splice { after } => (Rule::Splice, vec![after]),
            Move::Rotate { u, w } => (Rule::Rotate, vec![u, w]),
        };
        vertices.extend_from_slice(&e.inserted);
        self.trace.steps.push(Step {
            rule,
            vertices,
            fingerprint: e.cycle.fingerprint(),
            checks: Vec::new(),
        });
        self.cycle = Some(e.cycle);
    }

    fn current(&self, rule: Rule) -> Stage<&OrientedCycle> {
        self.cycle
            .as_ref()
            .ok_or_else(|| self.failure(rule, "a cycle exists", "no cycle yet".into(), None))
    }

    /// Single-vertex extension behind the `deg(x, C) > n/16` gate.
    pub fn insert_vertex(&mut self, x: usize, label: &str, mut extra: Vec<Check>) -> Stage {
        let gate = self.check(
            label,
            Expr::q(Quantity::DegreeOnCycle(x)),
            Cmp::Gt,
            Expr::frac_n(1, 16),
        );
        extra.insert(0, gate);
        self.push(Rule::Lemma6Insert, vec![x], extra)?;
        let c = self.current(Rule::Lemma6Insert)?;
        match extend_with_vertex(self.g, c, x).expect("vertex is off the cycle") {
            Extension::Extended(e) => {
                self.apply(e);
                Ok(())
            }
            Extension::Failed(f) => Err(self.failure(
                Rule::Lemma6Insert,
                "single-vertex extension succeeds",
                format!("vertex {x}: successors of its cycle neighbours are independent"),
                Some(f.witness_set()),
            )),
        }
    }

    /// Path extension behind the `> 9n/32` gate on both ends.
    pub fn insert_path(&mut self, path: Vec<usize>, label: &str, mut extra: Vec<Check>) -> Stage {
        let (first, last) = (path[0], *path.last().expect("non-empty path"));
        let gates = [first, last].map(|v| {
            self.check(
                label,
                Expr::q(Quantity::DegreeOnCycle(v)),
                Cmp::Gt,
                Expr::frac_n(9, 32),
            )
        });
        extra.splice(0..0, gates);
        self.push(Rule::Lemma7Insert, path.clone(), extra)?;
        let seg = PathSeg::new(self.g, path.clone()).map_err(|e| {
            self.failure(Rule::Lemma7Insert, "inserted sequence is a path", e.to_string(), None)
        })?;
        let c = self.current(Rule::Lemma7Insert)?;
        match extend_with_path(self.g, c, &seg).expect("path is off the cycle") {
            Extension::Extended(e) => {
                self.apply(e);
                Ok(())
            }
            Extension::Failed(f) => Err(self.failure(
                Rule::Lemma7Insert,
                "path extension succeeds",
                format!("path {path:?}: no splice and no rotation"),
                Some(f.witness_set()),
            )),
        }
    }

    /// Inserts every star of `m` into the current cycle.
    ///
    /// With `split`, stars whose centre has more than `n/16` neighbours on
    /// the cycle as it stands now are inserted vertex by vertex (leaves, then
    /// centre); the rest go in as three-vertex paths. Without `split` every
    /// star goes in as a path. `prelude` is attached to the first insertion.
    pub fn insert_stars(&mut self, m: &StarMatching, split: bool, prelude: Vec<Check>) -> Stage {
        let n = self.g.n();
        let base = self.current(Rule::Lemma6Insert)?.vertices();
        let (m1, m2): (Vec<&Star>, Vec<&Star>) = m
            .stars
            .iter()
            .partition(|s| split && 16 * self.g.degree_into(s.center, base) > n);
        let mut prelude = Some(prelude);
        for star in m1 {
            for v in star.leaves.iter().chain([star.center]) {
                let extra = prelude.take().unwrap_or_default();
                self.insert_vertex(v, "star vertex has more than n/16 neighbours on the cycle", extra)?;
            }
        }
        for star in m2 {
            let extra = prelude.take().unwrap_or_default();
            self.insert_path(
                star.as_path(),
                "star path end has more than 9n/32 neighbours on the cycle",
                extra,
            )?;
        }
        Ok(())
    }

    pub fn require_hamiltonian(&self, rule: Rule) -> Stage {
        match &self.cycle {
            Some(c) if c.len() == self.g.n() && validate_cycle(self.g, c, self.g.vertices()) => Ok(()),
            Some(c) => Err(self.failure(
                rule,
                "final cycle is Hamiltonian",
                format!("cycle covers {} of {} vertices", c.len(), self.g.n()),
                Some(self.g.vertices() - c.vertices()),
            )),
            None => Err(self.failure(rule, "final cycle is Hamiltonian", "no cycle".into(), None)),
        }
    }

    pub fn finish(self, r: Stage) -> ConstructionOutcome {
        match r {
            Ok(()) => ConstructionOutcome::Hamiltonian {
                cycle: self.cycle.expect("successful runs end with a cycle"),
                trace: self.trace,
            },
            Err(failure) => ConstructionOutcome::Failed {
                failure,
                trace: self.trace,
            },
        }
    }
}
