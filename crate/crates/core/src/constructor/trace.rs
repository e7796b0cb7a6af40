//! Construction traces: ordered steps with recomputable inequality checks,
//! a line-oriented text form, and replay.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{encode_graph6, Graph, VertexSet};
use crate::hamiltonicity::{validate_cycle, OrientedCycle};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Splice,
    Rotate,
    Lemma6Insert,
    Lemma7Insert,
    ClaimHcycleAssembly,
    Case1Matching,
    Case1Fallback,
    Case2Cutset,
    OracleFallback,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::Splice,
        Rule::Rotate,
        Rule::Lemma6Insert,
        Rule::Lemma7Insert,
        Rule::ClaimHcycleAssembly,
        Rule::Case1Matching,
        Rule::Case1Fallback,
        Rule::Case2Cutset,
        Rule::OracleFallback,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::Splice => "splice",
            Rule::Rotate => "rotate",
            Rule::Lemma6Insert => "lemma6-insert",
            Rule::Lemma7Insert => "lemma7-insert",
            Rule::ClaimHcycleAssembly => "claim-hcycle-assembly",
            Rule::Case1Matching => "case1-matching",
            Rule::Case1Fallback => "case1-fallback",
            Rule::Case2Cutset => "case2-cutset",
            Rule::OracleFallback => "oracle-fallback",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Rule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| Error::invalid(format!("unknown rule {s:?}")))
    }
}

/// A graph quantity a check can be recomputed from. Cycle-dependent
/// quantities refer to the cycle current before the step is applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    N,
    One,
    CycleLen,
    Degree(usize),
    DegreeOnCycle(usize),
    DegreeInto(usize, VertexSet),
    SetSize(VertexSet),
    /// `c(G − S)`.
    Components(VertexSet),
    /// Size of the smallest component of `G − S`, 0 if there is none.
    MinComponent(VertexSet),
    /// `min_{v ∈ S} |N(v) ∩ S|`, 0 for the empty set.
    MinDegreeWithin(VertexSet),
    /// Non-adjacent pairs inside `S`.
    NonEdges(VertexSet),
    EdgesWithin(VertexSet),
}

impl Quantity {
    fn eval(&self, g: &Graph, cycle: Option<&OrientedCycle>) -> Option<usize> {
        let vertex = |v: usize| (v < g.n()).then_some(v);
        let set = |s: VertexSet| g.check_subset(s).ok().map(|_| s);
        let on_cycle = cycle.map(|c| c.vertices()).unwrap_or(VertexSet::EMPTY);
        Some(match *self {
            Quantity::N => g.n(),
            Quantity::One => 1,
            Quantity::CycleLen => cycle.map_or(0, |c| c.len()),
            Quantity::Degree(v) => g.degree(vertex(v)?),
            Quantity::DegreeOnCycle(v) => g.degree_into(vertex(v)?, on_cycle),
            Quantity::DegreeInto(v, s) => g.degree_into(vertex(v)?, set(s)?),
            Quantity::SetSize(s) => set(s)?.len(),
            Quantity::Components(s) => g.count_components(g.vertices() - set(s)?),
            Quantity::MinComponent(s) => g
                .components_unchecked(g.vertices() - set(s)?)
                .iter()
                .map(|c| c.len())
                .min()
                .unwrap_or(0),
            Quantity::MinDegreeWithin(s) => {
                let s = set(s)?;
                s.iter().map(|v| g.degree_into(v, s)).min().unwrap_or(0)
            }
            Quantity::NonEdges(s) => {
                let s = set(s)?;
                let k = s.len();
                k * k.saturating_sub(1) / 2 - edges_within(g, s)
            }
            Quantity::EdgesWithin(s) => edges_within(g, set(s)?),
        })
    }
}

fn edges_within(g: &Graph, s: VertexSet) -> usize {
    s.iter().map(|v| g.degree_into(v, s)).sum::<usize>() / 2
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::N => write!(f, "n"),
            Quantity::One => write!(f, "1"),
            Quantity::CycleLen => write!(f, "cyclen"),
            Quantity::Degree(v) => write!(f, "deg({v})"),
            Quantity::DegreeOnCycle(v) => write!(f, "degC({v})"),
            Quantity::DegreeInto(v, s) => write!(f, "degin({v},{s})"),
            Quantity::SetSize(s) => write!(f, "size{s}"),
            Quantity::Components(s) => write!(f, "comp{s}"),
            Quantity::MinComponent(s) => write!(f, "mincomp{s}"),
            Quantity::MinDegreeWithin(s) => write!(f, "mindeg{s}"),
            Quantity::NonEdges(s) => write!(f, "nonedges{s}"),
            Quantity::EdgesWithin(s) => write!(f, "edges{s}"),
        }
    }
}

fn parse_set(s: &str) -> Result<VertexSet> {
    let inner = s
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::invalid(format!("bad vertex set {s:?}")))?;
    let mut out = VertexSet::EMPTY;
    for part in inner.split(',').filter(|p| !p.is_empty()) {
        let v: usize = part
            .parse()
            .map_err(|_| Error::invalid(format!("bad vertex {part:?}")))?;
        if v >= crate::graph::MAX_VERTICES {
            return Err(Error::invalid(format!("vertex {v} out of range")));
        }
        out.insert(v);
    }
    Ok(out)
}

fn parse_vertex(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::invalid(format!("bad vertex {s:?}")))
}

impl FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let arg = |prefix: &str| {
            s.strip_prefix(prefix)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
        };
        Ok(match s {
            "n" => Quantity::N,
            "1" => Quantity::One,
            "cyclen" => Quantity::CycleLen,
            _ if s.starts_with("degin(") => {
                let body = arg("degin").ok_or_else(|| Error::invalid(format!("bad term {s:?}")))?;
                let (v, set) = body
                    .split_once(',')
                    .ok_or_else(|| Error::invalid(format!("bad term {s:?}")))?;
                Quantity::DegreeInto(parse_vertex(v)?, parse_set(set)?)
            }
            _ if s.starts_with("degC(") => Quantity::DegreeOnCycle(parse_vertex(arg("degC").unwrap_or(""))?),
            _ if s.starts_with("deg(") => Quantity::Degree(parse_vertex(arg("deg").unwrap_or(""))?),
            _ => {
                let (name, set) = s
                    .find('{')
                    .map(|i| s.split_at(i))
                    .ok_or_else(|| Error::invalid(format!("unknown quantity {s:?}")))?;
                let set = parse_set(set)?;
                match name {
                    "size" => Quantity::SetSize(set),
                    "comp" => Quantity::Components(set),
                    "mincomp" => Quantity::MinComponent(set),
                    "mindeg" => Quantity::MinDegreeWithin(set),
                    "nonedges" => Quantity::NonEdges(set),
                    "edges" => Quantity::EdgesWithin(set),
                    _ => return Err(Error::invalid(format!("unknown quantity {s:?}"))),
                }
            }
        })
    }
}

/// A linear combination of quantities with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub terms: Vec<(Rational, Quantity)>,
}

impl Expr {
    pub fn q(q: Quantity) -> Self {
        Expr {
            terms: vec![(Rational::ONE, q)],
        }
    }

    /// `(num/den)·n`.
    pub fn frac_n(num: i64, den: i64) -> Self {
        Expr {
            terms: vec![(Rational::new(num, den), Quantity::N)],
        }
    }

    pub fn int(v: i64) -> Self {
        Expr {
            terms: vec![(Rational::from_int(v), Quantity::One)],
        }
    }

    pub fn plus(mut self, coeff: Rational, q: Quantity) -> Self {
        self.terms.push((coeff, q));
        self
    }

    pub fn eval(&self, g: &Graph, cycle: Option<&OrientedCycle>) -> Option<Rational> {
        self.terms.iter().try_fold(Rational::ZERO, |acc, (c, q)| {
            Some(acc + *c * Rational::from(q.eval(g, cycle)?))
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self
            .terms
            .iter()
            .map(|(c, q)| {
                if *c == Rational::ONE {
                    q.to_string()
                } else {
                    format!("{c}*{q}")
                }
            })
            .join("+");
        f.write_str(&s)
    }
}

impl FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for term in s.split('+') {
            let (c, q) = match term.split_once('*') {
                Some((c, q)) => (c.parse()?, q),
                None => (Rational::ONE, term),
            };
            terms.push((c, q.parse()?));
        }
        Ok(Expr { terms })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
}

impl Cmp {
    pub fn holds(self, a: Rational, b: Rational) -> bool {
        match self {
            Cmp::Lt => a < b,
            Cmp::Le => a <= b,
            Cmp::Gt => a > b,
            Cmp::Ge => a >= b,
            Cmp::Eq => a == b,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Gt => ">",
            Cmp::Ge => ">=",
            Cmp::Eq => "=",
        }
    }
}

impl FromStr for Cmp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [Cmp::Lt, Cmp::Le, Cmp::Gt, Cmp::Ge, Cmp::Eq]
            .into_iter()
            .find(|c| c.symbol() == s)
            .ok_or_else(|| Error::invalid(format!("unknown comparison {s:?}")))
    }
}

/// `lhs op rhs` together with the values both sides had when recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub lhs: Expr,
    pub op: Cmp,
    pub rhs: Expr,
    pub lhs_value: Rational,
    pub rhs_value: Rational,
}

impl Check {
    pub fn holds(&self) -> bool {
        self.op.holds(self.lhs_value, self.rhs_value)
    }

    /// Recomputes both sides; true iff they match the recorded values and
    /// the relation holds.
    pub fn recheck(&self, g: &Graph, cycle: Option<&OrientedCycle>) -> bool {
        match (self.lhs.eval(g, cycle), self.rhs.eval(g, cycle)) {
            (Some(l), Some(r)) => l == self.lhs_value && r == self.rhs_value && self.op.holds(l, r),
            _ => false,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}|{}|{}|{}|{}|{}",
            self.label,
            self.lhs,
            self.op.symbol(),
            self.rhs,
            self.lhs_value,
            self.rhs_value
        )
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let f: Vec<&str> = s.split('|').collect();
        if f.len() != 6 {
            return Err(Error::invalid(format!("check needs 6 fields: {s:?}")));
        }
        Ok(Check {
            label: f[0].to_string(),
            lhs: f[1].parse()?,
            op: f[2].parse()?,
            rhs: f[3].parse()?,
            lhs_value: f[4].parse()?,
            rhs_value: f[5].parse()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    /// Rule-specific: the cycle sequence for cycle-setting rules, `[after,
    /// inserted..]` for a splice, `[u, w, inserted..]` for a rotation, the
    /// vertices about to be inserted for the insertion announcements.
    pub vertices: Vec<usize>,
    /// Fingerprint of the current cycle after the step, 0 if there is none.
    pub fingerprint: u64,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub n: usize,
    pub graph_hash: u64,
    pub steps: Vec<Step>,
}

/// First 8 bytes of SHA-256 over the graph6 encoding.
pub fn graph_hash(g: &Graph) -> u64 {
    let d = Sha256::digest(encode_graph6(g).as_bytes());
    u64::from_be_bytes(d[..8].try_into().expect("digest has 32 bytes"))
}

const HEADER: &str = "# construction trace v1";

impl ConstructionTrace {
    pub fn new(g: &Graph) -> Self {
        ConstructionTrace {
            n: g.n(),
            graph_hash: graph_hash(g),
            steps: Vec::new(),
        }
    }

    pub fn all_checks(&self) -> impl Iterator<Item = &Check> {
        self.steps.iter().flat_map(|s| s.checks.iter())
    }

    pub fn rules(&self) -> impl Iterator<Item = Rule> + '_ {
        self.steps.iter().map(|s| s.rule)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER}\nn\t{}\ngraph\t{:016x}\n", self.n, self.graph_hash);
        for s in &self.steps {
            let vertices = if s.vertices.is_empty() {
                "-".to_string()
            } else {
                s.vertices.iter().join(",")
            };
            let checks = if s.checks.is_empty() {
                "-".to_string()
            } else {
                s.checks.iter().join(";")
            };
            out.push_str(&format!(
                "step\t{}\t{}\t{:016x}\t{}\n",
                s.rule, vertices, s.fingerprint, checks
            ));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut hash = None;
        let mut steps = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let at = |e: Error| Error::invalid(format!("trace line {}: {e}", i + 1));
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let f: Vec<&str> = line.split('\t').collect();
            match f[0] {
                "n" if f.len() == 2 => {
                    n = Some(f[1].parse().map_err(|_| at(Error::invalid("bad n")))?)
                }
                "graph" if f.len() == 2 => {
                    hash = Some(
                        u64::from_str_radix(f[1], 16)
                            .map_err(|_| at(Error::invalid("bad graph hash")))?,
                    )
                }
                "step" if f.len() == 5 => {
                    let rule = f[1].parse().map_err(at)?;
                    let vertices = if f[2] == "-" {
                        Vec::new()
                    } else {
                        f[2].split(',')
                            .map(parse_vertex)
                            .collect::<Result<_>>()
                            .map_err(at)?
                    };
                    let fingerprint = u64::from_str_radix(f[3], 16)
                        .map_err(|_| at(Error::invalid("bad fingerprint")))?;
                    let checks = if f[4] == "-" {
                        Vec::new()
                    } else {
                        f[4].split(';')
                            .map(str::parse)
                            .collect::<Result<_>>()
                            .map_err(at)?
                    };
                    steps.push(Step {
                        rule,
                        vertices,
                        fingerprint,
                        checks,
                    });
                }
                _ => return Err(at(Error::invalid(format!("unrecognised record {:?}", f[0])))),
            }
        }
        Ok(ConstructionTrace {
            n: n.ok_or_else(|| Error::invalid("trace lacks an n record"))?,
            graph_hash: hash.ok_or_else(|| Error::invalid("trace lacks a graph record"))?,
            steps,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayVerdict {
    Valid,
    /// `step` is the index of the first failing step, `None` for header or
    /// final-cycle problems.
    Invalid { step: Option<usize>, reason: String },
}

impl ReplayVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, ReplayVerdict::Valid)
    }
}

/// Re-executes the trace against `g`, recomputing every check.
pub fn replay_trace(g: &Graph, trace: &ConstructionTrace) -> ReplayVerdict {
    let fail = |step: Option<usize>, reason: String| ReplayVerdict::Invalid { step, reason };
    if trace.n != g.n() || trace.graph_hash != graph_hash(g) {
        return fail(None, "trace was recorded on a different graph".into());
    }
    let mut cycle: Option<OrientedCycle> = None;
    let mut pending: Option<VertexSet> = None;
    for (i, step) in trace.steps.iter().enumerate() {
        let bad = |reason: String| fail(Some(i), reason);
        if let Some(c) = step.checks.iter().find(|c| !c.recheck(g, cycle.as_ref())) {
            return bad(format!("check {:?} does not hold", c.label));
        }
        let v = &step.vertices;
        match step.rule {
            Rule::OracleFallback | Rule::ClaimHcycleAssembly => {
                if pending.is_some() {
                    return bad("announced insertion not carried out".into());
                }
                if step.rule == Rule::OracleFallback && v.is_empty() {
                    cycle = None;
                } else {
                    match OrientedCycle::new(g, v.clone()) {
                        Ok(c) => cycle = Some(c),
                        Err(e) => return bad(format!("not a cycle: {e}")),
                    }
                }
            }
            Rule::Lemma6Insert | Rule::Lemma7Insert => {
                let Some(c) = &cycle else {
                    return bad("insertion without a cycle".into());
                };
                let set: VertexSet = v.iter().filter(|&&x| x < g.n()).collect();
                if v.is_empty() || set.len() != v.len() || !set.is_disjoint(c.vertices()) {
                    return bad("inserted vertices invalid or already on the cycle".into());
                }
                if step.rule == Rule::Lemma6Insert && v.len() != 1 {
                    return bad("single-vertex insertion names several vertices".into());
                }
                pending = Some(set);
            }
            Rule::Splice | Rule::Rotate => {
                let Some(c) = &cycle else {
                    return bad("extension without a cycle".into());
                };
                let head = if step.rule == Rule::Splice { 1 } else { 2 };
                if v.len() <= head || v[..head].iter().any(|&a| a >= g.n() || !c.contains(a)) {
                    return bad("anchor vertices missing from the cycle".into());
                }
                let inserted = &v[head..];
                let set: VertexSet = inserted.iter().filter(|&&x| x < g.n()).collect();
                if pending != Some(set) || set.len() != inserted.len() {
                    return bad("extension does not match the announced insertion".into());
                }
                let next = if step.rule == Rule::Splice {
                    c.spliced(v[0], inserted)
                } else {
                    if v[0] == v[1] {
                        return bad("rotation anchors coincide".into());
                    }
                    c.rotated(v[0], v[1], inserted)
                };
                if !validate_cycle(g, &next, c.vertices() | set) {
                    return bad("extended sequence is not a cycle".into());
                }
                cycle = Some(next);
                pending = None;
            }
            Rule::Case1Matching | Rule::Case1Fallback | Rule::Case2Cutset => {
                if v.iter().any(|&x| x >= g.n()) {
                    return bad("vertex out of range".into());
                }
            }
        }
        let fp = cycle.as_ref().map_or(0, |c| c.fingerprint());
        if fp != step.fingerprint {
            return bad("cycle fingerprint mismatch".into());
        }
    }
    if pending.is_some() {
        return fail(None, "trace ends with an unfinished insertion".into());
    }
    match &cycle {
        Some(c) if c.len() == g.n() && validate_cycle(g, c, g.vertices()) => ReplayVerdict::Valid,
        _ => fail(None, "final cycle is not Hamiltonian".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions_round_trip() {
        let e = Expr::frac_n(3, 20)
            .plus(Rational::new(-2, 1), Quantity::SetSize([1, 4].iter().collect()))
            .plus(Rational::ONE, Quantity::DegreeInto(3, [0, 5].iter().collect()))
            .plus(Rational::ONE, Quantity::NonEdges(VertexSet::EMPTY));
        let text = e.to_string();
        assert_eq!(text, "3/20*n+-2/1*size{1,4}+degin(3,{0,5})+nonedges{}");
        assert_eq!(text.parse::<Expr>().unwrap(), e);
    }

    #[test]
    fn quantities_on_a_path() {
        let g = crate::graph::named::path(4);
        let all = g.vertices();
        assert_eq!(Quantity::NonEdges(all).eval(&g, None), Some(3));
        assert_eq!(Quantity::Components([1].iter().collect()).eval(&g, None), Some(2));
        assert_eq!(Quantity::MinComponent([1].iter().collect()).eval(&g, None), Some(1));
        assert_eq!(Quantity::MinDegreeWithin(all).eval(&g, None), Some(1));
        assert_eq!(Quantity::Degree(9).eval(&g, None), None);
    }
}
