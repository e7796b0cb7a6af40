//! Hamiltonian cycle assembly around a cutset whose removal leaves at least
//! two nontrivial clique components.

use super::recorder::{ConstructionOutcome, Recorder, Stage};
use super::trace::{Check, Cmp, Expr, Quantity, Rule};
use crate::error::{Error, Result};
use crate::flow::FlowNet;
use crate::graph::{Graph, VertexSet};
use crate::pattern::find_p2p3;
use crate::rational::Rational;
use crate::structure::{decompose_cutset, CutsetDecomposition};

/// Smallest order the assembly accepts.
pub const MIN_ORDER: usize = 31;

/// Builds a Hamiltonian cycle of `g` from the cutset `s`.
///
/// Errors when a precondition fails: `g` connected and `(P₂ ∪ P₃)`-free
/// with `n ≥ 31`; `s` a cutset with `|S| ≤ 3n/4` leaving two nontrivial
/// clique components; `d(u) + d(v) ≥ |S|` on every edge. Claims that rely on
/// toughness are checked as the construction goes, and the first one that
/// fails ends the run with a [`ConstructionOutcome::Failed`].
pub fn lemma8_procedure(g: &Graph, s: VertexSet) -> Result<ConstructionOutcome> {
    let mut rec = Recorder::new(g);
    let r = assemble_into(&mut rec, s)?;
    Ok(rec.finish(r))
}

pub fn check_assembly_preconditions(g: &Graph, s: VertexSet) -> Result<()> {
    let n = g.n();
    g.check_subset(s)?;
    if n < MIN_ORDER {
        return Err(Error::precondition(format!("n = {n} is below {MIN_ORDER}")));
    }
    if !g.is_connected() {
        return Err(Error::precondition("graph is not connected"));
    }
    if let Some(w) = find_p2p3(g) {
        return Err(Error::NotFree(w));
    }
    let parts = g.components_unchecked(g.vertices() - s);
    if parts.count() < 2 {
        return Err(Error::precondition(format!("{s} is not a cutset")));
    }
    if 4 * s.len() > 3 * n {
        return Err(Error::precondition(format!(
            "|S| = {} exceeds 3n/4 = {}",
            s.len(),
            Rational::new(3, 4).of(n)
        )));
    }
    let nontrivial_cliques = parts.iter().filter(|c| c.clique && !c.is_trivial()).count();
    if nontrivial_cliques < 2 {
        return Err(Error::precondition(format!(
            "G - S has {nontrivial_cliques} nontrivial clique component(s), need two"
        )));
    }
    if let Some((u, v)) = g.edges().find(|&(u, v)| g.degree(u) + g.degree(v) < s.len()) {
        return Err(Error::precondition(format!(
            "edge {u}-{v} has degree sum {} < |S| = {}",
            g.degree(u) + g.degree(v),
            s.len()
        )));
    }
    Ok(())
}

/// Outer `Err`: precondition; inner `Err`: a broken claim.
pub(crate) fn assemble_into(rec: &mut Recorder, s: VertexSet) -> Result<Stage> {
    let g = rec.g;
    check_assembly_preconditions(g, s)?;
    let dec = match decompose_cutset(g, s) {
        Ok(d) => d,
        Err(Error::ToughnessRefutation { cutset, detail, .. }) => {
            return Ok(Err(rec.failure(
                Rule::ClaimHcycleAssembly,
                "W has a K_{1,2}-matching into S2",
                detail,
                Some(cutset),
            )))
        }
        Err(e) => return Err(e),
    };
    Ok(run(rec, &dec))
}

fn run(rec: &mut Recorder, dec: &CutsetDecomposition) -> Stage {
    let g = rec.g;
    let n = g.n();
    let vm = dec.matching.vertices();
    let claims = claim_checks(rec, dec);
    rec.require(Rule::ClaimHcycleAssembly, &claims)?;

    let (seq, mut checks) = base_cycle(rec, dec)?;
    let on_c: VertexSet = seq.iter().collect();
    let mut required = dec.q2 | dec.q3;
    for &d in &dec.components[..dec.t] {
        required |= d;
    }
    checks.extend(claims);
    checks.push(rec.check(
        "base cycle has at least 3n/20 vertices",
        Expr::q(Quantity::SetSize(on_c)),
        Cmp::Ge,
        Expr::frac_n(3, 20),
    ));
    checks.push(rec.check(
        "base cycle covers the large components and Q2, Q3",
        Expr::q(Quantity::SetSize(required - on_c)),
        Cmp::Eq,
        Expr::int(0),
    ));
    checks.push(rec.check(
        "base cycle avoids the matching",
        Expr::q(Quantity::SetSize(on_c & vm)),
        Cmp::Eq,
        Expr::int(0),
    ));
    rec.set_cycle(Rule::ClaimHcycleAssembly, seq, checks)?;

    for x in (dec.s2 - on_c - vm).iter() {
        rec.insert_vertex(x, "S2 vertex has more than n/16 neighbours on the cycle", Vec::new())?;
    }

    let small = 12 * dec.s.len() <= 7 * n;
    let branch = rec.check(
        if small { "S at most 7n/12" } else { "S above 7n/12" },
        Expr::q(Quantity::SetSize(dec.s)),
        if small { Cmp::Le } else { Cmp::Gt },
        Expr::frac_n(7, 12),
    );
    rec.insert_stars(&dec.matching, !small, vec![branch])?;
    rec.require_hamiltonian(Rule::ClaimHcycleAssembly)
}

fn claim_checks(rec: &Recorder, dec: &CutsetDecomposition) -> Vec<Check> {
    let vm_s2 = dec.matching.vertices() & dec.s2;
    // Leaves of stars centred in D_i for i ≥ max(t+1, 3). Stars centred in
    // a two-vertex D2 (added when nothing else covers it) need not hit Q1.
    let standard = (dec.t + 1).max(3) - 1;
    let far: VertexSet = dec.components.iter().skip(standard).fold(VertexSet::EMPTY, |a, &c| a | c);
    let far_leaves: VertexSet = dec
        .matching
        .stars
        .iter()
        .filter(|st| far.contains(st.center))
        .fold(VertexSet::EMPTY, |a, st| a | st.leaves);
    let overlap = (dec.q1 & dec.q2) | (dec.q1 & dec.q3) | (dec.q2 & dec.q3);
    let mut checks = vec![
        rec.check(
            "largest component has at least 5 vertices",
            Expr::q(Quantity::SetSize(dec.components[0])),
            Cmp::Ge,
            Expr::int(5),
        ),
        rec.check(
            "Q2 is a clique",
            Expr::q(Quantity::NonEdges(dec.q2)),
            Cmp::Eq,
            Expr::int(0),
        ),
        rec.check(
            "Q3 is a clique",
            Expr::q(Quantity::NonEdges(dec.q3)),
            Cmp::Eq,
            Expr::int(0),
        ),
        rec.check(
            "Q1 Q2 Q3 pairwise disjoint",
            Expr::q(Quantity::SetSize(overlap)),
            Cmp::Eq,
            Expr::int(0),
        ),
        rec.check(
            "matched S2 vertices at most 4c(G-S2)",
            Expr::q(Quantity::SetSize(vm_s2)),
            Cmp::Le,
            Expr {
                terms: vec![(Rational::from_int(4), Quantity::Components(dec.s2))],
            },
        ),
        rec.check(
            "matched S2 vertices lie in Q1",
            Expr::q(Quantity::SetSize(far_leaves - dec.q1)),
            Cmp::Eq,
            Expr::int(0),
        ),
    ];
    if dec.nontrivial_count() == 2 {
        let (g1, g2) = two_sides(dec);
        for (label, side) in [("D1 with Q3 is a clique", g1), ("D2 with Q2 is a clique", g2)] {
            checks.push(rec.check(label, Expr::q(Quantity::NonEdges(side)), Cmp::Eq, Expr::int(0)));
        }
    }
    checks
}

fn two_sides(dec: &CutsetDecomposition) -> (VertexSet, VertexSet) {
    (dec.components[0] | dec.q3, dec.components[1] | dec.q2)
}

/// `[a] + (clique − {a, b}) + [b]`, a Hamiltonian path of a clique.
fn clique_path(clique: VertexSet, a: usize, b: usize) -> Vec<usize> {
    let mut out = vec![a];
    out.extend((clique.without(a).without(b)).iter());
    if b != a {
        out.push(b);
    }
    out
}

/// Least `(u, v)` with `u ∈ a`, `v ∈ b`, `u ≠ v`.
fn distinct_pick(a: VertexSet, b: VertexSet) -> Option<(usize, usize)> {
    a.iter()
        .find_map(|u| b.without(u).first().map(|v| (u, v)))
}

fn base_cycle(rec: &Recorder, dec: &CutsetDecomposition) -> Stage<(Vec<usize>, Vec<Check>)> {
    let g = rec.g;
    let vm = dec.matching.vertices();
    let fail = |claim: &str, detail: String| {
        rec.failure(Rule::ClaimHcycleAssembly, claim, detail, None)
    };

    if dec.nontrivial_count() >= 3 {
        // Thread the large cliques through connectors x_i adjacent to D_i and D_{i+1}.
        let ds = &dec.components[..dec.t];
        let t = ds.len();
        let mut free = dec.s2 - vm;
        let mut xs = Vec::with_capacity(t);
        for i in 0..t {
            let (cur, next) = (ds[i], ds[(i + 1) % t]);
            let x = free.iter().find(|&x| {
                let nx = g.neighbors(x);
                let here = nx & cur;
                let there = nx & next;
                !here.is_empty()
                    && !there.is_empty()
                    && (t > 1 || here.len() >= 2)
                    && (i == 0 || distinct_pick(g.neighbors(xs[i - 1]) & cur, here).is_some())
            });
            let Some(x) = x else {
                return Err(fail(
                    "connectors exist in S2 outside the matching",
                    format!("no connector for components {} and {}", i, (i + 1) % t),
                ));
            };
            free.remove(x);
            xs.push(x);
        }
        let mut seq = Vec::new();
        for i in 0..t {
            let prev = xs[(i + t - 1) % t];
            let Some((u, v)) = distinct_pick(g.neighbors(prev) & ds[i], g.neighbors(xs[i]) & ds[i])
            else {
                return Err(fail(
                    "connectors exist in S2 outside the matching",
                    format!("connectors {prev} and {} share a single attachment", xs[i]),
                ));
            };
            seq.extend(clique_path(ds[i], u, v));
            seq.push(xs[i]);
        }
        return Ok((seq, Vec::new()));
    }

    let (g1, g2) = two_sides(dec);
    if dec.t == 1 && dec.q2.is_empty() {
        return Ok((g1.to_vec(), Vec::new()));
    }

    let cross: Vec<(usize, usize)> = g1
        .iter()
        .flat_map(|a| (g.neighbors(a) & g2).iter().map(move |b| (a, b)))
        .collect();
    for (i, &(a1, b1)) in cross.iter().enumerate() {
        if let Some(&(a2, b2)) = cross[i + 1..].iter().find(|&&(a, b)| a != a1 && b != b1) {
            let mut seq = vec![a1];
            seq.extend(clique_path(g2, b1, b2));
            seq.extend(clique_path(g1, a2, a1).into_iter().take(g1.len() - 1));
            return Ok((seq, Vec::new()));
        }
    }

    if g.count_components(g.vertices() - dec.s2) == 2 {
        let inner = dec.s2 - dec.q2 - dec.q3;
        let checks = vec![rec.check(
            "S2 minus Q2, Q3 has at least 29 vertices",
            Expr::q(Quantity::SetSize(inner)),
            Cmp::Ge,
            Expr::int(29),
        )];
        rec.require(Rule::ClaimHcycleAssembly, &checks)?;
        let Some((p1, p2)) = disjoint_paths(g, g1, g2, inner - vm) else {
            return Err(fail(
                "two disjoint paths join the two sides",
                "max-flow found fewer than two".into(),
            ));
        };
        // x1 P1 y1 →C2 y2 P2 x2 ←C1 x1
        let (x1, y1) = (p1[0], *p1.last().expect("path"));
        let (x2, y2) = (p2[0], *p2.last().expect("path"));
        let mut seq = p1.clone();
        seq.extend(clique_path(g2, y1, y2).into_iter().skip(1));
        seq.extend(p2.iter().rev().skip(1));
        seq.extend(clique_path(g1, x2, x1).into_iter().skip(1).take(g1.len() - 2));
        return Ok((seq, checks));
    }

    // Two vertices of Q1 outside the matching, each with distinct
    // attachments on both sides.
    let cand = dec.q1 - vm;
    for x in cand.iter() {
        for y in cand.iter().filter(|&y| y > x) {
            let (nx, ny) = (g.neighbors(x), g.neighbors(y));
            let (Some((x1, y1)), Some((x2, y2))) =
                (distinct_pick(nx & g1, ny & g1), distinct_pick(nx & g2, ny & g2))
            else {
                continue;
            };
            // x1 x x2 →C2 y2 y y1 ←C1 x1
            let mut seq = vec![x1, x];
            seq.extend(clique_path(g2, x2, y2));
            seq.push(y);
            seq.extend(clique_path(g1, y1, x1).into_iter().take(g1.len() - 1));
            return Ok((seq, Vec::new()));
        }
    }
    Err(fail(
        "two Q1 vertices outside the matching attach to both sides",
        format!("candidates {cand}"),
    ))
}

/// Two vertex-disjoint paths from `a` to `b` whose interiors lie in `inner`,
/// each meeting `a` and `b` only at its ends. Returned oriented `a → b`.
fn disjoint_paths(
    g: &Graph,
    a: VertexSet,
    b: VertexSet,
    inner: VertexSet,
) -> Option<(Vec<usize>, Vec<usize>)> {
    // Vertex v splits into 2v (in) and 2v+1 (out); source and sink follow.
    let n = g.n();
    let (src, snk) = (2 * n, 2 * n + 1);
    let mut net = FlowNet::new(2 * n + 2);
    let allowed = a | b | inner;
    for v in allowed.iter() {
        net.add(2 * v, 2 * v + 1, 1);
    }
    for v in a.iter() {
        net.add(src, 2 * v, 1);
    }
    for v in b.iter() {
        net.add(2 * v + 1, snk, 1);
    }
    for u in (a | inner).iter() {
        for v in (g.neighbors(u) & (inner | b)).iter() {
            net.add(2 * u + 1, 2 * v, 1);
        }
    }
    if net.max_flow(src, snk, 2) < 2 {
        return None;
    }
    let mut paths = Vec::new();
    for start in a.iter().filter(|&v| net.flow_on(src, 2 * v) > 0) {
        let mut path = vec![start];
        let mut cur = start;
        while !b.contains(cur) {
            cur = (g.neighbors(cur) & allowed)
                .iter()
                .find(|&w| net.flow_on(2 * cur + 1, 2 * w) > 0)?;
            path.push(cur);
        }
        paths.push(path);
    }
    let mut it = paths.into_iter();
    Some((it.next()?, it.next()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
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

    #[test]
    fn two_cliques_and_a_dominating_clique() {
        let g = two_cliques_join(16, 16, 60);
        let out = lemma8_procedure(&g, range(32, 92)).unwrap();
        let c = out.cycle().expect("construction succeeds");
        assert!(validate_cycle(&g, c, g.vertices()));
        assert!(out.trace().all_checks().all(|c| c.holds()));
        assert!(super::super::replay_trace(&g, out.trace()).is_valid());
    }

    #[test]
    fn oversized_cutset_is_a_precondition_error() {
        // |S| = 100 > 3n/4 for n = 116.
        let g = two_cliques_join(8, 8, 100);
        match lemma8_procedure(&g, range(16, 116)) {
            Err(Error::Precondition(msg)) => assert!(msg.contains("3n/4"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn disjoint_paths_through_a_separator() {
        // a = {0,1}, b = {4,5}, inner 2, 3 with 0-2-4 and 1-3-5.
        let g = Graph::from_edges(6, &[(0, 1), (4, 5), (0, 2), (2, 4), (1, 3), (3, 5)]).unwrap();
        let (p, q) = disjoint_paths(&g, range(0, 2), range(4, 6), range(2, 4)).unwrap();
        assert_eq!(p, vec![0, 2, 4]);
        assert_eq!(q, vec![1, 3, 5]);
    }
}
