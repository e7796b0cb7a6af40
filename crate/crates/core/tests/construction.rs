use toughham::constructor::{
    lemma8_procedure, replay_trace, theorem1_driver, ConstructionOutcome, ConstructionTrace, Rule,
};
use toughham::hamiltonicity::validate_cycle;
use toughham::pattern::is_p2p3_free;
use toughham::{Graph, GraphBuilder, VertexSet};

fn range(a: usize, b: usize) -> VertexSet {
    (a..b).collect()
}

/// A `k`-clique joined to disjoint cliques of the given sizes, minus the
/// listed edges. Cliques come first, the joined clique last.
fn joined_cliques(sizes: &[usize], k: usize, drop: &[(usize, usize)]) -> Graph {
    let m: usize = sizes.iter().sum();
    let mut gb = GraphBuilder::new(m + k).unwrap();
    let mut at = 0;
    for &s in sizes {
        gb.add_clique(range(at, at + s)).unwrap();
        at += s;
    }
    gb.add_clique(range(m, m + k)).unwrap();
    gb.add_join(range(0, m), range(m, m + k)).unwrap();
    let mut g = gb.build();
    for &(u, v) in drop {
        g = g.without_edge(u, v).unwrap();
    }
    g
}

fn variants() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    let shapes: &[(&[usize], usize)] = &[
        (&[16, 16], 60),
        (&[2, 51], 30),
        (&[3, 40], 40),
        (&[10, 20], 60),
        (&[20, 20], 50),
        (&[5, 5], 40),
        (&[2, 2, 40], 50),
        (&[10, 10, 10], 60),
        (&[16, 16, 1], 60),
        (&[30, 1, 1], 40),
        (&[3, 3, 3, 3], 70),
        (&[2, 60], 32),
        (&[2, 2, 74], 45),
        (&[75, 2, 2], 45),
        (&[70, 2, 2, 1], 45),
        (&[2, 70], 40),
        (&[3, 70], 34),
        (&[2, 2, 2, 60], 60),
    ];
    for (sizes, k) in shapes {
        let g = joined_cliques(sizes, *k, &[]);
        let m: usize = sizes.iter().sum();
        out.push((format!("{sizes:?}+K{k}"), g.clone()));
        // Each join vertex i < 6 loses its edge to component vertex 2 + i.
        let drop: Vec<_> = (0..6).map(|i| (2 + i, m + i)).collect();
        out.push((format!("{sizes:?}+K{k}-drop"), joined_cliques(sizes, *k, &drop)));
    }
    out
}

fn construct(g: &Graph) -> ConstructionOutcome {
    let out = theorem1_driver(g).unwrap();
    let c = out
        .cycle()
        .unwrap_or_else(|| panic!("no cycle: {}", out.verdict()));
    assert!(validate_cycle(g, c, g.vertices()));
    assert!(out.trace().all_checks().all(|c| c.holds()));
    assert!(replay_trace(g, out.trace()).is_valid());
    let parsed = ConstructionTrace::parse(&out.trace().to_text()).unwrap();
    assert_eq!(&parsed, out.trace());
    out
}

#[test]
fn every_variant_is_free_and_constructs() {
    for (name, g) in variants() {
        assert!(is_p2p3_free(&g), "{name}");
        let started = std::time::Instant::now();
        construct(&g);
        assert!(started.elapsed().as_secs() < 10, "{name}");
    }
}

#[test]
fn variants_cover_both_routes_and_both_insertions() {
    let rules: Vec<Rule> = variants()
        .iter()
        .flat_map(|(_, g)| construct(g).trace().rules().collect::<Vec<_>>())
        .collect();
    for r in [
        Rule::Case1Matching,
        Rule::Case2Cutset,
        Rule::ClaimHcycleAssembly,
        Rule::Lemma6Insert,
        Rule::Lemma7Insert,
        Rule::Splice,
    ] {
        assert!(rules.contains(&r), "{r} never used");
    }
}

#[test]
fn cutset_assembly_on_the_base_instance() {
    let g = joined_cliques(&[16, 16], 60, &[]);
    let out = lemma8_procedure(&g, range(32, 92)).unwrap();
    assert!(validate_cycle(&g, out.cycle().unwrap(), g.vertices()));
    assert!(replay_trace(&g, out.trace()).is_valid());
    assert_eq!(out.trace().rules().next(), Some(Rule::ClaimHcycleAssembly));
}

#[test]
fn tampered_traces_are_rejected() {
    let g = joined_cliques(&[2, 51], 30, &[]);
    let out = construct(&g);
    let trace = out.trace();
    for i in 0..trace.steps.len() {
        let step = &trace.steps[i];
        if matches!(step.rule, Rule::Splice | Rule::Rotate | Rule::ClaimHcycleAssembly) {
            let mut t = trace.clone();
            t.steps.remove(i);
            assert!(!replay_trace(&g, &t).is_valid(), "dropping step {i}");
        }
        let mut t = trace.clone();
        t.steps[i].fingerprint ^= 1 << (i % 64);
        assert!(!replay_trace(&g, &t).is_valid(), "fingerprint of step {i}");
        if !step.checks.is_empty() {
            let mut t = trace.clone();
            t.steps[i].checks[0].lhs_value = t.steps[i].checks[0].lhs_value + toughham::Rational::ONE;
            assert!(!replay_trace(&g, &t).is_valid(), "check value of step {i}");
        }
    }
    let other = g.without_edge(0, 1).unwrap();
    assert!(!replay_trace(&other, trace).is_valid());
}
