use itertools::Itertools;
use toughham::generators::{enumerate_small, EnumFilter};
use toughham::hamiltonicity::{
    extend_with_path, extend_with_vertex, hamiltonian_cycle_dp, validate_cycle, Extension,
    ExtensionFailure, OrientedCycle, PathSeg,
};
use toughham::pattern::is_p2p3_free;
use toughham::toughness::{toughness, Toughness};
use toughham::{Graph, Rational, VertexSet};

/// A cycle through exactly `u` (relabelled back to `g`), if `G[u]` has one.
fn cycle_on(g: &Graph, u: VertexSet) -> Option<OrientedCycle> {
    let (h, map) = g.induced_subgraph(u).unwrap();
    let c = hamiltonian_cycle_dp(&h).into_cycle()?;
    Some(OrientedCycle::new(g, c.sequence().iter().map(|&i| map[i]).collect()).unwrap())
}

fn splice_exists(g: &Graph, c: &OrientedCycle, x: usize, z: usize) -> bool {
    c.sequence()
        .iter()
        .circular_tuple_windows()
        .any(|(&a, &b)| (g.has_edge(x, a) && g.has_edge(z, b)) || (g.has_edge(z, a) && g.has_edge(x, b)))
}

fn rotation_exists(g: &Graph, c: &OrientedCycle, x: usize, z: usize) -> bool {
    let seq = c.sequence();
    let k = seq.len();
    (0..k).any(|i| {
        (0..k).any(|j| {
            i != j
                && g.has_edge(x, seq[i])
                && g.has_edge(z, seq[j])
                && g.has_edge(seq[(i + 1) % k], seq[(j + 1) % k])
        })
    })
}

struct Counts {
    hypothesis: usize,
    extended: usize,
    failed: usize,
}

/// Every cycle `C` found on every vertex subset of every connected graph on
/// up to seven vertices, with every vertex off `C`.
#[test]
fn single_vertex_on_all_small_graphs() {
    let mut counts = Counts { hypothesis: 0, extended: 0, failed: 0 };
    for n in 4..=7 {
        for g in enumerate_small(n, EnumFilter::None).unwrap() {
            let tau = toughness(&g).unwrap().tau;
            for bits in 0u128..1 << n {
                let u = VertexSet::from_bits(bits);
                if u.len() < 3 || u.len() == n {
                    continue;
                }
                let Some(c) = cycle_on(&g, u) else { continue };
                for x in (g.vertices() - u).iter() {
                    let deg = g.degree_into(x, u);
                    // deg(x, C) > n/(t+1) with t = τ(G) ≥ 1.
                    let hyp = match tau {
                        Toughness::Infinite => true,
                        Toughness::Finite(t) => {
                            t >= Rational::ONE
                                && Rational::from_int(deg as i64) * (t + Rational::ONE)
                                    > Rational::from_int(n as i64)
                        }
                    };
                    counts.hypothesis += usize::from(hyp);
                    match extend_with_vertex(&g, &c, x).unwrap() {
                        Extension::Extended(e) => {
                            counts.extended += 1;
                            assert!(validate_cycle(&g, &e.cycle, u.with(x)));
                            assert_eq!(e.cycle.len(), u.len() + 1);
                        }
                        Extension::Failed(f) => {
                            counts.failed += 1;
                            assert!(!hyp, "hypothesis holds but extension failed: {g:?} {c:?} {x}");
                            let ExtensionFailure::Vertex { successors } = f else {
                                panic!("vertex failure expected")
                            };
                            assert!(g.is_independent(successors));
                            assert_eq!(successors.len(), deg);
                            assert!(!splice_exists(&g, &c, x, x));
                        }
                    }
                }
            }
        }
    }
    assert!(counts.hypothesis > 1000 && counts.failed > 0, "{}", counts.extended);
}

#[test]
fn paths_on_small_free_graphs() {
    let mut seen = (0, 0);
    for n in 5..=7 {
        for g in enumerate_small(n, EnumFilter::P2p3Free).unwrap() {
            assert!(is_p2p3_free(&g));
            for bits in 0u128..1 << n {
                let u = VertexSet::from_bits(bits);
                if u.len() < 3 || u.len() + 2 > n {
                    continue;
                }
                let Some(c) = cycle_on(&g, u) else { continue };
                for (x, z) in (g.vertices() - u).iter().tuple_combinations() {
                    if !g.has_edge(x, z) {
                        continue;
                    }
                    let p = PathSeg::new(&g, vec![x, z]).unwrap();
                    match extend_with_path(&g, &c, &p).unwrap() {
                        Extension::Extended(e) => {
                            seen.0 += 1;
                            assert!(validate_cycle(&g, &e.cycle, u.with(x).with(z)));
                            assert_eq!(e.cycle.len(), u.len() + 2);
                        }
                        Extension::Failed(_) => {
                            seen.1 += 1;
                            assert!(!splice_exists(&g, &c, x, z));
                            assert!(!rotation_exists(&g, &c, x, z));
                        }
                    }
                }
            }
        }
    }
    assert!(seen.0 > 0 && seen.1 > 0, "{seen:?}");
}

#[test]
fn rejects_overlap_and_bad_vertices() {
    let g = toughham::graph::named::complete(5);
    let c = OrientedCycle::new(&g, vec![0, 1, 2]).unwrap();
    assert!(extend_with_vertex(&g, &c, 1).is_err());
    assert!(extend_with_vertex(&g, &c, 9).is_err());
    let p = PathSeg::new(&g, vec![2, 3]).unwrap();
    assert!(extend_with_path(&g, &c, &p).is_err());
}
