//! Test families and exhaustive small-graph corpora.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexSet, MAX_VERTICES};
use crate::pattern::{find_p2p3, is_p2p3_free};

/// Largest order [`enumerate_small`] accepts.
pub const MAX_ENUM_N: usize = 9;

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Complete { n: usize },
    Cycle { n: usize },
    /// `K_m` joined to an independent set of `s` vertices.
    CompleteSplit { m: usize, s: usize },
    /// `K_clique` plus `independent` vertices, each clique/independent pair
    /// joined with probability `density`.
    Split { clique: usize, independent: usize, density: f64, seed: u64 },
    /// `K_a` and `K_b` joined to a `k`-clique.
    TwoCliquesJoin { a: usize, b: usize, k: usize },
    /// `G(n, p)` with every induced `P₂ ∪ P₃` repaired by a chord.
    RandomFree { n: usize, p: f64, seed: u64 },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::Cycle { .. } => "cycle",
            FamilySpec::CompleteSplit { .. } => "complete-split",
            FamilySpec::Split { .. } => "split",
            FamilySpec::TwoCliquesJoin { .. } => "two-cliques-join",
            FamilySpec::RandomFree { .. } => "random-free",
        }
    }

    /// Builds a spec from a family name and its positional parameters.
    /// Randomized families take their seed from `seed`.
    pub fn from_parts(name: &str, params: &[&str], seed: u64) -> Result<Self> {
        fn int(s: &str) -> Result<usize> {
            s.trim()
                .parse()
                .map_err(|_| Error::invalid(format!("expected a count, got {s:?}")))
        }
        fn prob(s: &str) -> Result<f64> {
            s.trim()
                .parse()
                .map_err(|_| Error::invalid(format!("expected a probability, got {s:?}")))
        }
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::invalid(format!(
                    "{name} takes {k} parameters, got {}",
                    params.len()
                )))
            }
        };
        let spec = match name {
            "complete" => {
                arity(1)?;
                FamilySpec::Complete { n: int(params[0])? }
            }
            "cycle" => {
                arity(1)?;
                FamilySpec::Cycle { n: int(params[0])? }
            }
            "complete-split" => {
                arity(2)?;
                FamilySpec::CompleteSplit {
                    m: int(params[0])?,
                    s: int(params[1])?,
                }
            }
            "split" => {
                arity(3)?;
                FamilySpec::Split {
                    clique: int(params[0])?,
                    independent: int(params[1])?,
                    density: prob(params[2])?,
                    seed,
                }
            }
            "two-cliques-join" => {
                arity(3)?;
                FamilySpec::TwoCliquesJoin {
                    a: int(params[0])?,
                    b: int(params[1])?,
                    k: int(params[2])?,
                }
            }
            "random-free" => {
                arity(2)?;
                FamilySpec::RandomFree {
                    n: int(params[0])?,
                    p: prob(params[1])?,
                    seed,
                }
            }
            _ => return Err(Error::invalid(format!("unknown family {name:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// The same family with a different seed; a no-op for deterministic ones.
    pub fn reseeded(&self, new_seed: u64) -> Self {
        let mut out = self.clone();
        match &mut out {
            FamilySpec::Split { seed, .. } | FamilySpec::RandomFree { seed, .. } => *seed = new_seed,
            _ => {}
        }
        out
    }

    pub fn is_randomized(&self) -> bool {
        matches!(self, FamilySpec::Split { .. } | FamilySpec::RandomFree { .. })
    }

    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Complete { n } | FamilySpec::Cycle { n } | FamilySpec::RandomFree { n, .. } => n,
            FamilySpec::CompleteSplit { m, s } => m + s,
            FamilySpec::Split { clique, independent, .. } => clique + independent,
            FamilySpec::TwoCliquesJoin { a, b, k } => a + b + k,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.order();
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::invalid(format!(
                "{} needs 1..={MAX_VERTICES} vertices, got {n}",
                self.name()
            )));
        }
        let bad = match *self {
            FamilySpec::Cycle { n } => n < 3,
            FamilySpec::CompleteSplit { m, .. } => m == 0,
            FamilySpec::Split { density, .. } => !(0.0..=1.0).contains(&density),
            FamilySpec::TwoCliquesJoin { a, b, k } => a == 0 || b == 0 || k == 0,
            FamilySpec::RandomFree { p, .. } => !(0.0..=1.0).contains(&p),
            FamilySpec::Complete { .. } => false,
        };
        if bad {
            return Err(Error::invalid(format!("parameters out of range: {self}")));
        }
        Ok(())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Complete { n } => write!(f, "complete({n})"),
            FamilySpec::Cycle { n } => write!(f, "cycle({n})"),
            FamilySpec::CompleteSplit { m, s } => write!(f, "complete-split({m},{s})"),
            FamilySpec::Split { clique, independent, density, seed } => {
                write!(f, "split({clique},{independent},{density},seed={seed})")
            }
            FamilySpec::TwoCliquesJoin { a, b, k } => write!(f, "two-cliques-join({a},{b},{k})"),
            FamilySpec::RandomFree { n, p, seed } => write!(f, "random-free({n},{p},seed={seed})"),
        }
    }
}

fn range(a: usize, b: usize) -> VertexSet {
    (a..b).collect()
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.order();
    let mut gb = GraphBuilder::new(n)?;
    match *spec {
        FamilySpec::Complete { n } => {
            gb.add_clique(range(0, n))?;
        }
        FamilySpec::Cycle { n } => {
            for i in 0..n {
                gb.add_edge(i, (i + 1) % n)?;
            }
        }
        FamilySpec::CompleteSplit { m, s } => {
            gb.add_clique(range(0, m))?;
            gb.add_join(range(0, m), range(m, m + s))?;
        }
        FamilySpec::Split { clique, density, seed, .. } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            gb.add_clique(range(0, clique))?;
            for x in clique..n {
                for c in 0..clique {
                    if rng.gen_bool(density) {
                        gb.add_edge(c, x)?;
                    }
                }
            }
        }
        FamilySpec::TwoCliquesJoin { a, b, .. } => {
            gb.add_clique(range(0, a))?;
            gb.add_clique(range(a, a + b))?;
            gb.add_clique(range(a + b, n))?;
            gb.add_join(range(0, a + b), range(a + b, n))?;
        }
        FamilySpec::RandomFree { n, p, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        gb.add_edge(u, v)?;
                    }
                }
            }
            return repair_free(gb.build());
        }
    }
    Ok(gb.build())
}

/// Adds a chord inside each found `P₂ ∪ P₃` copy (between its two
/// lowest-numbered non-adjacent vertices) until none is left.
pub fn repair_free(mut g: Graph) -> Result<Graph> {
    let cap = 10 * g.n() * g.n();
    for _ in 0..=cap {
        let Some(w) = find_p2p3(&g) else {
            return Ok(g);
        };
        let vs = w.vertex_set().to_vec();
        let (u, v) = vs
            .iter()
            .flat_map(|&u| vs.iter().map(move |&v| (u, v)))
            .find(|&(u, v)| u < v && !g.has_edge(u, v))
            .expect("a P2 ∪ P3 copy has non-adjacent pairs");
        g = g.with_edge(u, v)?;
    }
    Err(Error::precondition(format!("repair did not finish within {cap} chords")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnumFilter {
    /// Every connected graph.
    None,
    /// Connected `(P₂ ∪ P₃)`-free graphs.
    P2p3Free,
}

impl FromStr for EnumFilter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" | "all" | "connected" => Ok(EnumFilter::None),
            "p2p3-free" => Ok(EnumFilter::P2p3Free),
            _ => Err(Error::invalid(format!("unknown filter {s:?}"))),
        }
    }
}

impl fmt::Display for EnumFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnumFilter::None => "none",
            EnumFilter::P2p3Free => "p2p3-free",
        })
    }
}

/// All connected graphs on `n ≤ 9` vertices up to isomorphism, each in
/// canonical labelling, sorted by canonical code.
pub fn enumerate_small(n: usize, filter: EnumFilter) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_ENUM_N {
        return Err(Error::invalid(format!("enumeration needs 1..={MAX_ENUM_N} vertices, got {n}")));
    }
    Ok(all_graphs(n, filter)
        .into_iter()
        .map(|code| decode_code(n, code))
        .filter(|g| g.is_connected())
        .collect())
}

/// Canonical codes of all graphs (connected or not) on `n` vertices. The
/// free filter is hereditary, so it prunes every level.
fn all_graphs(n: usize, filter: EnumFilter) -> BTreeSet<u64> {
    let mut level = BTreeSet::from([0u64]);
    for k in 2..=n {
        let mut next = BTreeSet::new();
        for &code in &level {
            let base = decode_code(k - 1, code);
            for mask in 0u32..(1 << (k - 1)) {
                let mut adj: Vec<VertexSet> = (0..k - 1)
                    .map(|v| {
                        let nb = base.neighbors(v);
                        if mask >> v & 1 == 1 {
                            nb.with(k - 1)
                        } else {
                            nb
                        }
                    })
                    .collect();
                adj.push((0..k - 1).filter(|&v| mask >> v & 1 == 1).collect());
                let g = Graph::from_adjacency(adj).expect("symmetric by construction");
                if filter == EnumFilter::P2p3Free && !is_p2p3_free(&g) {
                    continue;
                }
                next.insert(canonical_code(&g));
            }
        }
        level = next;
    }
    level
}

/// Upper-triangle adjacency bits of `g` relabelled by `order` (new vertex
/// `i` is old vertex `order[i]`), pair `(0, 1)` most significant.
fn code_of(g: &Graph, order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | g.has_edge(order[i], order[j]) as u64;
        }
    }
    code
}

fn decode_code(n: usize, code: u64) -> Graph {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    let mut bit = pairs;
    for i in 0..n {
        for j in i + 1..n {
            bit -= 1;
            if code >> bit & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("code fits the order")
}

/// Canonical form by individualization and colour refinement: the minimum
/// code over all discrete refinements of the degree partition. Only the
/// labelling search is pruned by refinement, so the result is exact.
pub fn canonical_code(g: &Graph) -> u64 {
    assert!(g.n() <= 11, "canonical codes are 64-bit");
    let cells = refine(g, vec![g.vertices().to_vec()]);
    let mut best = None;
    search(g, cells, &mut best);
    best.unwrap_or(0)
}

/// `g` relabelled into its canonical form.
pub fn canonical_form(g: &Graph) -> Graph {
    decode_code(g.n(), canonical_code(g))
}

fn search(g: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<u64>) {
    let Some(i) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = code_of(g, &order);
        *best = Some(best.map_or(code, |b| b.min(code)));
        return;
    };
    for &v in &cells[i] {
        let mut next = cells[..i].to_vec();
        next.push(vec![v]);
        next.push(cells[i].iter().copied().filter(|&u| u != v).collect());
        next.extend_from_slice(&cells[i + 1..]);
        search(g, refine(g, next), best);
    }
}

/// Splits cells by neighbour counts into every cell until stable. New
/// cells are ordered by their count signature, which keeps the partition
/// independent of vertex labels.
fn refine(g: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let sets: Vec<VertexSet> = cells.iter().map(|c| c.iter().collect()).collect();
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            let mut keyed: Vec<(Vec<usize>, usize)> = cell
                .iter()
                .map(|&v| (sets.iter().map(|&s| g.degree_into(v, s)).collect(), v))
                .collect();
            keyed.sort();
            let mut group: Vec<usize> = Vec::new();
            for idx in 0..keyed.len() {
                if idx > 0 && keyed[idx].0 != keyed[idx - 1].0 {
                    next.push(std::mem::take(&mut group));
                }
                group.push(keyed[idx].1);
            }
            next.push(group);
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toughness::toughness;
    use crate::rational::Rational;

    #[test]
    fn family_shapes() {
        let g = generate(&FamilySpec::CompleteSplit { m: 4, s: 2 }).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 6 + 8));
        assert_eq!(toughness(&g).unwrap().tau.finite(), Some(Rational::new(2, 1)));
        let g = generate(&FamilySpec::TwoCliquesJoin { a: 16, b: 16, k: 60 }).unwrap();
        assert_eq!(g.n(), 92);
        assert!(is_p2p3_free(&g));
    }

    #[test]
    fn random_free_is_free_and_seeded() {
        let spec = FamilySpec::from_parts("random-free", &["8", "0.5"], 1).unwrap();
        let g = generate(&spec).unwrap();
        assert!(is_p2p3_free(&g));
        assert_eq!(g, generate(&spec).unwrap());
    }

    #[test]
    fn bad_specs() {
        assert!(FamilySpec::from_parts("cycle", &["2"], 0).is_err());
        assert!(FamilySpec::from_parts("random-free", &["8", "1.5"], 0).is_err());
        assert!(FamilySpec::from_parts("complete", &["200"], 0).is_err());
        assert!(FamilySpec::from_parts("wheel", &["5"], 0).is_err());
        assert!(enumerate_small(10, EnumFilter::None).is_err());
    }

    #[test]
    fn canonical_code_ignores_labels() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        let h = g.permute(&[4, 2, 0, 3, 1]).unwrap();
        assert_eq!(canonical_code(&g), canonical_code(&h));
        assert_eq!(canonical_form(&h), canonical_form(&g));
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=6)
            .map(|n| enumerate_small(n, EnumFilter::None).unwrap().len())
            .collect();
        assert_eq!(counts, [1, 1, 2, 6, 21, 112]);
    }
}
