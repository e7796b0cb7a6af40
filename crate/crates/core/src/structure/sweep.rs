use super::lemmas::{check_lemma3, check_lemma4, check_lemma5, LemmaVerdict};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::pattern::find_p2p3;

/// How often each checker applied and how often it reported a violation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LemmaTally {
    pub cutsets: usize,
    pub lemma3: (usize, usize),
    pub lemma4: (usize, usize),
    pub lemma5: (usize, usize),
}

impl LemmaTally {
    pub fn violations(&self) -> usize {
        self.lemma3.1 + self.lemma4.1 + self.lemma5.1
    }

    pub fn add(&mut self, other: &LemmaTally) {
        self.cutsets += other.cutsets;
        for (a, b) in [
            (&mut self.lemma3, other.lemma3),
            (&mut self.lemma4, other.lemma4),
            (&mut self.lemma5, other.lemma5),
        ] {
            a.0 += b.0;
            a.1 += b.1;
        }
    }
}

fn tally<V>(slot: &mut (usize, usize), r: Result<LemmaVerdict<V>>) -> Result<()> {
    match r {
        Ok(v) => {
            slot.0 += 1;
            slot.1 += usize::from(!v.is_pass());
            Ok(())
        }
        Err(Error::Precondition(_)) => Ok(()),
        Err(e) => Err(e),
    }
}

/// Runs the three clique-component checkers on every cutset of `g`, and
/// the single-component checker on every vertex of each cutset.
///
/// Errors if `g` has more than 20 vertices or contains `P₂ ∪ P₃`.
pub fn sweep_lemmas(g: &Graph) -> Result<LemmaTally> {
    let n = g.n();
    if n > 20 {
        return Err(Error::Capacity {
            n,
            limit: 20,
            hint: "",
        });
    }
    if let Some(w) = find_p2p3(g) {
        return Err(Error::NotFree(w));
    }
    let mut t = LemmaTally::default();
    for bits in 1u128..(1 << n) - 1 {
        let s = VertexSet::from_bits(bits);
        if g.count_components(g.vertices() - s) < 2 {
            continue;
        }
        t.cutsets += 1;
        tally(&mut t.lemma3, check_lemma3(g, s))?;
        for x in s.iter() {
            tally(&mut t.lemma4, check_lemma4(g, s, x))?;
        }
        tally(&mut t.lemma5, check_lemma5(g, s))?;
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn path_tally() {
        // P4 has cutsets {1}, {2}, {1,2}, {0,2}, {1,3}.
        let t = sweep_lemmas(&named::path(4)).unwrap();
        assert_eq!(t.cutsets, 5);
        assert_eq!(t.violations(), 0);
        assert_eq!(t.lemma3.0, 5);
    }

    #[test]
    fn rejects_pattern() {
        assert!(matches!(sweep_lemmas(&named::p2_union_p3()), Err(Error::NotFree(_))));
    }
}
