//! Star-matchings with prescribed centre degrees, by max-flow.

use crate::error::{Error, Result};
use crate::flow::FlowNet;
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Star {
    pub center: usize,
    pub leaves: VertexSet,
}

impl Star {
    pub fn vertices(&self) -> VertexSet {
        self.leaves.with(self.center)
    }

    /// Leaves in ascending order around the centre: `[l0, center, l1, ..]`
    /// for a `K_{1,2}`, the path the insertion steps use.
    pub fn as_path(&self) -> Vec<usize> {
        let mut leaves = self.leaves.iter();
        let mut out = Vec::with_capacity(self.leaves.len() + 1);
        if let Some(first) = leaves.next() {
            out.push(first);
        }
        out.push(self.center);
        out.extend(leaves);
        out
    }
}

/// Vertex-disjoint stars, one per vertex of the centre side, sorted by centre.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StarMatching {
    pub stars: Vec<Star>,
}

impl StarMatching {
    pub fn vertices(&self) -> VertexSet {
        self.stars
            .iter()
            .fold(VertexSet::EMPTY, |acc, s| acc | s.vertices())
    }

    pub fn centers(&self) -> VertexSet {
        self.stars.iter().map(|s| s.center).collect()
    }

    pub fn leaves(&self) -> VertexSet {
        self.stars
            .iter()
            .fold(VertexSet::EMPTY, |acc, s| acc | s.leaves)
    }

    pub fn is_empty(&self) -> bool {
        self.stars.is_empty()
    }

    pub fn len(&self) -> usize {
        self.stars.len()
    }

    /// Every centre of `x_side` has exactly `demand(center)` leaves in
    /// `y_side`, all adjacent, and the stars are pairwise disjoint.
    pub fn verify(
        &self,
        g: &Graph,
        x_side: VertexSet,
        y_side: VertexSet,
        demand: impl Fn(usize) -> usize,
    ) -> bool {
        if self.centers() != x_side || self.stars.len() != x_side.len() {
            return false;
        }
        let mut used = VertexSet::EMPTY;
        for s in &self.stars {
            if s.leaves.len() != demand(s.center)
                || !s.leaves.is_subset(y_side)
                || !s.leaves.is_subset(g.neighbors(s.center))
                || !used.is_disjoint(s.vertices())
            {
                return false;
            }
            used |= s.vertices();
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StarMatchingResult {
    Matching(StarMatching),
    /// `|N(set) ∩ Y| < Σ_{v ∈ set} f(v)`.
    Deficient {
        set: VertexSet,
        neighbors: VertexSet,
        demand: usize,
    },
}

/// Finds stars centred at every `x ∈ x_side` with exactly `demand(x)` leaves
/// in `y_side`, or a Hall-type deficient subset of `x_side`.
///
/// Max-flow on source → x (capacity f(x)) → y (unbounded) → sink (capacity
/// 1). When the flow falls short, the centres reachable from the source in
/// the residual network form the deficient set.
pub fn star_matching(
    g: &Graph,
    x_side: VertexSet,
    y_side: VertexSet,
    demand: impl Fn(usize) -> usize,
) -> Result<StarMatchingResult> {
    g.check_subset(x_side)?;
    g.check_subset(y_side)?;
    if !x_side.is_disjoint(y_side) {
        return Err(Error::invalid("star-matching sides overlap"));
    }
    let xs = x_side.to_vec();
    let ys = y_side.to_vec();
    let f: Vec<usize> = xs.iter().map(|&x| demand(x)).collect();
    if let Some(i) = f.iter().position(|&d| d == 0) {
        return Err(Error::invalid(format!("demand of centre {} must be positive", xs[i])));
    }
    let total: usize = f.iter().sum();

    // Node layout: 0 = source, 1..=|X| centres, then leaves, then sink.
    let nx = xs.len();
    let ny = ys.len();
    let sink = nx + ny + 1;
    let nodes = sink + 1;
    let big = total + 1;
    let mut net = FlowNet::new(nodes);
    for (i, &x) in xs.iter().enumerate() {
        net.add(0, 1 + i, f[i]);
        for (j, &y) in ys.iter().enumerate() {
            if g.has_edge(x, y) {
                net.add(1 + i, 1 + nx + j, big);
            }
        }
    }
    for j in 0..ny {
        net.add(1 + nx + j, sink, 1);
    }

    if net.max_flow(0, sink, total) == total {
        let stars = xs
            .iter()
            .enumerate()
            .map(|(i, &x)| Star {
                center: x,
                leaves: ys
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| net.flow_on(1 + i, 1 + nx + j) > 0)
                    .map(|(_, &y)| y)
                    .collect(),
            })
            .collect();
        return Ok(StarMatchingResult::Matching(StarMatching { stars }));
    }

    let reach = net.residual_reach(0);
    let set: VertexSet = xs
        .iter()
        .enumerate()
        .filter(|&(i, _)| reach[1 + i])
        .map(|(_, &x)| x)
        .collect();
    let neighbors = g.neighborhood_of(set) & y_side;
    let demand_sum = xs
        .iter()
        .zip(&f)
        .filter(|(x, _)| set.contains(**x))
        .map(|(_, d)| d)
        .sum();
    debug_assert!(neighbors.len() < demand_sum);
    Ok(StarMatchingResult::Deficient {
        set,
        neighbors,
        demand: demand_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    #[test]
    fn single_star() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        match star_matching(&g, set(&[0]), set(&[1, 2]), |_| 2).unwrap() {
            StarMatchingResult::Matching(m) => {
                assert_eq!(m.stars, vec![Star { center: 0, leaves: set(&[1, 2]) }]);
                assert!(m.verify(&g, set(&[0]), set(&[1, 2]), |_| 2));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn counting_deficiency() {
        // a = 0, b = 1, leaves 2,3,4; complete bipartite; demand 2 each needs 4 > 3.
        let mut b = crate::graph::GraphBuilder::new(5).unwrap();
        b.add_join(set(&[0, 1]), set(&[2, 3, 4])).unwrap();
        let g = b.build();
        match star_matching(&g, set(&[0, 1]), set(&[2, 3, 4]), |_| 2).unwrap() {
            StarMatchingResult::Deficient { set: s, neighbors, demand } => {
                assert_eq!(s, set(&[0, 1]));
                assert_eq!(neighbors.len(), 3);
                assert_eq!(demand, 4);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_input() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(star_matching(&g, set(&[0]), set(&[0, 1]), |_| 1).is_err());
        assert!(star_matching(&g, set(&[0]), set(&[1]), |_| 0).is_err());
    }

    #[test]
    fn star_path_order() {
        let s = Star { center: 7, leaves: set(&[2, 9]) };
        assert_eq!(s.as_path(), vec![2, 7, 9]);
    }
}
