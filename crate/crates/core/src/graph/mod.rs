//! Dense simple graphs on at most 128 vertices.
//!
//! Adjacency is one [`VertexSet`] per vertex. Graphs are immutable; vertex
//! removal is always expressed by passing a mask of the vertices that remain.

mod codec;
mod vertex_set;

pub use codec::{decode_graph6, encode_graph6, parse_edge_list, parse_graphs, write_edge_list};
pub use vertex_set::{Iter as VertexIter, VertexSet, MAX_VERTICES};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                n,
                limit: MAX_VERTICES,
                hint: "",
            });
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut b = GraphBuilder::new(n)?;
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    /// Builds a graph from per-vertex neighbour sets, checking symmetry and loops.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Self> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                n,
                limit: MAX_VERTICES,
                hint: "",
            });
        }
        let all = VertexSet::full(n);
        for (v, row) in adj.iter().enumerate() {
            if !row.is_subset(all) {
                return Err(Error::invalid(format!("vertex {v} has a neighbour out of range")));
            }
            if row.contains(v) {
                return Err(Error::invalid(format!("loop at vertex {v}")));
            }
            for u in row.iter() {
                if !adj[u].contains(v) {
                    return Err(Error::invalid(format!("adjacency not symmetric at {u}-{v}")));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// Closed neighbourhood `N[v]`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        self.adj[v].with(v)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// `|N(x) ∩ s|`.
    #[inline]
    pub fn degree_into(&self, x: usize, s: VertexSet) -> usize {
        (self.adj[x] & s).len()
    }

    /// Union of the neighbourhoods of the members of `s` (may intersect `s`).
    pub fn neighborhood_of(&self, s: VertexSet) -> VertexSet {
        s.iter().fold(VertexSet::EMPTY, |acc, v| acc | self.adj[v])
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) + 1 == self.n)
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.without(v).is_subset(self.adj[v]))
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    /// Vertices of `within` reachable from `start` inside `G[within]`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start) & within;
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next |= self.adj[v];
            }
            frontier = next & within - seen;
            seen |= frontier;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices().first() {
            None => true,
            Some(v) => self.reach(v, self.vertices()).len() == self.n,
        }
    }

    /// Number of components of `G[within]`, without materialising them.
    pub fn count_components(&self, within: VertexSet) -> usize {
        let mut rest = within;
        let mut c = 0;
        while let Some(v) = rest.first() {
            rest = rest - self.reach(v, rest);
            c += 1;
        }
        c
    }

    /// Connected components of `G[within]`, ordered by least vertex.
    pub fn components(&self, within: VertexSet) -> Result<ComponentPartition> {
        self.check_subset(within)?;
        Ok(self.components_unchecked(within))
    }

    pub(crate) fn components_unchecked(&self, within: VertexSet) -> ComponentPartition {
        let mut rest = within;
        let mut components = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self.reach(v, rest);
            rest = rest - comp;
            components.push(Component {
                vertices: comp,
                clique: self.is_clique(comp),
            });
        }
        ComponentPartition { components }
    }

    /// The subgraph induced on `s`, relabelled `0..|s|` in increasing order.
    /// The returned map sends new labels to original vertices.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_subset(s)?;
        let map = s.to_vec();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| (self.adj[v] & s).iter().map(|u| index[u]).collect())
            .collect();
        Ok((Graph { n: map.len(), adj }, map))
    }

    /// A copy of this graph with the edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::invalid(format!("loop at vertex {u}")));
        }
        let mut g = self.clone();
        g.adj[u].insert(v);
        g.adj[v].insert(u);
        Ok(g)
    }

    /// A copy of this graph with the edge `uv` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let mut g = self.clone();
        g.adj[u].remove(v);
        g.adj[v].remove(u);
        Ok(g)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::invalid("permutation length differs from vertex count"));
        }
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for (u, v) in self.edges() {
            adj[perm[u]].insert(perm[v]);
            adj[perm[v]].insert(perm[u]);
        }
        Graph::from_adjacency(adj)
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertices();
        let adj = (0..self.n).map(|v| all.without(v) - self.adj[v]).collect();
        Graph { n: self.n, adj }
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::invalid(format!(
                "vertex {v} out of range for graph on {} vertices",
                self.n
            )));
        }
        Ok(())
    }

    pub(crate) fn check_subset(&self, s: VertexSet) -> Result<()> {
        if !s.is_subset(self.vertices()) {
            return Err(Error::invalid(format!(
                "vertex set {s} not contained in 0..{}",
                self.n
            )));
        }
        Ok(())
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}

/// Incremental construction of a [`Graph`].
pub struct GraphBuilder {
    n: usize,
    adj: Vec<VertexSet>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                n,
                limit: MAX_VERTICES,
                hint: "",
            });
        }
        Ok(GraphBuilder {
            n,
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<&mut Self> {
        if u >= self.n || v >= self.n {
            return Err(Error::invalid(format!(
                "edge {u}-{v} out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::invalid(format!("loop at vertex {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(self)
    }

    /// Makes `s` a clique.
    pub fn add_clique(&mut self, s: VertexSet) -> Result<&mut Self> {
        for u in s.iter() {
            for v in s.iter().filter(|&v| v > u) {
                self.add_edge(u, v)?;
            }
        }
        Ok(self)
    }

    /// Joins every vertex of `a` to every vertex of `b`.
    pub fn add_join(&mut self, a: VertexSet, b: VertexSet) -> Result<&mut Self> {
        for u in a.iter() {
            for v in b.iter().filter(|&v| v != u) {
                self.add_edge(u, v)?;
            }
        }
        Ok(self)
    }

    pub fn build(self) -> Graph {
        Graph {
            n: self.n,
            adj: self.adj,
        }
    }
}

/// One connected component of an induced subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Component {
    pub vertices: VertexSet,
    pub clique: bool,
}

impl Component {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.vertices.len() == 1
    }
}

/// Components of `G[within]`, ordered by their least vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub components: Vec<Component>,
}

impl ComponentPartition {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Component> {
        self.components.iter()
    }

    /// Index of the component containing `v`.
    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.components.iter().position(|c| c.vertices.contains(v))
    }

    pub fn nontrivial_count(&self) -> usize {
        self.components.iter().filter(|c| !c.is_trivial()).count()
    }

    pub fn all_cliques(&self) -> bool {
        self.components.iter().all(|c| c.clique)
    }

    /// Indices of the components `x` has a neighbour in.
    pub fn touched_by(&self, g: &Graph, x: usize) -> Vec<usize> {
        let nx = g.neighbors(x);
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.vertices.is_disjoint(nx))
            .map(|(i, _)| i)
            .collect()
    }
}

impl<'a> IntoIterator for &'a ComponentPartition {
    type Item = &'a Component;
    type IntoIter = std::slice::Iter<'a, Component>;
    fn into_iter(self) -> Self::IntoIter {
        self.components.iter()
    }
}

/// Frequently used small graphs.
pub mod named {
    use super::*;

    pub fn complete(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n).expect("capacity");
        b.add_clique(VertexSet::full(n)).expect("in range");
        b.build()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("valid cycle")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("valid path")
    }

    /// `K_{a,b}` with the `a`-side on `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = GraphBuilder::new(a + b).expect("capacity");
        let left = VertexSet::full(a);
        let right = VertexSet::full(a + b) - left;
        g.add_join(left, right).expect("in range");
        g.build()
    }

    pub fn star(leaves: usize) -> Graph {
        complete_bipartite(1, leaves)
    }

    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &edges).expect("valid petersen")
    }

    /// `P2 ∪ P3`: edge `0-1`, path `2-3-4`.
    pub fn p2_union_p3() -> Graph {
        Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4)]).expect("valid")
    }

    /// `2K2`: edges `0-1`, `2-3`.
    pub fn two_k2() -> Graph {
        Graph::from_edges(4, &[(0, 1), (2, 3)]).expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    #[test]
    fn induced_path_of_cycle() {
        // C5 labelled 0..4; {0,1,2} induces a path.
        let (h, map) = cycle(5).induced_subgraph(set(&[0, 1, 2])).unwrap();
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(h, path(3));
    }

    #[test]
    fn induced_identity_and_clique() {
        let g = petersen();
        let (h, map) = g.induced_subgraph(g.vertices()).unwrap();
        assert_eq!(h, g);
        assert_eq!(map, (0..10).collect::<Vec<_>>());
        let (k3, _) = complete(4).induced_subgraph(set(&[0, 2, 3])).unwrap();
        assert_eq!(k3, complete(3));
    }

    #[test]
    fn induced_rejects_out_of_range() {
        let err = cycle(5).induced_subgraph(set(&[1, 7])).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }

    #[test]
    fn components_of_split_cycle() {
        let g = cycle(6);
        let p = g.components(g.vertices() - set(&[0, 3])).unwrap();
        assert_eq!(p.count(), 2);
        assert_eq!(p.components[0].vertices, set(&[1, 2]));
        assert_eq!(p.components[1].vertices, set(&[4, 5]));
        assert!(p.all_cliques());
        assert_eq!(p.nontrivial_count(), 2);
    }

    #[test]
    fn components_of_complete_and_edgeless() {
        let p = complete(5).components(VertexSet::full(5)).unwrap();
        assert_eq!(p.count(), 1);
        assert!(p.components[0].clique);
        let e = Graph::empty(4).unwrap();
        let p = e.components(e.vertices()).unwrap();
        assert_eq!(p.count(), 4);
        assert!(p.iter().all(|c| c.is_trivial()));
    }

    #[test]
    fn degree_into_examples() {
        assert_eq!(complete(4).degree_into(0, set(&[1, 2])), 2);
        assert_eq!(cycle(5).degree_into(0, set(&[2, 3])), 0);
        assert_eq!(star(3).degree_into(0, set(&[1, 2, 3])), 3);
    }

    #[test]
    fn builder_rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(Graph::empty(129).is_err());
        assert!(Graph::empty(128).is_ok());
    }

    #[test]
    fn from_adjacency_checks_symmetry() {
        let adj = vec![set(&[1]), VertexSet::EMPTY];
        assert!(Graph::from_adjacency(adj).is_err());
    }

    #[test]
    fn petersen_is_cubic() {
        let g = petersen();
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert!(g.is_connected());
    }
}
