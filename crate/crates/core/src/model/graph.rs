use std::ops::Deref;

use rustc_hash::FxHashSet;

use super::incidence::BipartiteIncidence;
use crate::error::{param, Result};
use crate::Vertex;

#[inline]
pub(crate) fn edge_key(u: Vertex, v: Vertex) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    ((a as u64) << 32) | b as u64
}

/// Simple undirected graph on vertices `0..n`.
///
/// Neighbour lists are sorted; edge membership goes through a hash index.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    index: FxHashSet<u64>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self::from_adjacency_unchecked(vec![Vec::new(); n])
    }

    /// Builds a graph from an edge list. Self-loops are rejected, parallel
    /// edges collapse.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return param(format!("edge {{{u},{v}}} out of range for n = {n}"));
            }
            if u == v {
                return param(format!("self-loop at {u}"));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        Ok(Self::from_adjacency_unchecked(adj))
    }

    pub(crate) fn from_adjacency_unchecked(mut adj: Vec<Vec<Vertex>>) -> Self {
        let mut index = FxHashSet::default();
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            for &v in list.iter() {
                if (u as Vertex) < v {
                    index.insert(edge_key(u as Vertex, v));
                }
            }
        }
        Self { adj, index }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.index.contains(&edge_key(u, v))
    }

    pub fn edge_count(&self) -> usize {
        self.index.len()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as Vertex;
            list.iter().filter(move |&&v| u < v).map(move |&v| (u, v))
        })
    }

    /// `δ(G)`; `None` on the empty vertex set.
    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    pub fn count_degree(&self, k: usize) -> usize {
        self.adj.iter().filter(|l| l.len() == k).count()
    }
}

/// Intersection graph together with the incidence structure that generated it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    graph: Graph,
    source: BipartiteIncidence,
}

impl IntersectionGraph {
    /// Connects every pair of vertices that share a feature.
    pub fn from_incidence(source: BipartiteIncidence) -> Self {
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); source.n()];
        for vs in source.vertex_sets() {
            for (i, &u) in vs.iter().enumerate() {
                for &v in &vs[i + 1..] {
                    adj[u as usize].push(v);
                    adj[v as usize].push(u);
                }
            }
        }
        Self { graph: Graph::from_adjacency_unchecked(adj), source }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn source(&self) -> &BipartiteIncidence {
        &self.source
    }

    pub fn into_parts(self) -> (Graph, BipartiteIncidence) {
        (self.graph, self.source)
    }
}

impl Deref for IntersectionGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.graph
    }
}

/// Intersection graph of `b`; the result keeps a copy of `b` as its source.
pub fn intersection_of(b: &BipartiteIncidence) -> IntersectionGraph {
    IntersectionGraph::from_incidence(b.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shared_feature_gives_single_edge() {
        let b = BipartiteIncidence::from_feature_sets(3, 1, vec![vec![0], vec![0], vec![]]).unwrap();
        let g = intersection_of(&b);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(g.degree(2), 0);
        assert_eq!(g.min_degree(), Some(0));
    }

    #[test]
    fn disjoint_sets_give_no_edges() {
        let b = BipartiteIncidence::from_feature_sets(3, 3, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(intersection_of(&b).edge_count(), 0);
    }

    #[test]
    fn from_edges_validation() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (2, 1)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(1, 2) && g.has_edge(2, 1) && !g.has_edge(0, 2));
        assert!(!g.has_edge(1, 1));
    }
}
