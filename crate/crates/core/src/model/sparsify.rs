use rand::Rng;

use super::graph::IntersectionGraph;
use super::incidence::BipartiteIncidence;
use crate::error::{param, Result};
use crate::rng::rng_from_seed;
use crate::Vertex;

/// The coupled pair `(G, G_q)` and the lost edges `X_q = E(G) \ E(G_q)`.
#[derive(Debug, Clone)]
pub struct SparsifiedTriple {
    pub original: IntersectionGraph,
    pub sparse: IntersectionGraph,
    /// Sorted `(u, v)` pairs with `u < v`.
    pub deleted_edges: Vec<(Vertex, Vertex)>,
    pub lambda: f64,
    pub q: f64,
}

/// Deletes each incidence pair of `b` independently with probability
/// `q = λ/n` and materializes both intersection graphs.
pub fn sparsify(b: &BipartiteIncidence, lambda: f64, seed: u64) -> Result<SparsifiedTriple> {
    let n = b.n() as f64;
    if !(lambda >= 0.0) || lambda > n {
        return param(format!("lambda = {lambda} outside [0, n = {n}]"));
    }
    let q = lambda / n;
    let mut rng = rng_from_seed(seed);
    let kept: Vec<Vec<_>> = b
        .feature_sets()
        .iter()
        .map(|ws| ws.iter().copied().filter(|_| !(rng.random::<f64>() < q)).collect())
        .collect();
    let reduced = BipartiteIncidence::from_sorted_unchecked(b.n(), b.m(), kept);
    let original = IntersectionGraph::from_incidence(b.clone());
    let sparse = IntersectionGraph::from_incidence(reduced);
    let deleted_edges = original.edges().filter(|&(u, v)| !sparse.has_edge(u, v)).collect();
    Ok(SparsifiedTriple { original, sparse, deleted_edges, lambda, q })
}
