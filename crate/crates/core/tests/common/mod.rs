#![allow(dead_code)]

pub mod props;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rig_core::{BipartiteIncidence, Graph, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi style graph with edge probability `q`, built without the crate's sampler.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, q: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if rng.random::<f64>() < q {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Incidence with each pair present with probability `p`, drawn pair by pair.
pub fn random_incidence(rng: &mut ChaCha8Rng, n: usize, m: usize, p: f64) -> BipartiteIncidence {
    let sets = (0..n).map(|_| (0..m as u32).filter(|_| rng.random::<f64>() < p).collect()).collect();
    BipartiteIncidence::from_feature_sets(n, m, sets).unwrap()
}

/// Edge set by definition: `u ~ v` iff their feature sets meet.
pub fn naive_edges(b: &BipartiteIncidence) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    for u in 0..b.n() as Vertex {
        for v in u + 1..b.n() as Vertex {
            if b.features_of(u).iter().any(|w| b.features_of(v).contains(w)) {
                out.push((u, v));
            }
        }
    }
    out
}

/// `(u₁..u_i) ++ reverse(u_{i+1}..u_k)` for 1-based `i`.
pub fn rotate_by_definition(path: &[Vertex], i: usize) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = path[..i].to_vec();
    out.extend(path[i..].iter().rev());
    out
}
