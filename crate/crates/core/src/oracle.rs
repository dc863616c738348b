//! Exact ground truth for small instances.

use serde::Serialize;

use crate::error::{RigError, Result};
use crate::{BipartiteIncidence, Graph, Vertex};

pub const MAX_ORACLE_N: usize = 20;
pub const MAX_BRUTEFORCE_PAIRS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub hamiltonian: bool,
    pub witness_cycle: Option<Vec<Vertex>>,
}

/// Exact Hamiltonicity by dynamic programming over vertex subsets, with
/// paths anchored at vertex 0. `O(2ⁿ·n²)`; `n ≤ 20`.
pub fn is_hamiltonian_bruteforce(g: &Graph) -> Result<OracleVerdict> {
    let n = g.n();
    if n > MAX_ORACLE_N {
        return Err(RigError::Capacity(format!("subset DP limited to n <= {MAX_ORACLE_N}, got {n}")));
    }
    let no = OracleVerdict { hamiltonian: false, witness_cycle: None };
    if n < 3 {
        return Ok(no);
    }
    // Vertex v >= 1 is bit v-1.
    let bits = n - 1;
    let adj: Vec<u32> = (1..n)
        .map(|v| {
            g.neighbors(v as Vertex)
                .iter()
                .filter(|&&u| u != 0)
                .fold(0u32, |acc, &u| acc | 1 << (u - 1))
        })
        .collect();
    let from_zero = g.neighbors(0).iter().filter(|&&u| u != 0).fold(0u32, |acc, &u| acc | 1 << (u - 1));
    let full = (1u32 << bits) - 1;
    // ends[mask]: vertices e such that some path 0 → … → e visits exactly `mask`.
    let mut ends = vec![0u32; 1 << bits];
    for e in 0..bits {
        if from_zero >> e & 1 == 1 {
            ends[1 << e] |= 1 << e;
        }
    }
    for mask in 1..=full {
        let mut es = ends[mask as usize];
        while es != 0 {
            let e = es.trailing_zeros() as usize;
            es &= es - 1;
            let mut next = adj[e] & !mask;
            while next != 0 {
                let u = next.trailing_zeros();
                next &= next - 1;
                ends[(mask | 1 << u) as usize] |= 1 << u;
            }
        }
    }
    let closing = ends[full as usize] & from_zero;
    if closing == 0 {
        return Ok(no);
    }
    let mut rev = Vec::with_capacity(n);
    let mut mask = full;
    let mut e = closing.trailing_zeros();
    loop {
        rev.push(e as Vertex + 1);
        let prev = mask & !(1 << e);
        if prev == 0 {
            break;
        }
        let cand = ends[prev as usize] & adj[e as usize];
        e = cand.trailing_zeros();
        mask = prev;
    }
    rev.push(0);
    rev.reverse();
    Ok(OracleVerdict { hamiltonian: true, witness_cycle: Some(rev) })
}

/// Edges of the intersection graph by direct pairwise set intersection.
pub fn edges_bruteforce(b: &BipartiteIncidence) -> Result<Vec<(Vertex, Vertex)>> {
    if b.n().saturating_mul(b.m()) > MAX_BRUTEFORCE_PAIRS {
        return Err(RigError::Capacity(format!("n*m above {MAX_BRUTEFORCE_PAIRS}")));
    }
    let mut edges = Vec::new();
    for u in 0..b.n() as Vertex {
        for v in u + 1..b.n() as Vertex {
            let (x, y) = (b.features_of(u), b.features_of(v));
            let (mut i, mut j) = (0, 0);
            while i < x.len() && j < y.len() {
                match x[i].cmp(&y[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        edges.push((u, v));
                        break;
                    }
                }
            }
        }
    }
    Ok(edges)
}
