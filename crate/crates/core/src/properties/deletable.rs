use serde::Serialize;

use super::report::Witness;
use super::{Partition, Variant};
use crate::error::{param, Result};
use crate::ham::HamTrace;
use crate::model::ModelParams;
use crate::scalar::Scalar;
use crate::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DeletableClause {
    D1,
    D2,
    D3,
    #[serde(rename = "D1*")]
    D1Star,
    #[serde(rename = "D2*")]
    D2Star,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeletableVerdict {
    pub deletable: bool,
    pub failing_clause: Option<DeletableClause>,
    pub witness: Option<Witness>,
}

/// Whether `X ⊆ E(G)` is deletable with constant `b₂`.
///
/// Plain: D1 (no `X` edge touches `SMALL`), D2 (at most `b₂·d` `X` edges at
/// each `LARGE` vertex), D3 (`X ∩ H(G) = ∅`). Starred: D1* (`b₂·d₀` at
/// `SMALL*`), D2* (`b₂·d₁` at `LARGE*`), D3. The first failing clause is
/// reported. `d` is `params.d`.
pub fn is_deletable<F: Scalar>(
    g: &Graph,
    part: &Partition<F>,
    trace: &HamTrace,
    x: &[(Vertex, Vertex)],
    b2: F,
    params: &ModelParams<F>,
) -> Result<DeletableVerdict> {
    if part.n() != g.n() {
        return param("partition and graph disagree on n");
    }
    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(x.len());
    for &(u, v) in x {
        if !g.has_edge(u, v) {
            return param(format!("({u}, {v}) is not an edge of G"));
        }
        edges.push((u.min(v), u.max(v)));
    }
    edges.sort_unstable();
    edges.dedup();

    let mut load = vec![0usize; g.n()];
    for &(u, v) in &edges {
        load[u as usize] += 1;
        load[v as usize] += 1;
    }
    let fail = |clause, w: Witness| Ok(DeletableVerdict { deletable: false, failing_clause: Some(clause), witness: Some(w) });

    let (small_clause, small_bound, large_clause, large_bound) = match part.variant {
        Variant::Plain => (DeletableClause::D1, F::zero(), DeletableClause::D2, b2 * params.d),
        Variant::Starred => (DeletableClause::D1Star, b2 * params.d0, DeletableClause::D2Star, b2 * params.d1),
    };
    for (clause, set, bound) in [(small_clause, &part.small, small_bound), (large_clause, &part.large, large_bound)] {
        if let Some(&v) = set.iter().find(|&&v| F::from_count(load[v as usize]) > bound) {
            let incident: Vec<Vertex> =
                edges.iter().filter(|e| e.0 == v || e.1 == v).map(|&(a, b)| if a == v { b } else { a }).collect();
            let mut vertices = vec![v];
            vertices.extend(incident);
            return fail(clause, Witness::vertices(vertices).value(load[v as usize] as f64).bound(bound.to_f64_lossy()));
        }
    }
    if let Some(&(u, v)) = edges.iter().find(|e| trace.h_set.binary_search(e).is_ok()) {
        return fail(DeletableClause::D3, Witness::vertices(vec![u, v]));
    }
    Ok(DeletableVerdict { deletable: true, failing_clause: None, witness: None })
}
