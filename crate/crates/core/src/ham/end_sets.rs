use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::engine::HamTrace;
use crate::error::{param, Result};
use crate::{Graph, Vertex};

/// Endpoint sets of the failing stage.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct EndSets {
    /// `END(G)`: endpoints other than the anchor `u₀` of explored paths
    /// carrying between 1 and `T` rotations.
    pub end_g: BTreeSet<Vertex>,
    /// `END(G, x)` for each `x ∈ END(G)`: partners of `x` on explored paths
    /// carrying between 1 and `2T` rotations.
    pub end_gx: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl EndSets {
    /// `min_x |END(G, x)|`, `None` when `END(G)` is empty.
    pub fn min_x_size(&self) -> Option<usize> {
        self.end_gx.values().map(BTreeSet::len).min()
    }
}

/// Reads `END(G)` and `END(G, x)` off the explored paths of the failing
/// stage. The stage explored every path reachable with up to `2T+1`
/// rotations, so the scan covers both depth windows.
pub fn end_sets(g: &Graph, trace: &HamTrace, budget: usize) -> Result<EndSets> {
    if trace.budget != budget {
        return param(format!("trace was produced with T = {}, asked for T = {budget}", trace.budget));
    }
    let frontier = &trace.frontier;
    if frontier.path_len() != trace.stage || frontier.initial().iter().any(|&v| v as usize >= g.n()) {
        return param("trace does not belong to this graph");
    }
    let anchor = frontier.anchor();
    let mut out = EndSets::default();
    frontier.for_each_endpoints(|rot, a, b| {
        if (1..=budget).contains(&rot) {
            for v in [a, b] {
                if v != anchor {
                    out.end_g.insert(v);
                }
            }
        }
    });
    for &x in &out.end_g {
        out.end_gx.insert(x, BTreeSet::new());
    }
    frontier.for_each_endpoints(|rot, a, b| {
        if (1..=2 * budget).contains(&rot) {
            if let Some(set) = out.end_gx.get_mut(&a) {
                set.insert(b);
            }
            if let Some(set) = out.end_gx.get_mut(&b) {
                set.insert(a);
            }
        }
    });
    Ok(out)
}
