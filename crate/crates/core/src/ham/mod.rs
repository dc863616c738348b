//! The HAM rotation–extension search for Hamilton cycles.

mod budget;
mod end_sets;
mod engine;
mod frontier;
mod path;

use serde::Serialize;

pub use budget::compute_budget;
pub use end_sets::{end_sets, EndSets};
pub use engine::{
    run_ham, run_ham_with, FailureKind, HamConfig, HamCounters, HamOutcome, HamResult, HamTrace, SearchMode,
    DEFAULT_MAX_QUEUE,
};
pub use frontier::Frontier;
pub use path::{rotate, PathState};

use crate::{Graph, Vertex};

/// True iff `cycle` lists every vertex of `g` exactly once (`n ≥ 3`) and
/// cyclically consecutive vertices are adjacent.
pub fn validate_cycle(g: &Graph, cycle: &[Vertex]) -> bool {
    let n = g.n();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v as usize >= n || std::mem::replace(&mut seen[v as usize], true) {
            return false;
        }
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HamStatus {
    Cycle,
    Failure,
    Overflow,
}

/// Flat report of a HAM run, as printed by `rig ham`.
#[derive(Debug, Clone, Serialize)]
pub struct HamSummary {
    pub result: HamStatus,
    pub n: usize,
    pub budget: usize,
    pub mode: SearchMode,
    pub stage: Option<usize>,
    pub failure_kind: Option<FailureKind>,
    pub h_size: Option<usize>,
    pub end_size: Option<usize>,
    pub end_min_x_size: Option<usize>,
    pub counters: HamCounters,
    pub cycle: Option<Vec<Vertex>>,
}

impl HamSummary {
    pub fn new(g: &Graph, outcome: &HamOutcome) -> Self {
        let mut s = HamSummary {
            result: HamStatus::Cycle,
            n: g.n(),
            budget: outcome.budget,
            mode: outcome.mode,
            stage: None,
            failure_kind: None,
            h_size: None,
            end_size: None,
            end_min_x_size: None,
            counters: outcome.counters,
            cycle: None,
        };
        match &outcome.result {
            HamResult::Cycle(c) => {
                s.stage = Some(c.len());
                s.cycle = Some(c.clone());
            }
            HamResult::Failure(trace) => {
                s.result = HamStatus::Failure;
                s.stage = Some(trace.stage);
                s.failure_kind = Some(trace.kind);
                s.h_size = Some(trace.h_set.len());
                if let Ok(ends) = end_sets(g, trace, outcome.budget) {
                    s.end_size = Some(ends.end_g.len());
                    s.end_min_x_size = ends.min_x_size();
                }
            }
            HamResult::Overflow { stage, .. } => {
                s.result = HamStatus::Overflow;
                s.stage = Some(*stage);
            }
        }
        s
    }
}
