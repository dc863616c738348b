use rayon::prelude::*;
use serde::Serialize;

use super::{worker_count, ExperimentConfig, ExperimentKind};
use crate::error::{Result, RigError};
use crate::ham::{end_sets, run_ham_with, validate_cycle, HamConfig, HamCounters, HamResult};
use crate::model::{derived_params, intersection_of, sample_bipartite, sparsify, MRegime};
use crate::properties::{self, PropertyId, SubsetMode, Variant, Verdict, B1};
use crate::rng::{sub_seed, trial_seed};
use crate::thresholds::solve_p;
use crate::ModelParams;

const SPARSIFY_STREAM: u64 = 1;
const PROPERTY_STREAM: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HamRecord {
    NotRun,
    Success,
    Failure { stage: usize },
    Overflow { stage: usize },
}

impl HamRecord {
    pub fn label(&self) -> &'static str {
        match self {
            Self::NotRun => "not_run",
            Self::Success => "success",
            Self::Failure { .. } => "failure",
            Self::Overflow { .. } => "overflow",
        }
    }

    pub fn fail_stage(&self) -> Option<usize> {
        match *self {
            Self::Failure { stage } | Self::Overflow { stage } => Some(stage),
            _ => None,
        }
    }

    pub fn ran(&self) -> bool {
        *self != Self::NotRun
    }
}

/// Everything measured on one instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    /// Index of the `(n, c)` sweep point.
    pub point: usize,
    /// Trial index within the point.
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub c: f64,
    pub p: f64,
    pub min_degree: usize,
    pub degree1_count: usize,
    pub ham: HamRecord,
    pub counters: HamCounters,
    pub end_size: Option<usize>,
    pub end_min_x_size: Option<usize>,
    pub deletable: Option<bool>,
    pub properties: Vec<(PropertyId, Verdict)>,
}

impl TrialReport {
    pub fn min_degree_ge2(&self) -> bool {
        self.min_degree >= 2
    }
}

/// Resolved parameters of one sweep point.
#[derive(Debug, Clone)]
pub(crate) struct Point {
    pub n: usize,
    pub m: usize,
    pub c: f64,
    pub params: ModelParams,
}

pub(crate) fn resolve_points(config: &ExperimentConfig) -> Result<Vec<Point>> {
    config
        .points()
        .into_iter()
        .map(|(n, m, c)| {
            let p = match config.p_override {
                Some(p) => p,
                None => solve_p(n, m, c, config.eps_regime)?.p,
            };
            Ok(Point { n, m, c, params: derived_params(n, m, p)? })
        })
        .collect()
}

fn property_verdicts(
    g: &crate::IntersectionGraph,
    params: &ModelParams,
    config: &ExperimentConfig,
    seed: u64,
) -> Result<Vec<(PropertyId, Verdict)>> {
    let mode = SubsetMode::Auto { trials: config.property_samples, seed };
    let plain = properties::partition(g, params, Variant::Plain);
    let mut out = vec![
        (PropertyId::P0, properties::check_p0(g, 2).verdict),
        (PropertyId::P1, properties::check_p1(&plain, params).verdict),
        (PropertyId::P2, properties::check_p2(g, &plain).verdict),
        (PropertyId::P3, properties::check_p3(g, &plain, params, B1, mode)?.verdict),
        (PropertyId::P4, properties::check_p4(g, params).verdict),
        (PropertyId::P5, properties::check_p5(g, params)?.verdict),
    ];
    if params.regime_m == MRegime::Sparse {
        let starred = properties::partition(g, params, Variant::Starred);
        out.push((PropertyId::P0Star, properties::check_p0_star(g, params).verdict));
        out.push((PropertyId::P1Star, properties::check_p1(&starred, params).verdict));
        out.push((PropertyId::P3Star, properties::check_p3(g, &starred, params, B1, mode)?.verdict));
    }
    Ok(out)
}

/// Runs trial `trial` of sweep point `point_index`.
pub(crate) fn run_point_trial(
    config: &ExperimentConfig,
    point_index: usize,
    point: &Point,
    trial: usize,
) -> Result<TrialReport> {
    let seed = trial_seed(sub_seed(config.master_seed, point_index as u64), trial as u64);
    let params = &point.params;
    let b = sample_bipartite(point.n, point.m, params.p, seed)?;
    let g = intersection_of(&b);
    let mut report = TrialReport {
        point: point_index,
        trial,
        seed,
        n: point.n,
        m: point.m,
        c: point.c,
        p: params.p,
        min_degree: g.min_degree().unwrap_or(0),
        degree1_count: g.count_degree(1),
        ham: HamRecord::NotRun,
        counters: HamCounters::default(),
        end_size: None,
        end_min_x_size: None,
        deletable: None,
        properties: Vec::new(),
    };

    if config.kind == ExperimentKind::PropertyPrevalence {
        report.properties = property_verdicts(&g, params, config, sub_seed(seed, PROPERTY_STREAM))?;
    }
    if !config.kind.runs_ham() {
        return Ok(report);
    }

    let budget = params.budget();
    let ham_cfg = HamConfig::with_budget(budget).mode(config.ham_mode).max_queue(config.max_queue);
    let outcome = run_ham_with(&g, &ham_cfg)?;
    report.counters = outcome.counters;
    match &outcome.result {
        HamResult::Cycle(cycle) => {
            if !validate_cycle(&g, cycle) {
                return Err(RigError::Contract(format!("trial {trial} (seed {seed}): HAM returned an invalid cycle")));
            }
            report.ham = HamRecord::Success;
        }
        HamResult::Overflow { stage, .. } => report.ham = HamRecord::Overflow { stage: *stage },
        HamResult::Failure(trace) => {
            report.ham = HamRecord::Failure { stage: trace.stage };
            if matches!(config.kind, ExperimentKind::EndSets | ExperimentKind::DeletableRate) {
                let ends = end_sets(&g, trace, budget)?;
                report.end_size = Some(ends.end_g.len());
                report.end_min_x_size = ends.min_x_size();
            }
            if config.kind == ExperimentKind::DeletableRate {
                let triple = sparsify(&b, config.lambda, sub_seed(seed, SPARSIFY_STREAM))?;
                let variant = match params.regime_m {
                    MRegime::Sparse => Variant::Starred,
                    MRegime::Dense => Variant::Plain,
                };
                let part = properties::partition(&g, params, variant);
                let verdict = properties::is_deletable(&g, &part, trace, &triple.deleted_edges, 0.5 * B1, params)?;
                report.deletable = Some(verdict.deletable);
            }
        }
    }
    Ok(report)
}

/// Replays a single trial of a configuration, as run by [`run_trials`].
pub fn run_trial(config: &ExperimentConfig, point_index: usize, trial: usize) -> Result<TrialReport> {
    config.validate()?;
    let points = resolve_points(config)?;
    let point = points
        .get(point_index)
        .ok_or_else(|| RigError::Parameter(format!("no sweep point {point_index}")))?;
    run_point_trial(config, point_index, point, trial)
}

/// Runs every trial of every sweep point, in parallel, returning records in
/// `(point, trial)` order.
pub fn run_trials(config: &ExperimentConfig) -> Result<Vec<TrialReport>> {
    config.validate()?;
    let points = resolve_points(config)?;
    let jobs: Vec<(usize, usize)> =
        (0..points.len()).flat_map(|j| (0..config.trials).map(move |i| (j, i))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count(config.threads))
        .build()
        .map_err(|e| RigError::Parameter(format!("thread pool: {e}")))?;
    pool.install(|| jobs.par_iter().map(|&(j, i)| run_point_trial(config, j, &points[j], i)).collect())
}
