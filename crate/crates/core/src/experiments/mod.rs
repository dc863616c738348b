//! Seeded Monte Carlo harness.
//!
//! An experiment is a sweep over `(n, c)` points; each point runs `trials`
//! independent instances at one solved `p`. Trial `i` of point `j` draws
//! everything from `trial_seed(sub_seed(master, j), i)`, so records are
//! identical for any worker count.

mod stats;
mod summary;
mod trial;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use stats::{log_log_slope, wilson_interval, Proportion};
pub use summary::{
    read_records, summarize, write_outputs, Degree1Summary, EndSetSummary, HamTally, PointSummary, RecordRow, Summary,
    VERSION_TAG,
};
pub use trial::{run_trial, run_trials, HamRecord, TrialReport};

use crate::error::{param, Result};
use crate::ham::{SearchMode, DEFAULT_MAX_QUEUE};
use crate::properties::DEFAULT_SAMPLES;
use crate::thresholds::DEFAULT_EPS_REGIME;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "RIG_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    MinDegree,
    JointFailure,
    Degree1Poisson,
    Complexity,
    PropertyPrevalence,
    EndSets,
    DeletableRate,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        Self::MinDegree,
        Self::JointFailure,
        Self::Degree1Poisson,
        Self::Complexity,
        Self::PropertyPrevalence,
        Self::EndSets,
        Self::DeletableRate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::MinDegree => "min_degree",
            Self::JointFailure => "joint_failure",
            Self::Degree1Poisson => "degree1_poisson",
            Self::Complexity => "complexity",
            Self::PropertyPrevalence => "property_prevalence",
            Self::EndSets => "end_sets",
            Self::DeletableRate => "deletable_rate",
        }
    }

    pub fn runs_ham(self) -> bool {
        matches!(self, Self::JointFailure | Self::Complexity | Self::EndSets | Self::DeletableRate)
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<_> = Self::ALL.iter().map(|k| k.name()).collect();
            format!("unknown experiment kind `{s}` ({})", names.join("|"))
        })
    }
}

/// How `m` follows `n` across a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MRule {
    /// `m = n`.
    Equal,
    /// `m = ⌈n ln n⌉`.
    NLnN,
    /// `m = ⌈n^α⌉`.
    Power(f64),
    Fixed(usize),
}

impl MRule {
    pub fn m_for(&self, n: usize) -> usize {
        let nf = n as f64;
        match *self {
            Self::Equal => n,
            Self::NLnN => (nf * nf.ln()).ceil() as usize,
            Self::Power(a) => nf.powf(a).ceil() as usize,
            Self::Fixed(m) => m,
        }
    }
}

impl fmt::Display for MRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Equal => f.write_str("n"),
            Self::NLnN => f.write_str("n_ln_n"),
            Self::Power(a) => write!(f, "n^{a}"),
            Self::Fixed(m) => write!(f, "{m}"),
        }
    }
}

impl FromStr for MRule {
    type Err = String;

    /// Accepts `n`, `n_ln_n` (or `nlnn`), `n^A` and a plain integer.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let t = s.trim().to_ascii_lowercase().replace(' ', "");
        match t.as_str() {
            "n" | "m=n" => return Ok(Self::Equal),
            "n_ln_n" | "nlnn" | "nln(n)" | "m=nlnn" => return Ok(Self::NLnN),
            _ => {}
        }
        if let Some(a) = t.strip_prefix("n^") {
            let a: f64 = a.parse().map_err(|_| format!("bad exponent in m-rule `{s}`"))?;
            if !(a > 0.0 && a.is_finite()) {
                return Err(format!("m-rule exponent must be positive, got {a}"));
            }
            return Ok(Self::Power(a));
        }
        match t.parse::<usize>() {
            Ok(m) if m >= 1 => Ok(Self::Fixed(m)),
            _ => Err(format!("unknown m-rule `{s}` (n|n_ln_n|n^A|<integer>)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    /// Vertex counts; more than one makes a sweep.
    pub ns: Vec<usize>,
    pub m_rule: MRule,
    /// Values of the threshold offset `c`.
    pub cs: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    /// Sparsification rate for `deletable_rate`; `q = λ/n`.
    pub lambda: f64,
    pub eps_regime: f64,
    /// Use this `p` instead of solving for it.
    pub p_override: Option<f64>,
    pub ham_mode: SearchMode,
    pub max_queue: usize,
    /// Samples for the subset-quantified property checks.
    pub property_samples: u64,
    /// Worker cap; `None` falls back to `RIG_THREADS`, then to all cores.
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind, n: usize, m_rule: MRule, c: f64, trials: usize, master_seed: u64) -> Self {
        Self {
            kind,
            ns: vec![n],
            m_rule,
            cs: vec![c],
            trials,
            master_seed,
            lambda: 1.0,
            eps_regime: DEFAULT_EPS_REGIME,
            p_override: None,
            ham_mode: SearchMode::Faithful,
            max_queue: DEFAULT_MAX_QUEUE,
            property_samples: DEFAULT_SAMPLES,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return param("trials must be at least 1");
        }
        if self.ns.is_empty() || self.cs.is_empty() {
            return param("sweep over n and c must be nonempty");
        }
        if let Some(&n) = self.ns.iter().find(|&&n| n < 3) {
            return param(format!("n = {n} below 3"));
        }
        if let Some(c) = self.cs.iter().find(|c| !c.is_finite()) {
            return param(format!("c = {c} is not finite"));
        }
        if self.kind == ExperimentKind::EndSets {
            if let Some(c) = self.cs.iter().find(|&&c| !(-2.0..=0.0).contains(&c)) {
                return param(format!("end_sets runs at c in [-2, 0] where HAM failures are observable, got {c}"));
            }
        }
        if self.kind == ExperimentKind::DeletableRate && !(self.lambda > 0.0) {
            return param(format!("lambda must be positive, got {}", self.lambda));
        }
        if let Some(p) = self.p_override {
            if !(p > 0.0 && p < 1.0) {
                return param(format!("p = {p} outside (0, 1)"));
            }
        }
        if self.max_queue == 0 {
            return param("max_queue must be positive");
        }
        Ok(())
    }

    /// The sweep points `(n, m, c)` in run order.
    pub fn points(&self) -> Vec<(usize, usize, f64)> {
        self.ns.iter().flat_map(|&n| self.cs.iter().map(move |&c| (n, self.m_rule.m_for(n), c))).collect()
    }
}

/// Worker count: explicit cap, else `RIG_THREADS`, else all cores.
pub fn worker_count(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse().ok()))
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}
