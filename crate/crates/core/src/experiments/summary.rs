use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::stats::{log_log_slope, Proportion};
use super::trial::{HamRecord, TrialReport};
use super::{ExperimentConfig, ExperimentKind};
use crate::error::{param, Result};
use crate::thresholds::{limit_min_degree_prob, poisson_degree1_mean};

pub const VERSION_TAG: &str = concat!("rig-core ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Degree1Summary {
    pub mean: f64,
    /// Sample variance (`n − 1` denominator); absent for a single trial.
    pub variance: Option<f64>,
    /// `variance / mean`.
    pub dispersion: Option<f64>,
    /// Limiting Poisson mean `e^{−c}`.
    pub poisson_mean: f64,
    /// `histogram[k]` trials had exactly `k` degree-1 vertices.
    pub histogram: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HamTally {
    pub success: u64,
    pub failure: u64,
    /// Runs stopped by the queue cap; counted as failures in `joint_failure`.
    pub overflow: u64,
    /// HAM success among trials with `δ ≥ 2`.
    pub success_given_min_degree2: Proportion,
    /// `δ ≥ 2` and HAM did not return a cycle, over all trials.
    pub joint_failure: Proportion,
    pub rotations_total: u64,
    pub paths_explored_total: u64,
    /// Mean rotations over runs that finished (success or failure).
    pub mean_rotations: Option<f64>,
    pub mean_rotations_success: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EndSetSummary {
    pub measured: u64,
    pub mean_end_fraction: f64,
    pub mean_min_x_fraction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSummary {
    pub n: usize,
    pub m: usize,
    pub c: f64,
    pub p: f64,
    pub trials: u64,
    pub min_degree_ge2: Proportion,
    /// `e^{−e^{−c}}`.
    pub limit_min_degree_prob: f64,
    pub degree1: Degree1Summary,
    pub ham: Option<HamTally>,
    /// Fraction of trials where each property held (verified or unrefuted by sampling).
    pub properties: BTreeMap<String, Proportion>,
    pub end_sets: Option<EndSetSummary>,
    /// Fraction of HAM failures whose `X_q` was deletable.
    pub deletable: Option<Proportion>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub version: String,
    pub config: ExperimentConfig,
    pub points: Vec<PointSummary>,
    /// Log-log slope of mean rotations against `n`; absent without at least
    /// two distinct `n` at a single `c`.
    pub rotation_slope: Option<f64>,
    pub notes: Vec<String>,
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (s, k) = xs.fold((0.0, 0u64), |(s, k), x| (s + x, k + 1));
    (k > 0).then(|| s / k as f64)
}

fn summarize_point(kind: ExperimentKind, recs: &[&TrialReport]) -> PointSummary {
    let first = recs[0];
    let trials = recs.len() as u64;
    let ge2 = recs.iter().filter(|r| r.min_degree_ge2()).count() as u64;

    let d1: Vec<f64> = recs.iter().map(|r| r.degree1_count as f64).collect();
    let d1_mean = mean(d1.iter().copied()).unwrap_or(0.0);
    let variance = (d1.len() > 1)
        .then(|| d1.iter().map(|x| (x - d1_mean).powi(2)).sum::<f64>() / (d1.len() - 1) as f64);
    let mut histogram = vec![0u64; recs.iter().map(|r| r.degree1_count).max().unwrap_or(0) + 1];
    for r in recs {
        histogram[r.degree1_count] += 1;
    }
    let degree1 = Degree1Summary {
        mean: d1_mean,
        variance,
        dispersion: variance.filter(|_| d1_mean > 0.0).map(|v| v / d1_mean),
        poisson_mean: poisson_degree1_mean(first.c),
        histogram,
    };

    let ham = kind.runs_ham().then(|| {
        let count = |pred: fn(&HamRecord) -> bool| recs.iter().filter(|r| pred(&r.ham)).count() as u64;
        let success = count(|h| *h == HamRecord::Success);
        let failure = count(|h| matches!(h, HamRecord::Failure { .. }));
        let overflow = count(|h| matches!(h, HamRecord::Overflow { .. }));
        let ge2_success = recs.iter().filter(|r| r.min_degree_ge2() && r.ham == HamRecord::Success).count() as u64;
        let finished = || recs.iter().filter(|r| matches!(r.ham, HamRecord::Success | HamRecord::Failure { .. }));
        HamTally {
            success,
            failure,
            overflow,
            success_given_min_degree2: Proportion::new(ge2_success, ge2),
            joint_failure: Proportion::new(ge2 - ge2_success, trials),
            rotations_total: recs.iter().map(|r| r.counters.rotations_total).sum(),
            paths_explored_total: recs.iter().map(|r| r.counters.paths_explored).sum(),
            mean_rotations: mean(finished().map(|r| r.counters.rotations_total as f64)),
            mean_rotations_success: mean(
                recs.iter().filter(|r| r.ham == HamRecord::Success).map(|r| r.counters.rotations_total as f64),
            ),
        }
    });

    let mut properties: BTreeMap<String, (u64, u64)> = BTreeMap::new();
    for r in recs {
        for (id, verdict) in &r.properties {
            let e = properties.entry(id.name().to_owned()).or_default();
            e.1 += 1;
            if *verdict != crate::properties::Verdict::Violated {
                e.0 += 1;
            }
        }
    }

    let end_sets = matches!(kind, ExperimentKind::EndSets | ExperimentKind::DeletableRate).then(|| {
        let n = first.n as f64;
        let measured: Vec<&&TrialReport> = recs.iter().filter(|r| r.end_size.is_some()).collect();
        EndSetSummary {
            measured: measured.len() as u64,
            mean_end_fraction: mean(measured.iter().map(|r| r.end_size.unwrap() as f64 / n)).unwrap_or(f64::NAN),
            mean_min_x_fraction: mean(measured.iter().filter_map(|r| r.end_min_x_size).map(|s| s as f64 / n)),
        }
    });

    let deletable = (kind == ExperimentKind::DeletableRate).then(|| {
        let measured: Vec<bool> = recs.iter().filter_map(|r| r.deletable).collect();
        Proportion::new(measured.iter().filter(|&&d| d).count() as u64, measured.len() as u64)
    });

    PointSummary {
        n: first.n,
        m: first.m,
        c: first.c,
        p: first.p,
        trials,
        min_degree_ge2: Proportion::new(ge2, trials),
        limit_min_degree_prob: limit_min_degree_prob(first.c),
        degree1,
        ham,
        properties: properties.into_iter().map(|(k, (s, t))| (k, Proportion::new(s, t))).collect(),
        end_sets,
        deletable,
    }
}

/// Aggregates per-trial records. The result does not depend on record order.
pub fn summarize(config: &ExperimentConfig, records: &[TrialReport]) -> Result<Summary> {
    if records.is_empty() {
        return param("cannot summarize an empty record set");
    }
    let mut groups: BTreeMap<usize, Vec<&TrialReport>> = BTreeMap::new();
    for r in records {
        groups.entry(r.point).or_default().push(r);
    }
    let points: Vec<PointSummary> = groups.values().map(|recs| summarize_point(config.kind, recs)).collect();

    let single_c = points.windows(2).all(|w| w[0].c == w[1].c);
    let rotation_slope = if single_c {
        let pts: Vec<(f64, f64)> =
            points.iter().filter_map(|p| Some((p.n as f64, p.ham.as_ref()?.mean_rotations?))).collect();
        log_log_slope(&pts)
    } else {
        None
    };

    let mut notes = Vec::new();
    if config.kind.runs_ham() {
        notes.push("overflow runs count as HAM failures in joint_failure and are tallied separately".to_owned());
    }
    if config.kind == ExperimentKind::EndSets {
        notes.push(
            "END sets are defined only on HAM failures, so the experiment runs at c in [-2, 0] where failures are frequent"
                .to_owned(),
        );
    }
    if config.kind == ExperimentKind::DeletableRate {
        notes.push("X_q is tested for deletability with b2 = 0.5 b1 on trials where HAM fails on G".to_owned());
    }
    Ok(Summary { version: VERSION_TAG.to_owned(), config: config.clone(), points, rotation_slope, notes })
}

/// One line of `records.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordRow {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub p: f64,
    pub min_degree: usize,
    pub degree1_count: usize,
    pub ham_result: String,
    pub fail_stage: Option<usize>,
    pub rotations: u64,
    pub paths_explored: u64,
    pub end_size: Option<usize>,
    pub end_min_x_size: Option<usize>,
    pub deletable: Option<bool>,
}

impl From<&TrialReport> for RecordRow {
    fn from(r: &TrialReport) -> Self {
        Self {
            trial: r.trial,
            seed: r.seed,
            n: r.n,
            m: r.m,
            p: r.p,
            min_degree: r.min_degree,
            degree1_count: r.degree1_count,
            ham_result: r.ham.label().to_owned(),
            fail_stage: r.ham.fail_stage(),
            rotations: r.counters.rotations_total,
            paths_explored: r.counters.paths_explored,
            end_size: r.end_size,
            end_min_x_size: r.end_min_x_size,
            deletable: r.deletable,
        }
    }
}

/// Writes `records.csv` and `summary.json` into `dir`, creating it if needed.
pub fn write_outputs(dir: &Path, records: &[TrialReport], summary: &Summary) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut w = csv::Writer::from_path(dir.join("records.csv"))?;
    for r in records {
        w.serialize(RecordRow::from(r))?;
    }
    w.flush()?;
    let mut json = serde_json::to_string_pretty(summary)?;
    json.push('\n');
    fs::write(dir.join("summary.json"), json)?;
    Ok(())
}

pub fn read_records(path: &Path) -> Result<Vec<RecordRow>> {
    let mut r = csv::Reader::from_path(path)?;
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::MRule;
    use crate::ham::HamCounters;

    fn record(point: usize, min_degree: usize, ham: HamRecord) -> TrialReport {
        TrialReport {
            point,
            trial: 0,
            seed: 1,
            n: 10,
            m: 10,
            c: 0.0,
            p: 0.3,
            min_degree,
            degree1_count: usize::from(min_degree == 1),
            ham,
            counters: HamCounters::default(),
            end_size: None,
            end_min_x_size: None,
            deletable: None,
            properties: Vec::new(),
        }
    }

    #[test]
    fn empty_is_an_error() {
        let cfg = ExperimentConfig::new(ExperimentKind::MinDegree, 10, MRule::Equal, 0.0, 1, 0);
        assert!(summarize(&cfg, &[]).is_err());
    }

    #[test]
    fn hand_built_pair() {
        let cfg = ExperimentConfig::new(ExperimentKind::JointFailure, 10, MRule::Equal, 0.0, 2, 0);
        let recs = [record(0, 2, HamRecord::Success), record(0, 2, HamRecord::Overflow { stage: 5 })];
        let s = summarize(&cfg, &recs).unwrap();
        let ham = s.points[0].ham.as_ref().unwrap();
        assert_eq!(ham.success_given_min_degree2.estimate, 0.5);
        assert_eq!(ham.joint_failure.successes, 1);
        assert_eq!(ham.overflow, 1);
        assert_eq!(s.rotation_slope, None);
        assert_eq!(s.version, VERSION_TAG);
    }

    #[test]
    fn single_record_identity() {
        let cfg = ExperimentConfig::new(ExperimentKind::Degree1Poisson, 10, MRule::Equal, 0.0, 1, 0);
        let s = summarize(&cfg, &[record(0, 1, HamRecord::NotRun)]).unwrap();
        let pt = &s.points[0];
        assert_eq!(pt.degree1.mean, 1.0);
        assert_eq!(pt.degree1.variance, None);
        assert_eq!(pt.degree1.histogram, vec![0, 1]);
        assert_eq!(pt.min_degree_ge2.successes, 0);
        assert!(pt.ham.is_none());
    }

    #[test]
    fn order_independent() {
        let cfg = ExperimentConfig::new(ExperimentKind::JointFailure, 10, MRule::Equal, 0.0, 3, 0);
        let mut recs = vec![
            record(0, 2, HamRecord::Success),
            record(0, 1, HamRecord::Failure { stage: 4 }),
            record(0, 3, HamRecord::Failure { stage: 9 }),
        ];
        let a = summarize(&cfg, &recs).unwrap();
        recs.reverse();
        assert_eq!(a, summarize(&cfg, &recs).unwrap());
    }
}
