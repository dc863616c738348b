use rand::seq::index::sample;
use rand::Rng;

use super::report::{PropertyId, PropertyReport, Witness};
use super::{constants, Partition, Variant};
use crate::error::{param, Result, RigError};
use crate::model::ModelParams;
use crate::rng::rng_from_seed;
use crate::scalar::Scalar;
use crate::{BipartiteIncidence, Graph, Vertex};

/// Largest number of candidate subsets enumerated in exhaustive mode.
pub const EXHAUSTIVE_CAP: u64 = 1 << 20;
pub const DEFAULT_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubsetMode {
    Exhaustive,
    Sampled { trials: u64, seed: u64 },
    /// Exhaustive when the candidate count fits under the cap, sampled otherwise.
    Auto { trials: u64, seed: u64 },
}

/// `Σ_{s=1}^{max} C(pool, s)`, saturating at `u64::MAX`.
fn candidate_count(pool: usize, max: usize) -> u64 {
    let mut total: u64 = 0;
    let mut binom: u128 = 1;
    for s in 1..=max.min(pool) {
        binom = binom * (pool - s + 1) as u128 / s as u128;
        total = total.saturating_add(binom.min(u64::MAX as u128) as u64);
        if total == u64::MAX {
            break;
        }
    }
    total
}

enum Plan {
    Exhaustive,
    Sampled(u64, u64),
}

fn plan(mode: SubsetMode, count: u64, what: &str) -> Result<Plan> {
    match mode {
        SubsetMode::Exhaustive if count > EXHAUSTIVE_CAP => Err(RigError::Capacity(format!(
            "{count} candidate {what} exceed the exhaustive cap {EXHAUSTIVE_CAP}; use sampled mode"
        ))),
        SubsetMode::Exhaustive => Ok(Plan::Exhaustive),
        SubsetMode::Auto { .. } if count <= EXHAUSTIVE_CAP => Ok(Plan::Exhaustive),
        SubsetMode::Sampled { trials, seed } | SubsetMode::Auto { trials, seed } => Ok(Plan::Sampled(trials, seed)),
    }
}

/// Calls `f` on every `s`-subset of `pool` for `s = 1..=max`, in size then
/// lexicographic order, until it returns `true`.
fn for_each_subset(pool: &[u32], max: usize, mut f: impl FnMut(&[u32]) -> bool) -> bool {
    let mut buf = Vec::new();
    for s in 1..=max.min(pool.len()) {
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            buf.clear();
            buf.extend(idx.iter().map(|&i| pool[i]));
            if f(&buf) {
                return true;
            }
            let Some(i) = (0..s).rev().find(|&i| idx[i] < pool.len() - s + i) else { break };
            idx[i] += 1;
            for j in i + 1..s {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    false
}

/// Runs `violates` over the candidate family and builds the report.
fn run_family(
    pool: &[u32],
    max: usize,
    mode: SubsetMode,
    what: &str,
    property: PropertyId,
    consts: Vec<(&'static str, f64)>,
    mut violates: impl FnMut(&[u32]) -> Option<Witness>,
) -> Result<PropertyReport> {
    let max = max.min(pool.len());
    if max == 0 {
        return Ok(PropertyReport::verified(property, consts));
    }
    let mut found = None;
    match plan(mode, candidate_count(pool.len(), max), what)? {
        Plan::Exhaustive => {
            for_each_subset(pool, max, |s| {
                found = violates(s);
                found.is_some()
            });
            Ok(match found {
                Some(w) => PropertyReport::violated(property, w, consts),
                None => PropertyReport::verified(property, consts),
            })
        }
        Plan::Sampled(trials, seed) => {
            let mut rng = rng_from_seed(seed);
            let mut buf = Vec::with_capacity(max);
            for t in 0..trials {
                let size = rng.random_range(1..=max);
                buf.clear();
                buf.extend(sample(&mut rng, pool.len(), size).into_iter().map(|i| pool[i]));
                buf.sort_unstable();
                if let Some(w) = violates(&buf) {
                    return Ok(PropertyReport::violated(property, w, consts).with_samples(Some(t + 1)));
                }
            }
            Ok(PropertyReport::not_found(property, trials, consts))
        }
    }
}

/// `|𝒩(S)|` using a caller-provided scratch marker.
fn neighbourhood_count(g: &Graph, s: &[Vertex], stamp: &mut [u32], epoch: u32) -> usize {
    for &v in s {
        stamp[v as usize] = epoch;
    }
    let mut count = 0;
    for &v in s {
        for &u in g.neighbors(v) {
            if stamp[u as usize] != epoch {
                stamp[u as usize] = epoch;
                count += 1;
            }
        }
    }
    count
}

/// P3 (P3* for a starred partition): every `S ⊆ LARGE` with
/// `1 ≤ |S| ≤ n/d₁` has `N(S) ≥ b₁·d₁·|S|`.
pub fn check_p3<F: Scalar>(
    g: &Graph,
    part: &Partition<F>,
    params: &ModelParams<F>,
    b1: F,
    mode: SubsetMode,
) -> Result<PropertyReport> {
    if !(b1 > F::zero()) {
        return param(format!("b1 must be positive, got {b1}"));
    }
    let property = match part.variant {
        Variant::Plain => PropertyId::P3,
        Variant::Starred => PropertyId::P3Star,
    };
    let ratio = F::from_count(params.n) / params.d1;
    let max = ratio.floor().to_usize().unwrap_or(usize::MAX);
    let per_vertex = b1 * params.d1;
    let consts = constants(&[("b1", b1), ("d1", params.d1), ("max_size", ratio)]);
    let mut stamp = vec![0u32; g.n()];
    let mut epoch = 0u32;
    run_family(&part.large, max, mode, "sets S", property, consts, |s| {
        epoch = epoch.wrapping_add(1);
        if epoch == 0 {
            stamp.fill(0);
            epoch = 1;
        }
        let n_s = neighbourhood_count(g, s, &mut stamp, epoch);
        let bound = per_vertex * F::from_count(s.len());
        (F::from_count(n_s) < bound)
            .then(|| Witness::vertices(s.to_vec()).value(n_s as f64).bound(bound.to_f64_lossy()))
    })
}

/// Feature-set expansion: every `R` with `1 ≤ |R| ≤ min(m, ⌊1/p⌋)` has
/// `V(R) ≥ np|R|/2 + 1`.
pub fn check_vr<F: Scalar>(b: &BipartiteIncidence, params: &ModelParams<F>, mode: SubsetMode) -> Result<PropertyReport> {
    let inv_p = (F::one() / params.p).floor().to_usize().unwrap_or(usize::MAX);
    let max = inv_p.min(b.m());
    let half_np = params.np() / F::c(2.0);
    let consts = constants(&[("np_half", half_np), ("max_size", F::from_count(max))]);
    let pool: Vec<u32> = (0..b.m() as u32).collect();
    let mut stamp = vec![0u32; b.n()];
    let mut epoch = 0u32;
    run_family(&pool, max, mode, "feature sets R", PropertyId::Vr, consts, |r| {
        epoch = epoch.wrapping_add(1);
        if epoch == 0 {
            stamp.fill(0);
            epoch = 1;
        }
        let mut v_r = 0usize;
        for &w in r {
            for &v in b.vertices_of(w) {
                if stamp[v as usize] != epoch {
                    stamp[v as usize] = epoch;
                    v_r += 1;
                }
            }
        }
        let bound = half_np * F::from_count(r.len()) + F::one();
        (F::from_count(v_r) < bound).then(|| Witness::features(r.to_vec()).value(v_r as f64).bound(bound.to_f64_lossy()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{derived_params, intersection_of};
    use crate::properties::partition;

    #[test]
    fn counts() {
        assert_eq!(candidate_count(5, 2), 15);
        assert_eq!(candidate_count(4, 9), 15);
        assert_eq!(candidate_count(200, 200), u64::MAX);
    }

    #[test]
    fn subset_enumeration_order() {
        let mut seen = Vec::new();
        for_each_subset(&[3, 5, 7], 2, |s| {
            seen.push(s.to_vec());
            false
        });
        assert_eq!(seen, vec![vec![3], vec![5], vec![7], vec![3, 5], vec![3, 7], vec![5, 7]]);
    }

    #[test]
    fn p3_vacuous_and_singleton() {
        let b = BipartiteIncidence::from_feature_sets(4, 4, (0..4).map(|i| vec![i]).collect()).unwrap();
        let g = intersection_of(&b);
        let params = derived_params(4, 4, 0.25f64).unwrap();
        let part = partition(&g, &params, Variant::Plain);
        assert!(part.large.is_empty());
        assert!(check_p3(&g, &part, &params, 0.001, SubsetMode::Exhaustive).unwrap().is_verified());

        // Vertex 0 shares two features with vertex 1 only, so W'(0) = 2 > 0.1·d0 but
        // N({0}) = 1 < b1·d1 for a large b1.
        let b = BipartiteIncidence::from_feature_sets(3, 3, vec![vec![0, 1], vec![0, 1], vec![2]]).unwrap();
        let g = intersection_of(&b);
        let params = derived_params(3, 3, 0.1f64).unwrap();
        let part = partition(&g, &params, Variant::Plain);
        assert_eq!(part.large, vec![0, 1]);
        let r = check_p3(&g, &part, &params, 100.0, SubsetMode::Exhaustive).unwrap();
        assert_eq!(r.witness.unwrap().vertices, vec![0]);
        assert!(check_p3(&g, &part, &params, 0.0, SubsetMode::Exhaustive).is_err());
    }

    #[test]
    fn capacity_error() {
        let b = BipartiteIncidence::sample(60, 60, 1.0, 0).unwrap();
        let g = intersection_of(&b);
        let params = derived_params(60, 60, 0.01f64).unwrap();
        let part = partition(&g, &params, Variant::Plain);
        let e = check_p3(&g, &part, &params, 0.001, SubsetMode::Exhaustive).unwrap_err();
        assert!(matches!(e, RigError::Capacity(_)));
        let r = check_p3(&g, &part, &params, 0.001, SubsetMode::Auto { trials: 50, seed: 1 }).unwrap();
        // |S| = 60 leaves N(S) = 0, so sampling may stop early.
        assert!(r.samples.is_some_and(|s| s <= 50));
    }

    #[test]
    fn vr_cases() {
        let full = BipartiteIncidence::sample(10, 3, 1.0, 0).unwrap();
        let params = derived_params(10, 3, 0.5f64).unwrap();
        assert!(check_vr(&full, &params, SubsetMode::Exhaustive).unwrap().is_verified());
        let b = BipartiteIncidence::from_feature_sets(10, 3, vec![vec![0, 1]; 10]).unwrap();
        let r = check_vr(&b, &params, SubsetMode::Exhaustive).unwrap();
        assert_eq!(r.witness.unwrap().features, vec![2]);
    }
}
