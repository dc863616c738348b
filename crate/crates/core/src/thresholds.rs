//! Minimum-degree-two threshold: solving `p` from `(n, m, c)` and the
//! limiting laws at the threshold.
//!
//! The threshold is parameterized by
//!
//! ```text
//! p(1 − (1 − p)^{n−1}) = (ln n + ln aₙ + c) / m
//! ```
//!
//! where `aₙ = 1` for `m < (1−ε)·n ln n / ln ln n` and
//! `aₙ = np ln n / (e^{np} − 1)` for `m > (1+ε)·n ln n / ln ln n`. The band in
//! between is excluded.

use serde::Serialize;

use crate::error::{RigError, Result};
use crate::scalar::{one_minus_p_pow, Scalar};

pub const DEFAULT_EPS_REGIME: f64 = 0.1;
pub const RESIDUAL_TOL: f64 = 1e-12;
const MAX_OUTER: usize = 50;
const MAX_BISECT: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ABranch {
    AnEqualsOne,
    AnFormula,
    ExcludedBand,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnValue<F: Scalar> {
    pub value: F,
    pub branch: ABranch,
}

/// Solved threshold probability and how it was obtained.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdSpec<F: Scalar> {
    pub n: usize,
    pub m: usize,
    pub c: F,
    pub eps_regime: F,
    pub a_branch: ABranch,
    pub a_n: F,
    pub p: F,
    /// `(ln n + ln aₙ + c) / m` at the solution
    pub target: F,
    pub residual: F,
    /// Set when `m < ln² n`, where the limit law is not expected to apply.
    pub warning: Option<String>,
}

/// `n ln n / ln ln n`, the centre of the excluded band.
pub fn band_centre<F: Scalar>(n: usize) -> F {
    let ln_n = F::from_count(n).ln();
    F::from_count(n) * ln_n / ln_n.ln()
}

fn branch_for<F: Scalar>(n: usize, m: usize, eps: F) -> Result<ABranch> {
    if n < 3 {
        return Err(RigError::Parameter(format!("n = {n} < 3")));
    }
    if !(eps > F::zero() && eps < F::one()) {
        return Err(RigError::Parameter(format!("eps = {eps} outside (0,1)")));
    }
    let centre: F = band_centre(n);
    let mf = F::from_count(m);
    if mf < (F::one() - eps) * centre {
        Ok(ABranch::AnEqualsOne)
    } else if mf > (F::one() + eps) * centre {
        Ok(ABranch::AnFormula)
    } else {
        Err(RigError::Regime(format!(
            "m = {m} lies in the excluded band ({:.1}, {:.1})",
            ((F::one() - eps) * centre).to_f64_lossy(),
            ((F::one() + eps) * centre).to_f64_lossy()
        )))
    }
}

fn a_formula<F: Scalar>(n: usize, p: F) -> F {
    let x = F::from_count(n) * p;
    let ln_n = F::from_count(n).ln();
    if x == F::zero() {
        ln_n
    } else {
        x / x.exp_m1() * ln_n
    }
}

/// `aₙ` at `(n, m, p)`; errors with [`RigError::Regime`] inside the excluded band.
pub fn a_n<F: Scalar>(n: usize, m: usize, p: F, eps_regime: F) -> Result<AnValue<F>> {
    if !(p > F::zero() && p < F::one()) {
        return Err(RigError::Parameter(format!("p = {p} outside (0,1)")));
    }
    Ok(match branch_for(n, m, eps_regime)? {
        ABranch::AnEqualsOne => AnValue { value: F::one(), branch: ABranch::AnEqualsOne },
        _ => AnValue { value: a_formula(n, p), branch: ABranch::AnFormula },
    })
}

/// `p(1 − (1 − p)^{n−1})`, strictly increasing on `(0, 1)` for `n ≥ 2`.
pub fn degree_lhs<F: Scalar>(n: usize, p: F) -> F {
    p * (F::one() - one_minus_p_pow(p, F::from_count(n - 1)))
}

fn bisect<F: Scalar>(mut f: impl FnMut(F) -> F) -> F {
    let (mut lo, mut hi) = (F::zero(), F::one());
    let tol = F::p_tolerance();
    for _ in 0..MAX_BISECT {
        let mid = (lo + hi) / F::c(2.0);
        if f(mid) < F::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < tol * F::c(1e-3) {
            break;
        }
    }
    (lo + hi) / F::c(2.0)
}

fn target<F: Scalar>(n: usize, m: usize, a: F, c: F) -> F {
    (F::from_count(n).ln() + a.ln() + c) / F::from_count(m)
}

fn check_target<F: Scalar>(t: F) -> Result<()> {
    if t > F::zero() && t < F::one() {
        Ok(())
    } else {
        Err(RigError::Infeasible(format!("target {t} not in the range (0,1) of p(1-(1-p)^(n-1))")))
    }
}

/// Solves the threshold equation for `p` with constant `c`.
pub fn solve_p<F: Scalar>(n: usize, m: usize, c: F, eps_regime: F) -> Result<ThresholdSpec<F>> {
    if m == 0 {
        return Err(RigError::Parameter("m must be positive".into()));
    }
    if !c.is_finite() {
        return Err(RigError::Parameter(format!("c = {c} must be finite")));
    }
    let branch = branch_for(n, m, eps_regime)?;
    let (p, a) = match branch {
        ABranch::AnEqualsOne => {
            let t = target(n, m, F::one(), c);
            check_target(t)?;
            (bisect(|p| degree_lhs(n, p) - t), F::one())
        }
        _ => {
            let mut a = F::one();
            let mut p: F = F::nan();
            let mut converged = false;
            for _ in 0..MAX_OUTER {
                let t = target(n, m, a, c);
                check_target(t)?;
                let next: F = bisect(|q| degree_lhs(n, q) - t);
                let done = (next - p).abs() < F::p_tolerance();
                p = next;
                a = a_formula(n, p);
                if done {
                    converged = true;
                    break;
                }
            }
            if !converged {
                // g(p) = LHS(p) − target(aₙ(p)) is itself increasing in p.
                check_target(target(n, m, a_formula(n, F::c(0.5)), c))?;
                p = bisect(|q| degree_lhs(n, q) - target(n, m, a_formula(n, q), c));
                a = a_formula(n, p);
            }
            (p, a)
        }
    };
    let t = target(n, m, a, c);
    check_target(t)?;
    let residual = (degree_lhs(n, p) - t).abs();
    let ln_n = F::from_count(n).ln();
    let warning = (F::from_count(m) < ln_n * ln_n)
        .then(|| format!("m = {m} < ln^2 n = {:.2}; the limit law assumes ln^2 n = o(m)", (ln_n * ln_n).to_f64_lossy()));
    Ok(ThresholdSpec { n, m, c, eps_regime, a_branch: branch, a_n: a, p, target: t, residual, warning })
}

/// `lim Pr[δ ≥ 2]`: `e^{−e^{−c}}`, with 0 at `c = −∞` and 1 at `c = +∞`.
pub fn limit_min_degree_prob<F: Scalar>(c: F) -> F {
    if c == F::neg_infinity() {
        F::zero()
    } else if c == F::infinity() {
        F::one()
    } else {
        (-(-c).exp()).exp()
    }
}

/// Limiting mean (and variance) `e^{−c}` of the number of degree-one vertices.
pub fn poisson_degree1_mean<F: Scalar>(c: F) -> F {
    (-c).exp()
}
