use serde::Serialize;

use crate::error::{param, Result};
use crate::scalar::{one_minus_p_pow, Scalar};

/// Exponent separating the dense (`m ≥ n^{1−ε}`) and sparse feature regimes.
pub const REGIME_EPS: f64 = 1.0 / 25.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NpRegime {
    AtMost40,
    Above40,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MRegime {
    /// `m ≥ n^{1−ε}`
    Dense,
    /// `m < n^{1−ε}`
    Sparse,
}

/// Which rule produced the HAM input `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DBranch {
    /// `mp² ≤ 1`, `d = nmp²`
    Nmp2,
    /// `mp² > 1`, `d = n` and the budget is pinned to 2
    Dense,
}

/// `n, m, p` and the quantities derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams<F: Scalar> {
    pub n: usize,
    pub m: usize,
    pub p: F,
    /// `mp(1 − (1 − p)^{n−1})`, the expected number of features of a vertex
    /// shared with someone else.
    pub d0: F,
    /// `nmp²`
    pub d1: F,
    pub d: F,
    pub d_branch: DBranch,
    pub eps: F,
    pub regime_np: NpRegime,
    pub regime_m: MRegime,
}

impl<F: Scalar> ModelParams<F> {
    pub fn new(n: usize, m: usize, p: F) -> Result<Self> {
        if n < 2 {
            return param(format!("n = {n} < 2"));
        }
        if m < 1 {
            return param("m must be positive");
        }
        if !(p > F::zero() && p < F::one()) {
            return param(format!("p = {p} outside (0,1)"));
        }
        let nf = F::from_count(n);
        let mf = F::from_count(m);
        let mp = mf * p;
        let d0 = mp * (F::one() - one_minus_p_pow(p, nf - F::one()));
        let d1 = nf * mf * p * p;
        let (d, d_branch) = if mp * p <= F::one() { (d1, DBranch::Nmp2) } else { (nf, DBranch::Dense) };
        let eps = F::c(REGIME_EPS);
        let regime_np = if nf * p > F::c(40.0) { NpRegime::Above40 } else { NpRegime::AtMost40 };
        let regime_m = if mf >= nf.powf(F::one() - eps) { MRegime::Dense } else { MRegime::Sparse };
        Ok(Self { n, m, p, d0, d1, d, d_branch, eps, regime_np, regime_m })
    }

    pub fn mp(&self) -> F {
        F::from_count(self.m) * self.p
    }

    pub fn np(&self) -> F {
        F::from_count(self.n) * self.p
    }

    /// HAM rotation budget `T` for this parameter set.
    pub fn budget(&self) -> usize {
        match self.d_branch {
            DBranch::Dense => 2,
            DBranch::Nmp2 => crate::ham::compute_budget(self.n, self.d.to_f64_lossy()),
        }
    }
}

/// Computes [`ModelParams`] for `(n, m, p)`.
pub fn derived_params<F: Scalar>(n: usize, m: usize, p: F) -> Result<ModelParams<F>> {
    ModelParams::new(n, m, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let q = derived_params(100, 100, 0.05f64).unwrap();
        // 5 * (1 - 0.95^99), evaluated independently with powi.
        let expect = 5.0 * (1.0 - 0.95f64.powi(99));
        assert!((q.d0 - expect).abs() < 1e-12);
        assert!((q.d0 - 4.9688).abs() < 1e-4);
        assert!((q.d1 - 25.0).abs() < 1e-12);
        assert_eq!(q.d_branch, DBranch::Nmp2);
        assert_eq!(q.d, q.d1);
    }

    #[test]
    fn np_above_40() {
        let q = derived_params(1000, 1000, 0.05f64).unwrap();
        assert_eq!(q.regime_np, NpRegime::Above40);
        assert!(q.d0 >= 45.0 && q.d0 <= 50.0);
    }

    #[test]
    fn tiny_p_limit() {
        let q = derived_params(1_000_000, 10, 1e-300f64).unwrap();
        assert!(q.d0 >= 0.0 && q.d0 < 1e-280);
        assert!(q.d1 < 1e-280);
    }

    #[test]
    fn dense_branch() {
        let q = derived_params(50, 100, 0.5f64).unwrap();
        assert_eq!(q.d_branch, DBranch::Dense);
        assert_eq!(q.d, 50.0);
        assert_eq!(q.budget(), 2);
    }

    #[test]
    fn works_in_f32() {
        let q = derived_params(100, 100, 0.05f32).unwrap();
        assert!((q.d0 - 4.9688).abs() < 1e-3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(derived_params(1, 10, 0.1f64).is_err());
        assert!(derived_params(10, 0, 0.1f64).is_err());
        assert!(derived_params(10, 10, 0.0f64).is_err());
        assert!(derived_params(10, 10, 1.0f64).is_err());
    }
}
