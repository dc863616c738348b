//! Floating-point scalar abstraction used by the parameter, threshold and
//! Chernoff-exponent code.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance on `p` used by the threshold bisection.
    fn p_tolerance() -> Self;

    /// Converts an `f64` constant, panicking only on non-representable input.
    #[inline]
    fn c(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar type")
    }

    #[inline]
    fn from_count(x: usize) -> Self {
        Self::from_usize(x).expect("count representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn p_tolerance() -> Self {
        1e-14
    }
}

impl Scalar for f32 {
    fn p_tolerance() -> Self {
        4.0 * f32::EPSILON
    }
}

/// `(1 - p)^k` evaluated as `exp(k * ln(1 - p))`.
#[inline]
pub fn one_minus_p_pow<F: Scalar>(p: F, k: F) -> F {
    (k * (-p).ln_1p()).exp()
}
