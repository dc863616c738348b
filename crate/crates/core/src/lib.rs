//! Random intersection graphs `G(n, m, p)`, the HAM rotation–extension
//! search for Hamilton cycles, structural property checkers and Monte Carlo
//! threshold experiments.
//!
//! The numeric layers ([`model::ModelParams`], [`thresholds`],
//! [`properties::psi`]) are generic over [`Scalar`]; the aliases below fix
//! them to `f64` or `f32`.

pub mod error;
pub mod experiments;
pub mod ham;
pub mod model;
pub mod oracle;
pub mod properties;
pub mod rng;
pub mod scalar;
pub mod thresholds;

pub use error::{Result, RigError};
pub use model::{BipartiteIncidence, Graph, IntersectionGraph};
pub use scalar::Scalar;

/// Vertex index in `0..n`.
pub type Vertex = u32;
/// Feature index in `0..m`.
pub type Feature = u32;

pub type ModelParams = model::ModelParams<f64>;
pub type ModelParamsF32 = model::ModelParams<f32>;
pub type ThresholdSpec = thresholds::ThresholdSpec<f64>;
pub type ThresholdSpecF32 = thresholds::ThresholdSpec<f32>;
pub type Partition = properties::Partition<f64>;
