//! Random intersection graphs built from their vertex–feature incidence.

mod graph;
mod incidence;
pub mod io;
mod params;
mod queries;
mod sparsify;

pub use graph::{intersection_of, Graph, IntersectionGraph};
pub use incidence::BipartiteIncidence;
pub use params::{derived_params, DBranch, MRegime, ModelParams, NpRegime, REGIME_EPS};
pub use queries::{incidence_queries, neighbourhood, IncidenceQueries};
pub use sparsify::{sparsify, SparsifiedTriple};

/// Samples `B(n, m, p)` under `seed`.
pub fn sample_bipartite(n: usize, m: usize, p: f64, seed: u64) -> crate::Result<BipartiteIncidence> {
    BipartiteIncidence::sample(n, m, p, seed)
}
