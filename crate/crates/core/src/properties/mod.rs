//! Literal checkers for the structural properties used in the analysis of
//! HAM on random intersection graphs.
//!
//! Every checker evaluates its inequality at the given `n` as stated, with
//! real-valued thresholds and no rounding. Subset-quantified properties (P3,
//! VR) run exhaustively under a cap or by sampling; sampled verdicts are
//! one-sided.

mod deletable;
mod report;
mod subsets;

use std::collections::VecDeque;

use serde::Serialize;

pub use deletable::{is_deletable, DeletableClause, DeletableVerdict};
pub use report::{PropertyId, PropertyReport, Verdict, Witness};
pub use subsets::{check_p3, check_vr, SubsetMode, DEFAULT_SAMPLES, EXHAUSTIVE_CAP};

use crate::error::{param, Result};
use crate::model::ModelParams;
use crate::scalar::Scalar;
use crate::{Graph, IntersectionGraph, Vertex};

/// Expansion constant `b₁`.
pub const B1: f64 = 0.001;
/// `SMALL*` threshold factor on `mp`.
pub const STARRED_SMALL_FACTOR: f64 = 6e-3;
/// `SMALL` threshold factor on `d₀`.
pub const PLAIN_SMALL_FACTOR: f64 = 0.1;

/// Chernoff lower-tail exponent `ψ(ε) = ε ln ε + 1 − ε`, for `0 < ε ≤ 1`.
pub fn psi<F: Scalar>(eps: F) -> Result<F> {
    if !(eps > F::zero() && eps <= F::one()) {
        return param(format!("psi needs 0 < eps <= 1, got {eps}"));
    }
    Ok(eps * eps.ln() + F::one() - eps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    Plain,
    Starred,
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "plain" => Ok(Self::Plain),
            "starred" => Ok(Self::Starred),
            other => Err(format!("unknown variant `{other}` (plain|starred)")),
        }
    }
}

/// `SMALL`/`LARGE` split of the vertex set by `W′(v)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Partition<F: Scalar> {
    pub small: Vec<Vertex>,
    pub large: Vec<Vertex>,
    pub variant: Variant,
    pub threshold: F,
    #[serde(skip)]
    is_small: Vec<bool>,
}

impl<F: Scalar> Partition<F> {
    pub fn is_small(&self, v: Vertex) -> bool {
        self.is_small[v as usize]
    }

    pub fn n(&self) -> usize {
        self.is_small.len()
    }
}

/// Splits vertices into `SMALL` (`W′(v) ≤ 0.1·d₀`, or `≤ 6·10⁻³·mp` when
/// starred) and `LARGE`.
pub fn partition<F: Scalar>(g: &IntersectionGraph, params: &ModelParams<F>, variant: Variant) -> Partition<F> {
    let threshold = match variant {
        Variant::Plain => F::c(PLAIN_SMALL_FACTOR) * params.d0,
        Variant::Starred => F::c(STARRED_SMALL_FACTOR) * params.mp(),
    };
    let b = g.source();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut is_small = vec![false; b.n()];
    for v in 0..b.n() as Vertex {
        if F::from_count(b.useful_feature_count(v)) <= threshold {
            small.push(v);
            is_small[v as usize] = true;
        } else {
            large.push(v);
        }
    }
    Partition { small, large, variant, threshold, is_small }
}

fn constants<F: Scalar>(pairs: &[(&'static str, F)]) -> Vec<(&'static str, f64)> {
    pairs.iter().map(|&(k, v)| (k, v.to_f64_lossy())).collect()
}

fn min_degree_report(g: &Graph, k: usize, property: PropertyId, extra: Vec<(&'static str, f64)>) -> PropertyReport {
    let mut consts = vec![("k", k as f64)];
    consts.extend(extra);
    let worst = (0..g.n() as Vertex).min_by_key(|&v| g.degree(v));
    match worst {
        Some(v) if g.degree(v) < k => PropertyReport::violated(
            property,
            Witness::vertices(vec![v]).value(g.degree(v) as f64).bound(k as f64),
            consts,
        ),
        _ => PropertyReport::verified(property, consts),
    }
}

/// P0: `δ(G) ≥ k`.
pub fn check_p0(g: &Graph, k: usize) -> PropertyReport {
    min_degree_report(g, k, PropertyId::P0, Vec::new())
}

/// P0*: `δ(G) ≥ np/2`, checked as `δ(G) ≥ ⌈np/2⌉`.
pub fn check_p0_star<F: Scalar>(g: &Graph, params: &ModelParams<F>) -> PropertyReport {
    let half = params.np() / F::c(2.0);
    let k = half.ceil().to_usize().unwrap_or(usize::MAX);
    min_degree_report(g, k, PropertyId::P0Star, constants(&[("np_half", half)]))
}

/// P1 (or P1* for a starred partition): `|SMALL| ≤ n^{1/3}` (`n^ε`), and
/// `SMALL = ∅` once `d₀ ≥ 2 ln n` (`mp ≥ 2 ln n`).
pub fn check_p1<F: Scalar>(part: &Partition<F>, params: &ModelParams<F>) -> PropertyReport {
    let nf = F::from_count(params.n);
    let two_ln_n = F::c(2.0) * nf.ln();
    let (property, size_bound, scale) = match part.variant {
        Variant::Plain => (PropertyId::P1, nf.cbrt(), params.d0),
        Variant::Starred => (PropertyId::P1Star, nf.powf(params.eps), params.mp()),
    };
    let consts = constants(&[("size_bound", size_bound), ("two_ln_n", two_ln_n), ("scale", scale)]);
    let size = F::from_count(part.small.len());
    if size > size_bound {
        return PropertyReport::violated(
            property,
            Witness::vertices(part.small.clone()).clause("size").value(size.to_f64_lossy()).bound(size_bound.to_f64_lossy()),
            consts,
        );
    }
    if scale >= two_ln_n && !part.small.is_empty() {
        return PropertyReport::violated(
            property,
            Witness::vertices(part.small.clone()).clause("empty").value(size.to_f64_lossy()).bound(0.0),
            consts,
        );
    }
    PropertyReport::verified(property, consts)
}

/// Distances from `src` up to `limit` by BFS; unreached vertices map to `usize::MAX`.
pub(crate) fn bfs_within(g: &Graph, src: Vertex, limit: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[src as usize] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v as usize];
        if dv == limit {
            continue;
        }
        for &u in g.neighbors(v) {
            if dist[u as usize] == usize::MAX {
                dist[u as usize] = dv + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// P2: no two distinct `SMALL` vertices within distance 4 in `G`.
pub fn check_p2<F: Scalar>(g: &Graph, part: &Partition<F>) -> PropertyReport {
    let consts = vec![("max_distance", 4.0)];
    for &v in &part.small {
        let dist = bfs_within(g, v, 4);
        let hit = part
            .small
            .iter()
            .copied()
            .filter(|&u| u != v && dist[u as usize] <= 4)
            .min_by_key(|&u| (dist[u as usize], u));
        if let Some(u) = hit {
            return PropertyReport::violated(
                PropertyId::P2,
                Witness::vertices(vec![v, u]).value(dist[u as usize] as f64).bound(4.0),
                consts,
            );
        }
    }
    PropertyReport::verified(PropertyId::P2, consts)
}

/// P4: `W(v) ≤ 4mp`, `W′(v) ≤ 4d₀` and `N(v) ≤ 12d₁` for every vertex.
pub fn check_p4<F: Scalar>(g: &IntersectionGraph, params: &ModelParams<F>) -> PropertyReport {
    let w_bound = F::c(4.0) * params.mp();
    let wp_bound = F::c(4.0) * params.d0;
    let n_bound = F::c(12.0) * params.d1;
    let consts = constants(&[("w_bound", w_bound), ("w_prime_bound", wp_bound), ("n_bound", n_bound)]);
    let b = g.source();
    for v in 0..b.n() as Vertex {
        let checks = [
            ("W", b.features_of(v).len(), w_bound),
            ("W'", b.useful_feature_count(v), wp_bound),
            ("N", g.degree(v), n_bound),
        ];
        for (clause, value, bound) in checks {
            if F::from_count(value) > bound {
                return PropertyReport::violated(
                    PropertyId::P4,
                    Witness::vertices(vec![v]).clause(clause).value(value as f64).bound(bound.to_f64_lossy()),
                    consts,
                );
            }
        }
    }
    PropertyReport::verified(PropertyId::P4, consts)
}

/// `(ln n / ln ln n) · max{np, 4}`, the P5 bound on `V(w)`.
pub fn p5_bound<F: Scalar>(params: &ModelParams<F>) -> Result<F> {
    let ln_n = F::from_count(params.n).ln();
    let ln_ln_n = ln_n.ln();
    if params.n < 3 || !(ln_ln_n > F::zero()) {
        return param(format!("P5 prefactor ln n / ln ln n undefined or nonpositive at n = {}", params.n));
    }
    Ok(ln_n / ln_ln_n * params.np().max(F::c(4.0)))
}

/// P5: `V(w) ≤ (ln n / ln ln n) · max{np, 4}` for every feature.
pub fn check_p5<F: Scalar>(g: &IntersectionGraph, params: &ModelParams<F>) -> Result<PropertyReport> {
    let bound = p5_bound(params)?;
    let consts = constants(&[("v_bound", bound)]);
    let b = g.source();
    for w in 0..b.m() as crate::Feature {
        let size = b.vertices_of(w).len();
        if F::from_count(size) > bound {
            return Ok(PropertyReport::violated(
                PropertyId::P5,
                Witness::features(vec![w]).value(size as f64).bound(bound.to_f64_lossy()),
                consts,
            ));
        }
    }
    Ok(PropertyReport::verified(PropertyId::P5, consts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{derived_params, intersection_of};
    use crate::BipartiteIncidence;

    #[test]
    fn psi_values() {
        assert_eq!(psi(1.0f64).unwrap(), 0.0);
        assert!((psi(0.1f64).unwrap() - 0.66974).abs() < 1e-5);
        assert!((psi(0.5f64).unwrap() - (0.5 * 0.5f64.ln() + 0.5)).abs() < 1e-15);
        assert!((psi(0.5f64).unwrap() - 0.15343).abs() < 1e-5);
        assert!(psi(0.0f64).is_err());
        assert!(psi(1.01f64).is_err());
        assert!(psi(0.5f32).is_ok());
    }

    #[test]
    fn psi_decreasing() {
        let grid: Vec<f64> = (1..=1000).map(|i| i as f64 / 1000.0).collect();
        for w in grid.windows(2) {
            assert!(psi(w[0]).unwrap() > psi(w[1]).unwrap());
        }
        assert!(grid.iter().all(|&e| psi(e).unwrap() >= 0.0));
    }

    fn star() -> IntersectionGraph {
        let b = BipartiteIncidence::from_feature_sets(4, 3, vec![vec![0, 1, 2], vec![0], vec![1], vec![2]]).unwrap();
        intersection_of(&b)
    }

    #[test]
    fn p0_triangle_and_star() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(check_p0(&tri, 2).is_verified());
        let r = check_p0(&star(), 2);
        assert!(r.is_violated());
        let v = r.witness.as_ref().unwrap().vertices[0];
        assert!(v >= 1 && star().degree(v) == 1);
    }

    #[test]
    fn partition_edgeless_all_small() {
        let b = BipartiteIncidence::from_feature_sets(4, 4, vec![vec![0], vec![1], vec![2], vec![3]]).unwrap();
        let g = intersection_of(&b);
        let params = derived_params(4, 4, 0.25f64).unwrap();
        let part = partition(&g, &params, Variant::Plain);
        assert_eq!(part.small, vec![0, 1, 2, 3]);
        assert!(part.large.is_empty());
    }

    #[test]
    fn partition_complete_incidence_no_small() {
        let b = BipartiteIncidence::sample(5, 40, 1.0, 0).unwrap();
        let g = intersection_of(&b);
        let params = derived_params(5, 40, 0.5f64).unwrap();
        // W'(v) = 40 > 0.1·d0 ≈ 1.9
        let part = partition(&g, &params, Variant::Plain);
        assert!(part.small.is_empty());
        assert_eq!(part.large.len(), 5);
    }

    #[test]
    fn p1_clauses() {
        let b = BipartiteIncidence::from_feature_sets(8, 8, (0..8).map(|i| vec![i]).collect()).unwrap();
        let g = intersection_of(&b);
        let params = derived_params(8, 8, 0.3f64).unwrap();
        let part = partition(&g, &params, Variant::Plain);
        // 8 SMALL vertices > 8^{1/3} = 2
        let r = check_p1(&part, &params);
        assert!(r.is_violated());
        assert_eq!(r.witness.unwrap().clause.as_deref(), Some("size"));

        let full = intersection_of(&BipartiteIncidence::sample(8, 8, 1.0, 0).unwrap());
        let part = partition(&full, &params, Variant::Plain);
        assert!(check_p1(&part, &params).is_verified());
    }

    #[test]
    fn p2_adjacent_small_pair() {
        let b = BipartiteIncidence::from_feature_sets(3, 2, vec![vec![0], vec![0], vec![1]]).unwrap();
        let g = intersection_of(&b);
        let params = derived_params(3, 100, 0.9f64).unwrap();
        let part = partition(&g, &params, Variant::Plain);
        assert!(part.is_small(0) && part.is_small(1));
        let r = check_p2(&g, &part);
        assert!(r.is_violated());
        assert_eq!(r.witness.as_ref().unwrap().value, Some(1.0));

        let full = intersection_of(&BipartiteIncidence::sample(5, 40, 1.0, 0).unwrap());
        let params = derived_params(5, 40, 0.5f64).unwrap();
        assert!(check_p2(&full, &partition(&full, &params, Variant::Plain)).is_verified());
    }

    #[test]
    fn p4_and_p5() {
        let params = derived_params(20, 10, 0.05f64).unwrap();
        let empty = intersection_of(&BipartiteIncidence::sample(20, 10, 0.0, 0).unwrap());
        assert!(check_p4(&empty, &params).is_verified());
        assert!(check_p5(&empty, &params).unwrap().is_verified());
        // W(v) = 10 > 4mp = 2
        let full = intersection_of(&BipartiteIncidence::sample(20, 10, 1.0, 0).unwrap());
        let r = check_p4(&full, &params);
        assert_eq!(r.witness.as_ref().unwrap().clause.as_deref(), Some("W"));
        // V(w) = 20 > (ln 20/ln ln 20)·4 ≈ 10.9
        assert!(check_p5(&full, &params).unwrap().is_violated());
        assert!(check_p5(&full, &derived_params(2, 10, 0.05f64).unwrap()).is_err());
    }
}
