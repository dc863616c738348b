use serde::Serialize;

use super::graph::IntersectionGraph;
use crate::error::{param, Result};
use crate::{Feature, Vertex};

/// Answers to the set-valued incidence queries for a vertex set `S` and a
/// feature set `R`. All sets are sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IncidenceQueries {
    /// `𝒲(S)`
    pub features: Vec<Feature>,
    /// `𝒱(R)`
    pub vertices_of_r: Vec<Vertex>,
    /// `𝒲′(S)`: features of `S` chosen by at least two vertices overall
    pub useful_features: Vec<Feature>,
    /// `𝒲″(S)`: features chosen by at least two vertices of `S`
    pub internal_features: Vec<Feature>,
    /// `𝒩(S)`
    pub neighbourhood: Vec<Vertex>,
}

impl IncidenceQueries {
    /// `N(S) = |𝒩(S)|`
    pub fn neighbourhood_size(&self) -> usize {
        self.neighbourhood.len()
    }
}

/// Evaluates all incidence queries on `S` and `R`.
pub fn incidence_queries(
    g: &IntersectionGraph,
    s: &[Vertex],
    r: &[Feature],
) -> Result<IncidenceQueries> {
    let b = g.source();
    if let Some(&v) = s.iter().find(|&&v| v as usize >= b.n()) {
        return param(format!("vertex {v} out of range"));
    }
    if let Some(&w) = r.iter().find(|&&w| w as usize >= b.m()) {
        return param(format!("feature {w} out of range"));
    }
    let mut in_s = vec![false; b.n()];
    for &v in s {
        in_s[v as usize] = true;
    }

    let mut count_in_s = vec![0u32; b.m()];
    let mut seen_feature = vec![false; b.m()];
    let mut features = Vec::new();
    for (v, _) in in_s.iter().enumerate().filter(|(_, &x)| x) {
        for &w in b.features_of(v as Vertex) {
            count_in_s[w as usize] += 1;
            if !seen_feature[w as usize] {
                seen_feature[w as usize] = true;
                features.push(w);
            }
        }
    }
    features.sort_unstable();
    let useful_features = features
        .iter()
        .copied()
        .filter(|&w| b.vertices_of(w).len() >= 2)
        .collect();
    let internal_features = features
        .iter()
        .copied()
        .filter(|&w| count_in_s[w as usize] >= 2)
        .collect();

    let mut vertices_of_r: Vec<Vertex> = r.iter().flat_map(|&w| b.vertices_of(w)).copied().collect();
    vertices_of_r.sort_unstable();
    vertices_of_r.dedup();

    Ok(IncidenceQueries {
        features,
        vertices_of_r,
        useful_features,
        internal_features,
        neighbourhood: neighbourhood(g, s),
    })
}

/// `𝒩(S)`: neighbours of `S` outside `S`, sorted.
pub fn neighbourhood(g: &crate::Graph, s: &[Vertex]) -> Vec<Vertex> {
    let mut mark = vec![false; g.n()];
    for &v in s {
        mark[v as usize] = true;
    }
    let mut out = Vec::new();
    for &v in s {
        for &u in g.neighbors(v) {
            if !mark[u as usize] {
                mark[u as usize] = true;
                out.push(u);
            }
        }
    }
    out.sort_unstable();
    out
}
