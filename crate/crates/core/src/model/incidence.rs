use rand::Rng;

use crate::error::{param, Result};
use crate::rng::rng_from_seed;
use crate::{Feature, Vertex};

/// Vertex–feature incidence structure `B(n, m, p)`.
///
/// `chose[v]` is the sorted feature set of vertex `v` and `chosen_by[w]` the
/// sorted set of vertices that picked feature `w`. The two tables are exact
/// transposes of each other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteIncidence {
    n: usize,
    m: usize,
    chose: Vec<Vec<Feature>>,
    chosen_by: Vec<Vec<Vertex>>,
}

impl BipartiteIncidence {
    /// Builds an incidence from per-vertex feature lists.
    ///
    /// Lists need not be sorted; a repeated feature within one list is an error.
    pub fn from_feature_sets(n: usize, m: usize, mut chose: Vec<Vec<Feature>>) -> Result<Self> {
        if chose.len() != n {
            return param(format!("expected {n} feature sets, got {}", chose.len()));
        }
        for (v, set) in chose.iter_mut().enumerate() {
            set.sort_unstable();
            if let Some(&w) = set.iter().find(|&&w| w as usize >= m) {
                return param(format!("vertex {v}: feature {w} out of range [0,{m})"));
            }
            if set.windows(2).any(|p| p[0] == p[1]) {
                return param(format!("vertex {v}: repeated feature"));
            }
        }
        Ok(Self::from_sorted_unchecked(n, m, chose))
    }

    pub(crate) fn from_sorted_unchecked(n: usize, m: usize, chose: Vec<Vec<Feature>>) -> Self {
        let chosen_by = transpose(m, &chose);
        Self { n, m, chose, chosen_by }
    }

    /// Builds an incidence from `(vertex, feature)` pairs.
    pub fn from_pairs(n: usize, m: usize, pairs: &[(Vertex, Feature)]) -> Result<Self> {
        let mut chose = vec![Vec::new(); n];
        for &(v, w) in pairs {
            if v as usize >= n {
                return param(format!("vertex {v} out of range [0,{n})"));
            }
            chose[v as usize].push(w);
        }
        Self::from_feature_sets(n, m, chose)
    }

    /// Samples `B(n, m, p)`: each of the `n·m` pairs present independently with
    /// probability `p`.
    pub fn sample(n: usize, m: usize, p: f64, seed: u64) -> Result<Self> {
        if n == 0 || m == 0 {
            return param("n and m must be positive");
        }
        if !(0.0..=1.0).contains(&p) {
            return param(format!("p = {p} outside [0,1]"));
        }
        let mut rng = rng_from_seed(seed);
        Ok(Self::sample_with(n, m, p, &mut rng))
    }

    pub(crate) fn sample_with<R: Rng>(n: usize, m: usize, p: f64, rng: &mut R) -> Self {
        let mut chose = vec![Vec::new(); n];
        let total = n as u64 * m as u64;
        if p >= 1.0 {
            for set in chose.iter_mut() {
                set.extend(0..m as Feature);
            }
        } else if p > 0.0 {
            // Geometric gaps between successes over the vertex-major pair index.
            let log_q = (-p).ln_1p();
            let mut idx: u64 = 0;
            loop {
                let u: f64 = rng.random();
                let gap = ((1.0 - u).ln() / log_q).floor();
                if gap >= (total - idx) as f64 {
                    break;
                }
                idx += gap as u64;
                chose[(idx / m as u64) as usize].push((idx % m as u64) as Feature);
                idx += 1;
                if idx >= total {
                    break;
                }
            }
        }
        Self::from_sorted_unchecked(n, m, chose)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `𝒲(v)`.
    pub fn features_of(&self, v: Vertex) -> &[Feature] {
        &self.chose[v as usize]
    }

    /// `𝒱(w)`.
    pub fn vertices_of(&self, w: Feature) -> &[Vertex] {
        &self.chosen_by[w as usize]
    }

    pub fn feature_sets(&self) -> &[Vec<Feature>] {
        &self.chose
    }

    pub fn vertex_sets(&self) -> &[Vec<Vertex>] {
        &self.chosen_by
    }

    pub fn contains(&self, v: Vertex, w: Feature) -> bool {
        self.chose[v as usize].binary_search(&w).is_ok()
    }

    pub fn pair_count(&self) -> usize {
        self.chose.iter().map(Vec::len).sum()
    }

    /// All incidence pairs in vertex-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Feature)> + '_ {
        self.chose
            .iter()
            .enumerate()
            .flat_map(|(v, ws)| ws.iter().map(move |&w| (v as Vertex, w)))
    }

    /// `W'(v)`: number of features of `v` chosen by at least two vertices.
    pub fn useful_feature_count(&self, v: Vertex) -> usize {
        self.chose[v as usize]
            .iter()
            .filter(|&&w| self.chosen_by[w as usize].len() >= 2)
            .count()
    }

    /// Checks that the two incidence tables are mutual transposes.
    pub fn is_consistent(&self) -> bool {
        self.chose.len() == self.n
            && self.chosen_by.len() == self.m
            && self.chosen_by == transpose(self.m, &self.chose)
    }
}

fn transpose(m: usize, chose: &[Vec<Feature>]) -> Vec<Vec<Vertex>> {
    let mut chosen_by = vec![Vec::new(); m];
    // Visiting vertices in order keeps each list sorted.
    for (v, ws) in chose.iter().enumerate() {
        for &w in ws {
            chosen_by[w as usize].push(v as Vertex);
        }
    }
    chosen_by
}
