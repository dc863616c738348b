//! Naive recomputations of the structural properties on small instances,
//! using adjacency bitmasks and direct set counting.

use rig_core::{BipartiteIncidence, Vertex};

pub struct Naive<'a> {
    pub b: &'a BipartiteIncidence,
    pub n: usize,
    pub m: usize,
    /// `adj[v]` as a bitmask over vertices.
    pub adj: Vec<u64>,
}

impl<'a> Naive<'a> {
    pub fn new(b: &'a BipartiteIncidence) -> Self {
        let n = b.n();
        assert!(n <= 64);
        let mut adj = vec![0u64; n];
        for u in 0..n {
            for v in 0..n {
                if u != v && b.features_of(u as Vertex).iter().any(|w| b.features_of(v as Vertex).contains(w)) {
                    adj[u] |= 1 << v;
                }
            }
        }
        Self { b, n, m: b.m(), adj }
    }

    pub fn chosen_count(&self, w: u32) -> usize {
        (0..self.n).filter(|&v| self.b.features_of(v as Vertex).contains(&w)).count()
    }

    pub fn w_prime(&self, v: usize) -> usize {
        self.b.features_of(v as Vertex).iter().filter(|&&w| self.chosen_count(w) >= 2).count()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn small_mask(&self, threshold: f64) -> u64 {
        (0..self.n).filter(|&v| self.w_prime(v) as f64 <= threshold).fold(0, |acc, v| acc | 1 << v)
    }

    pub fn p0(&self, k: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) >= k)
    }

    pub fn p1(&self, small: u64, size_bound: f64, scale: f64) -> bool {
        let size = small.count_ones() as f64;
        size <= size_bound && !(scale >= 2.0 * (self.n as f64).ln() && small != 0)
    }

    /// All-pairs shortest paths by Floyd–Warshall.
    pub fn distances(&self) -> Vec<Vec<usize>> {
        let inf = usize::MAX / 4;
        let mut d = vec![vec![inf; self.n]; self.n];
        for u in 0..self.n {
            d[u][u] = 0;
            for v in 0..self.n {
                if self.adj[u] >> v & 1 == 1 {
                    d[u][v] = 1;
                }
            }
        }
        for k in 0..self.n {
            for i in 0..self.n {
                for j in 0..self.n {
                    if d[i][k] + d[k][j] < d[i][j] {
                        d[i][j] = d[i][k] + d[k][j];
                    }
                }
            }
        }
        d
    }

    pub fn p2(&self, small: u64) -> bool {
        let d = self.distances();
        (0..self.n).all(|u| {
            (0..self.n).all(|v| u == v || small >> u & 1 == 0 || small >> v & 1 == 0 || d[u][v] > 4)
        })
    }

    pub fn neighbourhood_size(&self, s: u64) -> usize {
        let nb = (0..self.n).filter(|&v| s >> v & 1 == 1).fold(0u64, |acc, v| acc | self.adj[v]);
        (nb & !s).count_ones() as usize
    }

    pub fn p3(&self, large: u64, b1: f64, d1: f64) -> bool {
        let max = self.n as f64 / d1;
        (1u64..1 << self.n).filter(|s| s & !large == 0).all(|s| {
            let size = s.count_ones() as f64;
            size > max || self.neighbourhood_size(s) as f64 >= b1 * d1 * size
        })
    }

    pub fn p4(&self, mp: f64, d0: f64, d1: f64) -> bool {
        (0..self.n).all(|v| {
            self.b.features_of(v as Vertex).len() as f64 <= 4.0 * mp
                && self.w_prime(v) as f64 <= 4.0 * d0
                && self.degree(v) as f64 <= 12.0 * d1
        })
    }

    pub fn p5(&self, np: f64) -> bool {
        let ln = (self.n as f64).ln();
        let bound = ln / ln.ln() * np.max(4.0);
        (0..self.m as u32).all(|w| self.chosen_count(w) as f64 <= bound)
    }

    pub fn vr(&self, p: f64, np: f64) -> bool {
        assert!(self.m <= 20);
        let max = ((1.0 / p).floor() as usize).min(self.m);
        (1u32..1 << self.m).filter(|r| r.count_ones() as usize <= max).all(|r| {
            let covered = (0..self.n)
                .filter(|&v| self.b.features_of(v as Vertex).iter().any(|&w| r >> w & 1 == 1))
                .count();
            covered as f64 >= np * r.count_ones() as f64 / 2.0 + 1.0
        })
    }
}
