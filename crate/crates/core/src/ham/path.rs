use serde::Serialize;

use crate::error::{RigError, Result};
use crate::{Graph, Vertex};

/// A path `(u₁, …, u_k)` together with the number of rotations used to reach
/// it from the initial path of its stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathState {
    pub seq: Vec<Vertex>,
    pub rot_count: usize,
}

impl PathState {
    pub fn new(seq: Vec<Vertex>) -> Self {
        Self { seq, rot_count: 0 }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn first(&self) -> Vertex {
        self.seq[0]
    }

    pub fn last(&self) -> Vertex {
        self.seq[self.seq.len() - 1]
    }

    /// True when the sequence has no repeats and consecutive vertices are adjacent.
    pub fn is_path_in(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.n()];
        for &v in &self.seq {
            if v as usize >= g.n() || std::mem::replace(&mut seen[v as usize], true) {
                return false;
            }
        }
        self.seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

/// Pósa rotation of `path` along the chord `{u_k, u_i}`, `2 ≤ i ≤ k−2`:
/// returns `(u₁, …, u_i, u_k, u_{k−1}, …, u_{i+1})`.
///
/// `chord` may list its two vertices in either order but one of them must be
/// the last vertex of the path.
pub fn rotate(g: &Graph, path: &PathState, chord: (Vertex, Vertex)) -> Result<PathState> {
    let k = path.len();
    if k < 4 {
        return Err(RigError::Contract(format!("rotation needs k >= 4, path has {k} vertices")));
    }
    let last = path.last();
    let other = match chord {
        (a, b) if a == last => b,
        (a, b) if b == last => a,
        _ => return Err(RigError::Contract(format!("chord {chord:?} does not touch endpoint {last}"))),
    };
    let i = match path.seq.iter().position(|&v| v == other) {
        // 1-based position of u_i
        Some(pos) => pos + 1,
        None => return Err(RigError::Contract(format!("vertex {other} is not on the path"))),
    };
    if !(2..=k - 2).contains(&i) {
        return Err(RigError::Contract(format!("chord index i = {i} outside [2, {}]", k - 2)));
    }
    if !g.has_edge(last, other) {
        return Err(RigError::Contract(format!("{{{last},{other}}} is not an edge")));
    }
    let mut seq = path.seq.clone();
    seq[i..].reverse();
    Ok(PathState { seq, rot_count: path.rot_count + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: usize, extra: &[(Vertex, Vertex)]) -> Graph {
        let mut e: Vec<_> = (0..n as Vertex - 1).map(|i| (i, i + 1)).collect();
        e.extend_from_slice(extra);
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn five_vertex_rotation() {
        // u1..u5 = 0..4, chord {u5, u2}
        let g = path_graph(5, &[(4, 1)]);
        let p = PathState::new(vec![0, 1, 2, 3, 4]);
        let r = rotate(&g, &p, (4, 1)).unwrap();
        assert_eq!(r.seq, vec![0, 1, 4, 3, 2]);
        assert_eq!(r.rot_count, 1);
        assert_eq!(r.last(), 2);
        assert!(r.is_path_in(&g));
    }

    #[test]
    fn minimal_case() {
        let g = path_graph(4, &[(3, 1)]);
        let r = rotate(&g, &PathState::new(vec![0, 1, 2, 3]), (1, 3)).unwrap();
        assert_eq!(r.seq, vec![0, 1, 3, 2]);
    }

    #[test]
    fn contract_violations() {
        let g = path_graph(5, &[(4, 1), (4, 0)]);
        let p = PathState::new(vec![0, 1, 2, 3, 4]);
        // i = 1
        assert!(rotate(&g, &p, (4, 0)).is_err());
        // i = k-1: the path edge itself
        assert!(rotate(&g, &p, (4, 3)).is_err());
        // not an edge
        assert!(rotate(&g, &p, (4, 2)).is_err());
        // chord misses the endpoint
        assert!(rotate(&g, &p, (0, 1)).is_err());
        // too short
        let short = PathState::new(vec![0, 1, 2]);
        assert!(rotate(&g, &short, (2, 0)).is_err());
    }
}
