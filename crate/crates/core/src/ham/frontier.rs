use super::path::PathState;
use crate::Vertex;

pub(crate) const NONE: u32 = u32::MAX;

/// One explored path of a stage, stored as its parent plus the single
/// segment reversal that produced it.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Node {
    pub parent: u32,
    /// Rotation at the last endpoint reverses `[pivot, k−1]`; at the first
    /// endpoint it reverses `[0, pivot]`.
    pub pivot: u32,
    pub rot: u16,
    pub at_last: bool,
}

impl Node {
    pub const ROOT: Node = Node { parent: NONE, pivot: 0, rot: 0, at_last: true };

    #[inline]
    pub fn reversal(&self, k: usize) -> (usize, usize) {
        if self.at_last {
            (self.pivot as usize, k - 1)
        } else {
            (0, self.pivot as usize)
        }
    }
}

/// All paths explored during one stage, in BFS order. Index 0 is the
/// stage's initial path.
#[derive(Debug, Clone)]
pub struct Frontier {
    pub(crate) initial: Vec<Vertex>,
    pub(crate) nodes: Vec<Node>,
}

impl Frontier {
    pub(crate) fn new(initial: Vec<Vertex>) -> Self {
        Self { initial, nodes: vec![Node::ROOT] }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Vertex count `k` of every path in the stage.
    pub fn path_len(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &[Vertex] {
        &self.initial
    }

    /// The stage anchor `u₀`: the first vertex of the initial path.
    pub fn anchor(&self) -> Vertex {
        self.initial[0]
    }

    pub fn rot_count(&self, i: usize) -> usize {
        self.nodes[i].rot as usize
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        match self.nodes[i].parent {
            NONE => None,
            p => Some(p as usize),
        }
    }

    /// Reversals leading from the initial path to path `i`, oldest first.
    pub(crate) fn reversals_into(&self, i: usize, out: &mut Vec<(usize, usize)>) {
        out.clear();
        let k = self.initial.len();
        let mut cur = i as u32;
        while cur != NONE {
            let node = self.nodes[cur as usize];
            if node.parent != NONE {
                out.push(node.reversal(k));
            }
            cur = node.parent;
        }
        out.reverse();
    }

    #[inline]
    pub(crate) fn vertex_at(&self, revs: &[(usize, usize)], mut j: usize) -> Vertex {
        for &(lo, hi) in revs.iter().rev() {
            if lo <= j && j <= hi {
                j = lo + hi - j;
            }
        }
        self.initial[j]
    }

    /// Materializes path `i`, reporting each rotation chord to `on_chord`.
    pub(crate) fn materialize_with(
        &self,
        revs: &[(usize, usize)],
        mut on_chord: impl FnMut(Vertex, Vertex),
    ) -> Vec<Vertex> {
        let mut cur = self.initial.clone();
        let k = cur.len();
        for &(lo, hi) in revs {
            if hi == k - 1 && lo > 0 {
                on_chord(cur[k - 1], cur[lo - 1]);
            } else {
                on_chord(cur[0], cur[hi + 1]);
            }
            cur[lo..=hi].reverse();
        }
        cur
    }

    pub fn path(&self, i: usize) -> PathState {
        let mut revs = Vec::new();
        self.reversals_into(i, &mut revs);
        PathState { seq: self.materialize_with(&revs, |_, _| {}), rot_count: self.rot_count(i) }
    }

    /// `(first, last)` vertex of path `i`.
    pub fn endpoints(&self, i: usize) -> (Vertex, Vertex) {
        let mut revs = Vec::new();
        self.reversals_into(i, &mut revs);
        (self.vertex_at(&revs, 0), self.vertex_at(&revs, self.initial.len() - 1))
    }

    /// Visits `(rot_count, first, last)` for every explored path.
    pub fn for_each_endpoints(&self, mut f: impl FnMut(usize, Vertex, Vertex)) {
        let mut revs = Vec::new();
        let k = self.initial.len();
        for i in 0..self.nodes.len() {
            self.reversals_into(i, &mut revs);
            f(self.rot_count(i), self.vertex_at(&revs, 0), self.vertex_at(&revs, k - 1));
        }
    }
}
