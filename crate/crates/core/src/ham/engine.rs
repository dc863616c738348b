use std::collections::BTreeSet;
use std::hash::Hasher;

use rustc_hash::{FxHashSet, FxHasher};
use serde::{Deserialize, Serialize};

use super::budget::compute_budget;
use super::frontier::{Frontier, Node, NONE};
use crate::error::{param, Result};
use crate::{Graph, Vertex};

pub const DEFAULT_MAX_QUEUE: usize = 10_000_000;

/// Whether a stage re-explores a path it has already seen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Every rotation move is enqueued, repeats included.
    #[default]
    Faithful,
    /// A path whose vertex sequence (up to reversal) already occurred in the
    /// stage is not enqueued again.
    Dedup,
}

impl std::str::FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "faithful" => Ok(Self::Faithful),
            "dedup" => Ok(Self::Dedup),
            other => Err(format!("unknown mode `{other}` (faithful|dedup)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HamConfig {
    /// Rotation budget `T`; paths with up to `2T+1` rotations are explored.
    pub budget: usize,
    pub mode: SearchMode,
    /// Upper bound on the number of paths held by one stage.
    pub max_queue: usize,
}

impl HamConfig {
    pub fn from_d(n: usize, d: f64) -> Result<Self> {
        if !(d > 1.0) {
            return param(format!("d = {d} must exceed 1"));
        }
        Ok(Self::with_budget(compute_budget(n, d)))
    }

    pub fn with_budget(budget: usize) -> Self {
        Self { budget, mode: SearchMode::Faithful, max_queue: DEFAULT_MAX_QUEUE }
    }

    pub fn mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn max_queue(mut self, max_queue: usize) -> Self {
        self.max_queue = max_queue;
        self
    }

    pub fn max_rotations(&self) -> usize {
        2 * self.budget + 1
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamCounters {
    pub rotations_total: u64,
    pub extensions_simple: u64,
    pub extensions_cycle: u64,
    pub paths_explored: u64,
    pub stages_completed: u64,
}

impl HamCounters {
    pub fn add(&mut self, other: &HamCounters) {
        self.rotations_total += other.rotations_total;
        self.extensions_simple += other.extensions_simple;
        self.extensions_cycle += other.extensions_cycle;
        self.paths_explored += other.paths_explored;
        self.stages_completed += other.stages_completed;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// Every path with at most `2T+1` rotations was explored without extension.
    Exhausted,
    /// A path closed into a cycle none of whose vertices has an outside
    /// neighbour.
    ComponentClosed,
}

/// Record of an unsuccessful run.
#[derive(Debug, Clone)]
pub struct HamTrace {
    /// The stage `k` (path length) at which the run stopped.
    pub stage: usize,
    pub budget: usize,
    pub kind: FailureKind,
    /// `H(G)`: edges `(u, v)`, `u < v`, sorted.
    pub h_set: Vec<(Vertex, Vertex)>,
    pub frontier: Frontier,
}

#[derive(Debug, Clone)]
pub enum HamResult {
    Cycle(Vec<Vertex>),
    Failure(HamTrace),
    Overflow { stage: usize, queued: usize },
}

#[derive(Debug, Clone)]
pub struct HamOutcome {
    pub result: HamResult,
    pub counters: HamCounters,
    pub budget: usize,
    pub mode: SearchMode,
}

impl HamOutcome {
    pub fn is_cycle(&self) -> bool {
        matches!(self.result, HamResult::Cycle(_))
    }

    pub fn cycle(&self) -> Option<&[Vertex]> {
        match &self.result {
            HamResult::Cycle(c) => Some(c),
            _ => None,
        }
    }

    pub fn trace(&self) -> Option<&HamTrace> {
        match &self.result {
            HamResult::Failure(t) => Some(t),
            _ => None,
        }
    }
}

/// Runs HAM with budget derived from `d`, in faithful mode.
pub fn run_ham(g: &Graph, d: f64) -> Result<HamOutcome> {
    run_ham_with(g, &HamConfig::from_d(g.n(), d)?)
}

#[inline]
fn norm(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

fn lowest_off_path(g: &Graph, v: Vertex, pos: &[u32]) -> Option<Vertex> {
    g.neighbors(v).iter().copied().find(|&u| pos[u as usize] == NONE)
}

fn path_key(seq: &[Vertex]) -> u128 {
    let forward = seq[0] < seq[seq.len() - 1];
    let mut h1 = FxHasher::default();
    let mut h2 = FxHasher::default();
    h2.write_u64(0x5bd1_e995_0000_0001);
    let mut feed = |v: Vertex| {
        h1.write_u32(v);
        h2.write_u32(v ^ 0xa5a5_a5a5);
    };
    if forward {
        seq.iter().for_each(|&v| feed(v));
    } else {
        seq.iter().rev().for_each(|&v| feed(v));
    }
    ((h1.finish() as u128) << 64) | h2.finish() as u128
}

struct Engine<'g> {
    g: &'g Graph,
    cfg: HamConfig,
    pos: Vec<u32>,
    frontier: Frontier,
    h: BTreeSet<(Vertex, Vertex)>,
    counters: HamCounters,
    seen: FxHashSet<u128>,
    revs: Vec<(usize, usize)>,
}

enum Step {
    Next,
    Done(HamResult),
}

impl<'g> Engine<'g> {
    fn install(&mut self, old_len: usize, seq: Vec<Vertex>, appended_only: bool) {
        if appended_only {
            let last = seq.len() - 1;
            self.pos[seq[last] as usize] = last as u32;
        } else {
            debug_assert!(seq.len() == old_len + 1);
            for (i, &v) in seq.iter().enumerate() {
                self.pos[v as usize] = i as u32;
            }
        }
        self.frontier = Frontier::new(seq);
        if self.cfg.mode == SearchMode::Dedup {
            self.seen.clear();
            self.seen.insert(path_key(&self.frontier.initial));
        }
    }

    #[inline]
    fn pos_of(&self, v: Vertex) -> usize {
        let mut p = self.pos[v as usize] as usize;
        for &(lo, hi) in &self.revs {
            if lo <= p && p <= hi {
                p = lo + hi - p;
            }
        }
        p
    }

    fn lineage(&mut self) -> Vec<Vertex> {
        let h = &mut self.h;
        self.frontier.materialize_with(&self.revs, |a, b| {
            h.insert(norm(a, b));
        })
    }

    fn push_rotation(&mut self, parent: usize, pivot: usize, at_last: bool) -> Option<HamResult> {
        let node = Node {
            parent: parent as u32,
            pivot: pivot as u32,
            rot: self.frontier.nodes[parent].rot + 1,
            at_last,
        };
        self.counters.rotations_total += 1;
        if self.cfg.mode == SearchMode::Dedup {
            let k = self.frontier.initial.len();
            self.revs.push(node.reversal(k));
            let seq = self.frontier.materialize_with(&self.revs, |_, _| {});
            self.revs.pop();
            if !self.seen.insert(path_key(&seq)) {
                return None;
            }
        }
        self.frontier.nodes.push(node);
        if self.frontier.nodes.len() > self.cfg.max_queue {
            return Some(HamResult::Overflow {
                stage: self.frontier.initial.len(),
                queued: self.frontier.nodes.len(),
            });
        }
        None
    }

    fn run_stage(&mut self) -> Step {
        let n = self.g.n();
        let k = self.frontier.initial.len();
        let max_rot = self.cfg.max_rotations();
        let mut head = 0;
        while head < self.frontier.nodes.len() {
            let id = head;
            head += 1;
            self.counters.paths_explored += 1;
            let mut revs = std::mem::take(&mut self.revs);
            self.frontier.reversals_into(id, &mut revs);
            self.revs = revs;
            let a = self.frontier.vertex_at(&self.revs, 0);
            let b = self.frontier.vertex_at(&self.revs, k - 1);

            if let Some(v) = lowest_off_path(self.g, b, &self.pos) {
                let appended_only = self.revs.is_empty();
                let mut seq = self.lineage();
                seq.push(v);
                self.h.insert(norm(b, v));
                self.counters.extensions_simple += 1;
                self.counters.stages_completed += 1;
                self.install(k, seq, appended_only);
                return Step::Next;
            }
            if let Some(v) = lowest_off_path(self.g, a, &self.pos) {
                let mut seq = Vec::with_capacity(k + 1);
                seq.push(v);
                seq.extend(self.lineage());
                self.h.insert(norm(a, v));
                self.counters.extensions_simple += 1;
                self.counters.stages_completed += 1;
                self.install(k, seq, false);
                return Step::Next;
            }

            if k >= 3 && self.g.has_edge(a, b) {
                let cyc = self.lineage();
                if k == n {
                    return Step::Done(HamResult::Cycle(cyc));
                }
                self.h.insert(norm(a, b));
                let mut order = cyc.clone();
                order.sort_unstable();
                let hit = order
                    .iter()
                    .find_map(|&u| lowest_off_path(self.g, u, &self.pos).map(|v| (u, v)));
                let Some((u, v)) = hit else {
                    return Step::Done(self.failure(FailureKind::ComponentClosed));
                };
                let j = cyc.iter().position(|&x| x == u).expect("u on cycle");
                let mut seq = Vec::with_capacity(k + 1);
                seq.extend_from_slice(&cyc[j + 1..]);
                seq.extend_from_slice(&cyc[..=j]);
                seq.push(v);
                self.h.insert(norm(u, v));
                self.counters.extensions_cycle += 1;
                self.counters.stages_completed += 1;
                self.install(k, seq, false);
                return Step::Next;
            }

            if k >= 4 && (self.frontier.nodes[id].rot as usize) < max_rot {
                for idx in 0..self.g.degree(b) {
                    let u = self.g.neighbors(b)[idx];
                    let p = self.pos_of(u);
                    if (1..=k - 3).contains(&p) {
                        if let Some(over) = self.push_rotation(id, p + 1, true) {
                            return Step::Done(over);
                        }
                    }
                }
                for idx in 0..self.g.degree(a) {
                    let u = self.g.neighbors(a)[idx];
                    let p = self.pos_of(u);
                    if (2..=k - 2).contains(&p) {
                        if let Some(over) = self.push_rotation(id, p - 1, false) {
                            return Step::Done(over);
                        }
                    }
                }
            }
        }
        Step::Done(self.failure(FailureKind::Exhausted))
    }

    fn failure(&mut self, kind: FailureKind) -> HamResult {
        let frontier = std::mem::replace(&mut self.frontier, Frontier::new(vec![0]));
        HamResult::Failure(HamTrace {
            stage: frontier.initial.len(),
            budget: self.cfg.budget,
            kind,
            h_set: std::mem::take(&mut self.h).into_iter().collect(),
            frontier,
        })
    }
}

/// Runs HAM on `g` under an explicit configuration.
///
/// Starts from the path `(0)`. Each stage explores paths of a fixed length
/// breadth-first: a path is extended at its last then its first endpoint by
/// the lowest-indexed outside neighbour, closed into a cycle and reopened if
/// its endpoints are adjacent, and otherwise rotated at both endpoints while
/// it carries fewer than `2T+1` rotations.
pub fn run_ham_with(g: &Graph, cfg: &HamConfig) -> Result<HamOutcome> {
    let n = g.n();
    if n < 3 {
        return param(format!("HAM needs n >= 3, got {n}"));
    }
    if cfg.max_rotations() > u16::MAX as usize {
        return param(format!("budget T = {} too large", cfg.budget));
    }
    let mut pos = vec![NONE; n];
    pos[0] = 0;
    let mut engine = Engine {
        g,
        cfg: *cfg,
        pos,
        frontier: Frontier::new(vec![0]),
        h: BTreeSet::new(),
        counters: HamCounters::default(),
        seen: FxHashSet::default(),
        revs: Vec::new(),
    };
    if cfg.mode == SearchMode::Dedup {
        engine.seen.insert(path_key(&[0]));
    }
    loop {
        match engine.run_stage() {
            Step::Next => continue,
            Step::Done(result) => {
                return Ok(HamOutcome { result, counters: engine.counters, budget: cfg.budget, mode: cfg.mode })
            }
        }
    }
}
