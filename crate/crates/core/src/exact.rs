//! Exact minimum nontrivial fixed points: exhaustive enumeration for small
//! systems and a branch-and-bound search with unit propagation.

use std::time::{Duration, Instant};

use crate::config::Configuration;
use crate::dynamics::{greatest_fixed_point, is_fixed_point};
use crate::error::{Error, Result};
use crate::heuristics::{greedy_framework, GreedyOptions, Strategy};
use crate::special::solve_constant1;
use crate::system::ThresholdSystem;

/// Largest system accepted by [`brute_force_opt`].
pub const BRUTE_FORCE_CAP: usize = 24;

/// Next integer with the same popcount (Gosper's hack).
fn next_same_popcount(x: u32) -> u32 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Enumerates configurations by increasing weight and returns the first fixed
/// point, which is a minimum. With `q`, weights above `q` are not visited and
/// `None` then means "no nontrivial fixed point of weight at most `q`".
pub fn brute_force_opt(sys: &ThresholdSystem, q: Option<usize>) -> Result<Option<Configuration>> {
    let n = sys.vertex_count();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::Capacity(format!("brute force is limited to {BRUTE_FORCE_CAP} vertices, got {n}")));
    }
    if q == Some(0) {
        return Err(Error::Precondition("weight budget q must be at least 1".into()));
    }
    let closed: Vec<u32> = (0..n)
        .map(|v| sys.neighbors(v).iter().fold(1u32 << v, |m, &u| m | (1 << u)))
        .collect();
    let taus = sys.thresholds();
    let is_fixed = |mask: u32| {
        (0..n).all(|v| ((mask & closed[v]).count_ones() >= taus[v]) == (mask >> v & 1 == 1))
    };
    let top = q.map_or(n, |q| q.min(n));
    let limit: u64 = 1u64 << n;
    for w in 1..=top {
        let mut mask: u32 = (1u32 << w) - 1;
        while (mask as u64) < limit {
            if is_fixed(mask) {
                return Ok(Some(Configuration::from_mask(n, mask as u64)));
            }
            mask = next_same_popcount(mask);
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactOutcome {
    Optimal(Configuration),
    Infeasible,
    /// Budget ran out; carries the best fixed point known at that moment.
    Timeout(Option<Configuration>),
}

impl ExactOutcome {
    pub fn configuration(&self) -> Option<&Configuration> {
        match self {
            ExactOutcome::Optimal(c) | ExactOutcome::Timeout(Some(c)) => Some(c),
            _ => None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, ExactOutcome::Optimal(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    /// Weights of successive incumbents, first one from the greedy warm start.
    pub incumbent_history: Vec<usize>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSolution {
    pub outcome: ExactOutcome,
    pub stats: SearchStats,
}

const UNASSIGNED: u8 = 2;

/// Partial assignment with closed-neighborhood counters and an undo trail.
struct SearchNode<'a> {
    sys: &'a ThresholdSystem,
    value: Vec<u8>,
    ones: Vec<u32>,
    free: Vec<u32>,
    trail: Vec<usize>,
    total_ones: usize,
    /// Every vertex adds to at most this many closed-neighborhood counts.
    spread: u64,
}

impl<'a> SearchNode<'a> {
    fn new(sys: &'a ThresholdSystem) -> Self {
        let n = sys.vertex_count();
        let free = (0..n).map(|v| sys.degree(v) as u32 + 1).collect();
        let spread = (0..n).map(|v| sys.out_neighbors(v).len() as u64 + 1).max().unwrap_or(1);
        SearchNode { sys, value: vec![UNASSIGNED; n], ones: vec![0; n], free, trail: Vec::new(), total_ones: 0, spread }
    }

    fn assign(&mut self, v: usize, bit: u8, queue: &mut Vec<usize>) {
        self.value[v] = bit;
        self.trail.push(v);
        if bit == 1 {
            self.total_ones += 1;
        }
        for w in std::iter::once(v).chain(self.sys.out_neighbors(v).iter().copied()) {
            self.free[w] -= 1;
            if bit == 1 {
                self.ones[w] += 1;
            }
            queue.push(w);
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail underflow");
            let bit = self.value[v];
            if bit == 1 {
                self.total_ones -= 1;
            }
            for w in std::iter::once(v).chain(self.sys.out_neighbors(v).iter().copied()) {
                self.free[w] += 1;
                if bit == 1 {
                    self.ones[w] -= 1;
                }
            }
            self.value[v] = UNASSIGNED;
        }
    }

    fn force_free_neighbors(&mut self, v: usize, bit: u8, queue: &mut Vec<usize>) {
        let sys = self.sys;
        for u in std::iter::once(v).chain(sys.neighbors(v).iter().copied()) {
            if self.value[u] == UNASSIGNED {
                self.assign(u, bit, queue);
            }
        }
    }

    /// Applies forced assignments until quiescence; `false` on conflict.
    fn propagate(&mut self, mut queue: Vec<usize>) -> bool {
        while let Some(v) = queue.pop() {
            let tau = self.sys.threshold(v);
            let (ones, free) = (self.ones[v], self.free[v]);
            match self.value[v] {
                1 => {
                    if ones + free < tau {
                        return false;
                    }
                    if ones < tau && ones + free == tau {
                        self.force_free_neighbors(v, 1, &mut queue);
                    }
                }
                0 => {
                    if ones >= tau {
                        return false;
                    }
                    if ones + 1 == tau && free > 0 {
                        self.force_free_neighbors(v, 0, &mut queue);
                    }
                }
                _ => {
                    if ones >= tau {
                        self.assign(v, 1, &mut queue);
                    } else if ones + free < tau {
                        self.assign(v, 0, &mut queue);
                    }
                }
            }
        }
        true
    }

    fn deficit(&self, v: usize) -> u64 {
        self.sys.threshold(v).saturating_sub(self.ones[v]) as u64
    }

    fn lower_bound(&self) -> usize {
        let (mut total, mut worst) = (0u64, 0u64);
        for v in 0..self.value.len() {
            if self.value[v] == 1 {
                let d = self.deficit(v);
                total += d;
                worst = worst.max(d);
            }
        }
        self.total_ones + total.div_ceil(self.spread).max(worst) as usize
    }

    /// Maximum-degree free neighbor of some unsatisfied state-1 vertex, ties
    /// by index. `None` when every state-1 vertex is satisfied.
    fn branch_vertex(&self) -> Option<usize> {
        let sys = self.sys;
        let mut pick: Option<usize> = None;
        for v in 0..self.value.len() {
            if self.value[v] != 1 || self.deficit(v) == 0 {
                continue;
            }
            for &u in sys.neighbors(v) {
                if self.value[u] == UNASSIGNED
                    && pick.is_none_or(|p| (sys.degree(u), std::cmp::Reverse(u)) > (sys.degree(p), std::cmp::Reverse(p)))
                {
                    pick = Some(u);
                }
            }
        }
        pick
    }

    fn current(&self) -> Configuration {
        Configuration::from_support(self.value.len(), (0..self.value.len()).filter(|&v| self.value[v] == 1))
    }
}

struct Search {
    best: Option<Configuration>,
    history: Vec<usize>,
    nodes: u64,
    deadline: Instant,
    timed_out: bool,
}

impl Search {
    fn bound(&self) -> usize {
        self.best.as_ref().map_or(usize::MAX, |b| b.hamming_weight())
    }

    fn offer(&mut self, c: Configuration) {
        if c.hamming_weight() < self.bound() {
            self.history.push(c.hamming_weight());
            self.best = Some(c);
        }
    }

    fn dfs(&mut self, node: &mut SearchNode) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(1024) && Instant::now() >= self.deadline {
            self.timed_out = true;
        }
        if self.timed_out || node.lower_bound() >= self.bound() {
            return;
        }
        let Some(b) = node.branch_vertex() else {
            let c = node.current();
            debug_assert!(is_fixed_point(node.sys, &c));
            self.offer(c);
            return;
        };
        for bit in [1u8, 0] {
            let mark = node.trail.len();
            let mut q = Vec::new();
            node.assign(b, bit, &mut q);
            if node.propagate(q) {
                self.dfs(node);
            }
            node.undo_to(mark);
            if self.timed_out {
                return;
            }
        }
    }
}

/// Exact search. Systems with a threshold-0 vertex are handed to
/// [`solve_constant1`], whose answer is always optimal.
///
/// Every fixed point lies below the greatest fixed point, so all vertices
/// outside it start at 0. The remaining vertices are tried as the
/// lowest-ranked state-1 vertex in turn, in ascending `(τ, index)` order: each
/// root is explored with every earlier root pinned to 0.
pub fn branch_and_bound_opt(sys: &ThresholdSystem, time_budget: Duration) -> ExactSolution {
    let start = Instant::now();
    let finish = |outcome, nodes, incumbent_history| ExactSolution {
        outcome,
        stats: SearchStats { nodes, incumbent_history, elapsed: start.elapsed() },
    };
    if sys.has_constant1() {
        let c = solve_constant1(sys).expect("constant-1 vertex present");
        let w = c.hamming_weight();
        return finish(ExactOutcome::Optimal(c), 0, vec![w]);
    }
    let mut search = Search {
        best: None,
        history: Vec::new(),
        nodes: 0,
        deadline: start + time_budget,
        timed_out: false,
    };
    if let Ok(run) = greedy_framework(sys, GreedyOptions::new(Strategy::Np)) {
        if let Some(c) = run.best {
            search.offer(c);
        }
    }
    let gfp = greatest_fixed_point(sys);
    let mut node = SearchNode::new(sys);
    let mut q = Vec::new();
    for v in 0..sys.vertex_count() {
        if !gfp.get(v) {
            node.assign(v, 0, &mut q);
        }
    }
    let mut alive = node.propagate(q);
    let mut roots: Vec<usize> = gfp.support().collect();
    roots.sort_by_key(|&v| (sys.threshold(v), v));
    for r in roots {
        if Instant::now() >= search.deadline {
            search.timed_out = true;
        }
        if !alive || search.timed_out {
            break;
        }
        if node.value[r] == UNASSIGNED {
            let mark = node.trail.len();
            let mut q = Vec::new();
            node.assign(r, 1, &mut q);
            if node.propagate(q) {
                search.dfs(&mut node);
            }
            node.undo_to(mark);
            if search.timed_out {
                break;
            }
            let mut q = Vec::new();
            node.assign(r, 0, &mut q);
            alive = node.propagate(q);
        } else if node.value[r] == 1 {
            // forced on by earlier zeros; every remaining fixed point contains it
            search.dfs(&mut node);
            break;
        }
    }
    let outcome = match (search.timed_out, search.best) {
        (true, best) => ExactOutcome::Timeout(best),
        (false, Some(c)) => ExactOutcome::Optimal(c),
        (false, None) => ExactOutcome::Infeasible,
    };
    finish(outcome, search.nodes, search.history)
}
