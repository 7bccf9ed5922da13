//! The greedy framework: for each seed vertex `u`, grow a set `A_u` of state-1
//! vertices until it is a fixed point, then keep the lightest one.
//!
//! Two conditions make `A_u` a fixed point:
//!
//! 1. every `v ∈ A_u` sees at least `τ_v` members of `A_u` in `N[v]`;
//! 2. every `w ∉ A_u` sees fewer than `τ_w`.
//!
//! Condition 2 is kept true at all times by *passive closure*: whenever a
//! vertex joins, any outside vertex whose threshold becomes met joins too.
//! Condition 1 is tracked by the deficit `δ = Σ_{v∈A_u} τ̃_v` with residual
//! `τ̃_v = max(0, τ_v - |A_u ∩ N[v]|)`, so `A_u` is a fixed point exactly when
//! `δ = 0`. While `δ > 0` one candidate is chosen from `B`, the outside
//! neighbors of unsatisfied members, by minimizing a strategy objective:
//!
//! | strategy | objective            |
//! |----------|----------------------|
//! | `full`   | `τ̃_v + ρ_v - ε_v`    |
//! | `np`     | `τ̃_v - ε_v`          |
//! | `thresh` | `τ̃_v`                |
//!
//! For a candidate `v`, `τ̃_v` is the residual `v` carries right after joining
//! on its own, `ρ_v` the number of vertices that would join passively, and
//! `ε_v` the resulting decrease of `δ + τ̃_v`, so that selecting `v` moves the
//! deficit to exactly `δ + τ̃_v - ε_v`. `ρ_v` and `ε_v` come from a tentative
//! join that is rolled back.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::system::ThresholdSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    Full,
    Np,
    Thresh,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Full, Strategy::Np, Strategy::Thresh];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Full => "full",
            Strategy::Np => "np",
            Strategy::Thresh => "thresh",
        }
    }

    fn needs_probe(self) -> bool {
        !matches!(self, Strategy::Thresh)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Strategy::Full),
            "np" => Ok(Strategy::Np),
            "thresh" => Ok(Strategy::Thresh),
            other => Err(Error::UnknownMethod(other.to_string())),
        }
    }
}

/// Objective components for one candidate at one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probe {
    pub residual: u64,
    pub passive: u64,
    pub epsilon: u64,
}

impl Probe {
    pub fn objective(&self, strategy: Strategy) -> i64 {
        let (r, p, e) = (self.residual as i64, self.passive as i64, self.epsilon as i64);
        match strategy {
            Strategy::Full => r + p - e,
            Strategy::Np => r - e,
            Strategy::Thresh => r,
        }
    }
}

/// Working state of one seeded construction.
///
/// `count[v] = |A ∩ N[v]|` is maintained incrementally for every vertex, which
/// gives residuals, the deficit and the passive test in O(1) each.
#[derive(Debug, Clone)]
pub struct GreedyState<'a> {
    sys: &'a ThresholdSystem,
    in_set: Vec<bool>,
    members: Vec<usize>,
    count: Vec<u32>,
    delta: u64,
}

impl<'a> GreedyState<'a> {
    /// Empty active set.
    pub fn new(sys: &'a ThresholdSystem) -> Self {
        let n = sys.vertex_count();
        GreedyState { sys, in_set: vec![false; n], members: Vec::new(), count: vec![0; n], delta: 0 }
    }

    /// Active set `{u}` plus its passive closure.
    pub fn seeded(sys: &'a ThresholdSystem, u: usize) -> Self {
        let mut st = Self::new(sys);
        st.activate(u);
        st
    }

    pub fn contains(&self, v: usize) -> bool {
        self.in_set[v]
    }

    /// `A_u` in insertion order.
    pub fn active_set(&self) -> &[usize] {
        &self.members
    }

    pub fn weight(&self) -> usize {
        self.members.len()
    }

    pub fn deficit(&self) -> u64 {
        self.delta
    }

    /// `τ̃_v` for members, 0 otherwise.
    pub fn residual(&self, v: usize) -> u64 {
        if self.in_set[v] {
            self.sys.threshold(v).saturating_sub(self.count[v]) as u64
        } else {
            0
        }
    }

    /// `D`: members with a positive residual, ascending.
    pub fn unsatisfied(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.members.iter().copied().filter(|&v| self.residual(v) > 0).collect();
        d.sort_unstable();
        d
    }

    /// `B`: vertices outside `A` that feed some unsatisfied member. Vertices
    /// that can never be at state 1 (constant-0) are left out.
    pub fn candidates(&self) -> Vec<usize> {
        let mut b = BTreeSet::new();
        for d in self.unsatisfied() {
            for &w in self.sys.neighbors(d) {
                if !self.in_set[w] && !self.sys.is_constant0(w) {
                    b.insert(w);
                }
            }
        }
        b.into_iter().collect()
    }

    pub fn configuration(&self) -> Configuration {
        Configuration::from_support(self.sys.vertex_count(), self.members.iter().copied())
    }

    fn join(&mut self, x: usize, passive_queue: &mut Vec<usize>) {
        let sys = self.sys;
        self.in_set[x] = true;
        self.members.push(x);
        self.delta += self.residual(x);
        for y in std::iter::once(x).chain(sys.out_neighbors(x).iter().copied()) {
            let before = self.residual(y);
            self.count[y] += 1;
            let after = self.residual(y);
            self.delta = self.delta + after - before;
            if !self.in_set[y] && self.count[y] >= sys.threshold(y) {
                passive_queue.push(y);
            }
        }
    }

    fn leave(&mut self) {
        let sys = self.sys;
        let x = self.members.pop().expect("leave on empty set");
        for y in std::iter::once(x).chain(sys.out_neighbors(x).iter().copied()) {
            let before = self.residual(y);
            self.count[y] -= 1;
            let after = self.residual(y);
            self.delta = self.delta + after - before;
        }
        self.delta -= self.residual(x);
        self.in_set[x] = false;
    }

    /// Adds `v` and its passive closure; returns the passive set `A'`.
    pub fn activate(&mut self, v: usize) -> Vec<usize> {
        debug_assert!(!self.in_set[v]);
        let mut queue = Vec::new();
        let mut passive = Vec::new();
        self.join(v, &mut queue);
        while let Some(w) = queue.pop() {
            if !self.in_set[w] && self.count[w] >= self.sys.threshold(w) {
                self.join(w, &mut queue);
                passive.push(w);
            }
        }
        passive
    }

    /// The set `A'` that would join passively if `v` were activated; the
    /// state is left unchanged.
    pub fn passive_closure(&mut self, v: usize) -> Vec<usize> {
        let mark = self.members.len();
        let passive = self.activate(v);
        self.rollback(mark);
        passive
    }

    /// Objective components for candidate `v`, via a tentative activation.
    pub fn probe(&mut self, v: usize) -> Probe {
        let residual = self.sys.threshold(v).saturating_sub(self.count[v] + 1) as u64;
        let mark = self.members.len();
        let before = self.delta;
        let passive = self.activate(v).len() as u64;
        let after = self.delta;
        self.rollback(mark);
        Probe { residual, passive, epsilon: before + residual - after }
    }

    /// `τ̃_v` of a candidate without probing (used by `thresh`).
    pub fn candidate_residual(&self, v: usize) -> u64 {
        self.sys.threshold(v).saturating_sub(self.count[v] + 1) as u64
    }

    fn rollback(&mut self, mark: usize) {
        while self.members.len() > mark {
            self.leave();
        }
    }

    /// Recomputes counters, residuals, `δ`, `D` and the closure invariant
    /// from `A` alone and compares them with the incremental values.
    pub fn audit(&self) -> Result<()> {
        let sys = self.sys;
        let n = sys.vertex_count();
        let mut count = vec![0u32; n];
        for v in 0..n {
            count[v] = sys.closed_count(v, |u| self.in_set[u]);
        }
        if count != self.count {
            return Err(Error::Structure("neighborhood counters drifted".into()));
        }
        let delta: u64 = self.members.iter().map(|&v| sys.threshold(v).saturating_sub(count[v]) as u64).sum();
        if delta != self.delta {
            return Err(Error::Structure(format!("deficit {} but recomputed {delta}", self.delta)));
        }
        if (delta == 0) != self.unsatisfied().is_empty() {
            return Err(Error::Structure("δ = 0 disagrees with D = ∅".into()));
        }
        if let Some(w) = (0..n).find(|&w| !self.in_set[w] && count[w] >= sys.threshold(w)) {
            return Err(Error::Structure(format!("vertex {w} should have joined passively")));
        }
        let unsat: BTreeSet<usize> = self.unsatisfied().into_iter().collect();
        for b in self.candidates() {
            if self.in_set[b] || sys.is_constant0(b) {
                return Err(Error::Structure(format!("candidate {b} is invalid")));
            }
            if !unsat.iter().any(|&d| sys.neighbors(d).contains(&b)) {
                return Err(Error::Structure(format!("candidate {b} feeds no unsatisfied member")));
            }
        }
        Ok(())
    }
}

/// Result of one seeded construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeededOutcome {
    Found(Configuration),
    /// `B` ran empty while `δ > 0`.
    Infeasible,
    /// `|A_u|` exceeded the pruning bound.
    Pruned,
}

fn require_no_constant1(sys: &ThresholdSystem) -> Result<()> {
    if sys.has_constant1() {
        return Err(Error::Precondition("greedy heuristics assume no vertex with threshold 0".into()));
    }
    Ok(())
}

fn run_seeded(
    sys: &ThresholdSystem,
    u: usize,
    strategy: Strategy,
    prune_bound: Option<usize>,
    audit: bool,
) -> Result<SeededOutcome> {
    require_no_constant1(sys)?;
    if u >= sys.vertex_count() {
        return Err(Error::Precondition(format!("seed {u} out of range")));
    }
    let over = |w: usize| prune_bound.is_some_and(|b| w > b);
    let mut st = GreedyState::seeded(sys, u);
    loop {
        if audit {
            st.audit()?;
        }
        if over(st.weight()) {
            return Ok(SeededOutcome::Pruned);
        }
        if st.deficit() == 0 {
            return Ok(SeededOutcome::Found(st.configuration()));
        }
        let b = st.candidates();
        if b.is_empty() {
            return Ok(SeededOutcome::Infeasible);
        }
        let mut best: Option<(i64, usize)> = None;
        for v in b {
            let obj = if strategy.needs_probe() {
                st.probe(v).objective(strategy)
            } else {
                st.candidate_residual(v) as i64
            };
            // strict comparison keeps the lowest index on ties
            if best.is_none_or(|(o, _)| obj < o) {
                best = Some((obj, v));
            }
        }
        let (_, chosen) = best.expect("candidate set is non-empty");
        st.activate(chosen);
    }
}

/// Builds a fixed point containing `u`. Returns `Pruned` as soon as the active
/// set grows beyond `prune_bound`.
pub fn greedy_seeded(sys: &ThresholdSystem, u: usize, strategy: Strategy, prune_bound: Option<usize>) -> Result<SeededOutcome> {
    run_seeded(sys, u, strategy, prune_bound, false)
}

/// [`greedy_seeded`] with [`GreedyState::audit`] run before every selection.
pub fn greedy_seeded_audited(sys: &ThresholdSystem, u: usize, strategy: Strategy, prune_bound: Option<usize>) -> Result<SeededOutcome> {
    run_seeded(sys, u, strategy, prune_bound, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GreedyOptions {
    pub strategy: Strategy,
    /// Skip seeds that were at state 1 in an earlier seeded result.
    pub sub_filter: bool,
    /// Abandon a seed once it cannot beat the incumbent.
    pub prune: bool,
    pub audit: bool,
}

impl GreedyOptions {
    pub fn new(strategy: Strategy) -> Self {
        GreedyOptions { strategy, sub_filter: false, prune: true, audit: false }
    }

    pub fn sub(mut self, on: bool) -> Self {
        self.sub_filter = on;
        self
    }

    pub fn prune(mut self, on: bool) -> Self {
        self.prune = on;
        self
    }

    pub fn audit(mut self, on: bool) -> Self {
        self.audit = on;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyRun {
    pub best: Option<Configuration>,
    /// Seeds for which a construction was started, in order.
    pub examined: Vec<usize>,
    pub pruned: usize,
    pub infeasible: usize,
}

/// Seed order: ascending threshold, ties by index; constant-0 vertices dropped.
pub fn seed_order(sys: &ThresholdSystem) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sys.vertex_count()).filter(|&v| !sys.is_constant0(v)).collect();
    order.sort_by_key(|&v| (sys.threshold(v), v));
    order
}

/// Runs the seeded construction from every eligible seed and keeps the
/// lightest fixed point (first strict improvement wins).
pub fn greedy_framework(sys: &ThresholdSystem, opts: GreedyOptions) -> Result<GreedyRun> {
    require_no_constant1(sys)?;
    let n = sys.vertex_count();
    let mut best: Option<Configuration> = None;
    let mut seen_on = vec![false; n];
    let mut run = GreedyRun { best: None, examined: Vec::new(), pruned: 0, infeasible: 0 };
    for u in seed_order(sys) {
        if opts.sub_filter && seen_on[u] {
            continue;
        }
        let bound = if opts.prune { best.as_ref().map(|b| b.hamming_weight() - 1) } else { None };
        run.examined.push(u);
        match run_seeded(sys, u, opts.strategy, bound, opts.audit)? {
            SeededOutcome::Found(c) => {
                if opts.sub_filter {
                    for v in c.support() {
                        seen_on[v] = true;
                    }
                }
                if best.as_ref().is_none_or(|b| c.hamming_weight() < b.hamming_weight()) {
                    best = Some(c);
                }
            }
            SeededOutcome::Infeasible => run.infeasible += 1,
            SeededOutcome::Pruned => run.pruned += 1,
        }
    }
    run.best = best;
    Ok(run)
}
