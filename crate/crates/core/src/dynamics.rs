//! Synchronous evolution: successors, fixed-point tests, limit detection, and
//! the seeded closures used by the exact solvers.
//!
//! Threshold systems under synchronous update always end in a fixed point or a
//! cycle of length two, so [`evolve`] only compares each new configuration with
//! the previous two. [`evolve_with_history`] keeps every visited configuration
//! and reports any longer cycle as an error; it exists to validate the cheap
//! detector.

use std::collections::HashMap;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::system::ThresholdSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    FixedPoint,
    TwoCycle,
    StepBudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvolutionTrace {
    /// Configurations from the start up to (not repeating) the first revisit.
    pub steps: Vec<Configuration>,
    pub limit_kind: LimitKind,
    /// Index in `steps` where the limit begins.
    pub limit_start: usize,
}

impl EvolutionTrace {
    pub fn last(&self) -> &Configuration {
        self.steps.last().expect("trace always holds the start configuration")
    }

    /// Number of successor transitions recorded in `steps`.
    pub fn transitions(&self) -> usize {
        self.steps.len() - 1
    }

    /// The fixed point reached, if the limit is one.
    pub fn fixed_point(&self) -> Option<&Configuration> {
        (self.limit_kind == LimitKind::FixedPoint).then(|| self.last())
    }
}

fn check_len(sys: &ThresholdSystem, c: &Configuration) -> Result<()> {
    if c.len() != sys.vertex_count() {
        return Err(Error::LengthMismatch { expected: sys.vertex_count(), got: c.len() });
    }
    Ok(())
}

/// One synchronous step: vertex `v` is 1 next iff its closed neighborhood holds
/// at least `τ_v` state-1 vertices now.
pub fn successor(sys: &ThresholdSystem, c: &Configuration) -> Result<Configuration> {
    check_len(sys, c)?;
    Ok(successor_unchecked(sys, c))
}

pub(crate) fn successor_unchecked(sys: &ThresholdSystem, c: &Configuration) -> Configuration {
    (0..sys.vertex_count())
        .map(|v| sys.closed_count(v, |u| c.get(u)) >= sys.threshold(v))
        .collect()
}

/// `successor(c) == c`, evaluated vertex by vertex with early exit. A length
/// mismatch is never a fixed point.
pub fn is_fixed_point(sys: &ThresholdSystem, c: &Configuration) -> bool {
    c.len() == sys.vertex_count()
        && (0..sys.vertex_count()).all(|v| (sys.closed_count(v, |u| c.get(u)) >= sys.threshold(v)) == c.get(v))
}

/// A fixed point other than all zeros.
pub fn is_nontrivial_fixed_point(sys: &ThresholdSystem, c: &Configuration) -> bool {
    !c.is_zero() && is_fixed_point(sys, c)
}

/// Default step budget, `10 n` (at least one step).
pub fn default_step_budget(sys: &ThresholdSystem) -> usize {
    (10 * sys.vertex_count()).max(1)
}

/// Iterates the successor map from `start` for at most `step_budget`
/// successor evaluations, stopping at the first fixed point or two-cycle.
pub fn evolve(sys: &ThresholdSystem, start: &Configuration, step_budget: usize) -> Result<EvolutionTrace> {
    check_len(sys, start)?;
    if step_budget == 0 {
        return Err(Error::Precondition("step budget must be at least 1".into()));
    }
    let mut steps = vec![start.clone()];
    for _ in 0..step_budget {
        let len = steps.len();
        let next = successor_unchecked(sys, &steps[len - 1]);
        if next == steps[len - 1] {
            return Ok(EvolutionTrace { steps, limit_kind: LimitKind::FixedPoint, limit_start: len - 1 });
        }
        if len >= 2 && next == steps[len - 2] {
            return Ok(EvolutionTrace { steps, limit_kind: LimitKind::TwoCycle, limit_start: len - 2 });
        }
        steps.push(next);
    }
    let limit_start = steps.len() - 1;
    Ok(EvolutionTrace { steps, limit_kind: LimitKind::StepBudgetExhausted, limit_start })
}

/// Like [`evolve`] but remembers every configuration, so a cycle of any
/// length is caught. A cycle longer than two yields [`Error::Structure`].
pub fn evolve_with_history(sys: &ThresholdSystem, start: &Configuration, step_budget: usize) -> Result<EvolutionTrace> {
    check_len(sys, start)?;
    let mut seen: HashMap<Configuration, usize> = HashMap::new();
    let mut steps = vec![start.clone()];
    seen.insert(start.clone(), 0);
    for _ in 0..step_budget.max(1) {
        let next = successor_unchecked(sys, steps.last().unwrap());
        if let Some(&at) = seen.get(&next) {
            let period = steps.len() - at;
            let limit_kind = match period {
                1 => LimitKind::FixedPoint,
                2 => LimitKind::TwoCycle,
                p => return Err(Error::Structure(format!("limit cycle of period {p}"))),
            };
            return Ok(EvolutionTrace { steps, limit_kind, limit_start: at });
        }
        seen.insert(next.clone(), steps.len());
        steps.push(next);
    }
    let limit_start = steps.len() - 1;
    Ok(EvolutionTrace { steps, limit_kind: LimitKind::StepBudgetExhausted, limit_start })
}

/// Least configuration containing `seeds` in which every state-0 vertex is
/// below its threshold, i.e. the progressive fixed point reached from the
/// seed set with the seeds pinned at 1.
///
/// Runs as a worklist over incrementally maintained neighborhood counters,
/// `O(n + m)` per call.
pub fn monotone_closure(sys: &ThresholdSystem, seeds: &[usize]) -> Configuration {
    let n = sys.vertex_count();
    let mut active = Configuration::zeros(n);
    let mut count = vec![0u32; n];
    let mut queue: Vec<usize> = Vec::new();
    let fire = |v: usize, active: &mut Configuration, count: &mut [u32], queue: &mut Vec<usize>| {
        active.set(v, true);
        count[v] += 1;
        for &w in sys.out_neighbors(v) {
            count[w] += 1;
            if !active.get(w) && count[w] >= sys.threshold(w) {
                queue.push(w);
            }
        }
    };
    for v in 0..n {
        if sys.threshold(v) == 0 {
            queue.push(v);
        }
    }
    for &s in seeds {
        if !active.get(s) {
            fire(s, &mut active, &mut count, &mut queue);
        }
    }
    while let Some(v) = queue.pop() {
        if !active.get(v) {
            fire(v, &mut active, &mut count, &mut queue);
        }
    }
    active
}

/// The largest fixed point: evolution from all ones decreases monotonically
/// and stops there. Every fixed point lies below it, so an all-zero result
/// means the system has no nontrivial fixed point.
pub fn greatest_fixed_point(sys: &ThresholdSystem) -> Configuration {
    let n = sys.vertex_count();
    let mut active = Configuration::ones(n);
    let mut count: Vec<u32> = (0..n).map(|v| sys.degree(v) as u32 + 1).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&v| count[v] < sys.threshold(v)).collect();
    while let Some(v) = queue.pop() {
        if !active.get(v) {
            continue;
        }
        active.set(v, false);
        count[v] -= 1;
        for &w in sys.out_neighbors(v) {
            count[w] -= 1;
            if active.get(w) && count[w] < sys.threshold(w) {
                queue.push(w);
            }
        }
    }
    active
}
