//! Polynomial-time solvers for restricted instance classes, and the
//! kernelization algorithm that is exponential only in the number of vertices
//! with threshold above one.
//!
//! All solvers lean on monotonicity of threshold updates: if `C1 ⪯ C2` then
//! `succ(C1) ⪯ succ(C2)`. Consequently evolution from a configuration whose
//! state-1 vertices are all satisfied only ever switches vertices on, and it
//! stops at the least fixed point above the start. [`monotone_closure`]
//! computes that limit directly in `O(n + m)`.

use std::collections::VecDeque;

use itertools::Itertools;

use crate::config::Configuration;
use crate::dynamics::{is_fixed_point, monotone_closure};
use crate::error::{Error, Result};
use crate::system::ThresholdSystem;

/// Default ceiling on the kernel size accepted by [`fpt_solve`].
pub const DEFAULT_FPT_CAP: usize = 25;

/// Structural class detected by [`detect_case`]. Progressive semantics is a
/// modelling choice made by the caller, so it is never detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialCase {
    HasConstant1,
    Progressive,
    Dag,
    CompleteGraph,
    None,
}

/// Priority order: constant-1 vertex, complete graph, DAG.
pub fn detect_case(sys: &ThresholdSystem) -> SpecialCase {
    if sys.has_constant1() {
        SpecialCase::HasConstant1
    } else if sys.vertex_count() > 0 && sys.is_complete() {
        SpecialCase::CompleteGraph
    } else if sys.is_acyclic() {
        SpecialCase::Dag
    } else {
        SpecialCase::None
    }
}

fn require_no_constant1(sys: &ThresholdSystem) -> Result<()> {
    if sys.has_constant1() {
        return Err(Error::Precondition("system has a vertex with threshold 0; use solve_constant1".into()));
    }
    Ok(())
}

/// With some `τ_v = 0`, the limit of evolution from all zeros is contained in
/// every nontrivial fixed point, so it is the unique minimum.
pub fn solve_constant1(sys: &ThresholdSystem) -> Result<Configuration> {
    if !sys.has_constant1() {
        return Err(Error::Precondition("no vertex with threshold 0".into()));
    }
    Ok(monotone_closure(sys, &[]))
}

/// Progressive model (state 1 absorbing): the best of the `n` single-seed
/// closures. `None` only for the empty system.
pub fn solve_progressive(sys: &ThresholdSystem) -> Option<Configuration> {
    let mut best: Option<Configuration> = None;
    for v in 0..sys.vertex_count() {
        let c = monotone_closure(sys, &[v]);
        if best.as_ref().is_none_or(|b| c.hamming_weight() < b.hamming_weight()) {
            best = Some(c);
        }
    }
    best
}

/// Directed acyclic graphs. Every nontrivial fixed point holds a state-1
/// vertex of threshold 1 (otherwise state-1 vertices would need state-1
/// in-neighbors forever, forming a cycle), so seeding each threshold-1 vertex
/// alone covers all candidates. No threshold-1 vertex means no nontrivial
/// fixed point.
pub fn solve_dag(sys: &ThresholdSystem) -> Result<Option<Configuration>> {
    if !sys.is_directed() || !sys.is_acyclic() {
        return Err(Error::Structure("solve_dag needs a directed acyclic graph".into()));
    }
    require_no_constant1(sys)?;
    let mut best: Option<Configuration> = None;
    for v in (0..sys.vertex_count()).filter(|&v| sys.threshold(v) == 1) {
        // v keeps itself on, so evolution from {v} rises monotonically to this closure.
        let c = monotone_closure(sys, &[v]);
        if best.as_ref().is_none_or(|b| c.hamming_weight() < b.hamming_weight()) {
            best = Some(c);
        }
    }
    Ok(best)
}

/// Complete graphs. Every vertex sees `H(C)` state-1 vertices, so a fixed point
/// is a prefix of the vertices sorted by threshold. Threshold classes are
/// switched on in ascending order until every active vertex is satisfied;
/// evolution from there gives the minimum.
pub fn solve_complete(sys: &ThresholdSystem) -> Result<Option<Configuration>> {
    if !sys.is_complete() {
        return Err(Error::Structure("solve_complete needs an undirected complete graph".into()));
    }
    require_no_constant1(sys)?;
    let n = sys.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (sys.threshold(v), v));
    let mut start = Configuration::zeros(n);
    let mut active = 0usize;
    let mut i = 0;
    while i < n {
        let tau = sys.threshold(order[i]);
        while i < n && sys.threshold(order[i]) == tau {
            start.set(order[i], true);
            active += 1;
            i += 1;
        }
        // the newest class has the largest threshold among active vertices
        if active >= tau as usize {
            let seeds: Vec<usize> = start.support().collect();
            return Ok(Some(monotone_closure(sys, &seeds)));
        }
    }
    Ok(None)
}

/// Threshold-1 components and the residual vertex set of a system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    /// Maximal connected components induced by threshold-1 vertices.
    pub components: Vec<Vec<usize>>,
    /// Vertices with threshold above 1.
    pub residual_vertices: Vec<usize>,
    /// Residual vertices adjacent to some threshold-1 vertex; they must be 0 in
    /// any fixed point whose threshold-1 vertices are all 0.
    pub forbidden: Vec<usize>,
}

impl Kernel {
    pub fn k(&self) -> usize {
        self.residual_vertices.len()
    }
}

pub fn build_kernel(sys: &ThresholdSystem) -> Kernel {
    let n = sys.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut components = Vec::new();
    for s in 0..n {
        if sys.threshold(s) != 1 || comp[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in sys.neighbors(v) {
                if sys.threshold(w) == 1 && comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    let residual_vertices: Vec<usize> = (0..n).filter(|&v| sys.threshold(v) > 1).collect();
    let forbidden = residual_vertices
        .iter()
        .copied()
        .filter(|&v| sys.neighbors(v).iter().any(|&u| sys.threshold(u) == 1))
        .collect();
    Kernel { components, residual_vertices, forbidden }
}

/// [`fpt_solve_with_cap`] with [`DEFAULT_FPT_CAP`].
pub fn fpt_solve(sys: &ThresholdSystem) -> Result<Option<Configuration>> {
    fpt_solve_with_cap(sys, DEFAULT_FPT_CAP)
}

/// Exact solver in `O(2^k + n + m)` where `k` counts vertices with threshold
/// above 1 (undirected systems).
///
/// A fixed point touching a threshold-1 component contains the closure of the
/// whole component, so those closures are the only candidates of that kind.
/// The remaining candidates have every threshold-1 vertex at 0; they are found
/// by enumerating assignments of the residual vertices in order of increasing
/// popcount and stopping at the first popcount that yields a fixed point.
pub fn fpt_solve_with_cap(sys: &ThresholdSystem, cap: usize) -> Result<Option<Configuration>> {
    if sys.is_directed() {
        return Err(Error::Structure("fpt_solve handles undirected systems".into()));
    }
    require_no_constant1(sys)?;
    let kernel = build_kernel(sys);
    if kernel.k() > cap {
        return Err(Error::Capacity(format!(
            "{} vertices have threshold above 1 (cap {cap}); use branch-and-bound instead",
            kernel.k()
        )));
    }
    let n = sys.vertex_count();
    let mut best: Option<Configuration> = None;
    for cc in &kernel.components {
        let c = monotone_closure(sys, cc);
        if best.as_ref().is_none_or(|b| c.hamming_weight() < b.hamming_weight()) {
            best = Some(c);
        }
    }

    let mut blocked = vec![false; n];
    for &v in &kernel.forbidden {
        blocked[v] = true;
    }
    let allowed: Vec<usize> = kernel
        .residual_vertices
        .iter()
        .copied()
        .filter(|&v| !blocked[v] && !sys.is_constant0(v))
        .collect();
    let limit = best.as_ref().map_or(allowed.len(), |b| b.hamming_weight().saturating_sub(1).min(allowed.len()));
    'sizes: for size in 1..=limit {
        for subset in allowed.iter().copied().combinations(size) {
            let c = Configuration::from_support(n, subset);
            if is_fixed_point(sys, &c) {
                best = Some(c);
                break 'sizes;
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::build_system;

    fn complete(n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
    }

    #[test]
    fn detection_priority() {
        let k4 = complete(4);
        assert_eq!(detect_case(&build_system(&k4, vec![0, 1, 1, 1], false).unwrap()), SpecialCase::HasConstant1);
        assert_eq!(detect_case(&build_system(&k4, vec![1, 2, 2, 4], false).unwrap()), SpecialCase::CompleteGraph);
        let dag = build_system(&[(0, 1), (1, 2), (0, 3)], vec![1, 2, 2, 1], true).unwrap();
        assert_eq!(detect_case(&dag), SpecialCase::Dag);
        let path = build_system(&[(0, 1), (1, 2)], vec![1, 2, 2], false).unwrap();
        assert_eq!(detect_case(&path), SpecialCase::None);
    }

    #[test]
    fn constant1_examples() {
        // isolated τ = 0 vertex next to a high-threshold triangle
        let sys = build_system(&[(1, 2), (2, 3), (1, 3)], vec![0, 3, 3, 3], false).unwrap();
        assert_eq!(solve_constant1(&sys).unwrap().support().collect::<Vec<_>>(), vec![0]);
        let path = build_system(&[(0, 1), (1, 2)], vec![0, 1, 2], false).unwrap();
        assert_eq!(solve_constant1(&path).unwrap().hamming_weight(), 2);
        let two = build_system(&[(0, 2), (1, 3)], vec![0, 0, 3, 3], false).unwrap();
        assert_eq!(solve_constant1(&two).unwrap().hamming_weight(), 2);
        assert!(solve_constant1(&build_system(&[], vec![1], false).unwrap()).is_err());
    }

    #[test]
    fn progressive_examples() {
        let star = build_system(&[(0, 1), (0, 2), (0, 3), (0, 4)], vec![1, 2, 2, 2, 2], false).unwrap();
        assert_eq!(solve_progressive(&star).unwrap().hamming_weight(), 1);
        let tri = build_system(&complete(3), vec![2, 2, 2], false).unwrap();
        assert_eq!(solve_progressive(&tri).unwrap().hamming_weight(), 1);
        assert_eq!(solve_progressive(&build_system(&[], vec![1], false).unwrap()).unwrap().hamming_weight(), 1);
    }

    #[test]
    fn dag_examples() {
        let chain = build_system(&[(0, 1), (1, 2)], vec![1, 2, 2], true).unwrap();
        assert_eq!(solve_dag(&chain).unwrap().unwrap().hamming_weight(), 1);
        let high = build_system(&[(0, 1), (1, 2)], vec![2, 2, 2], true).unwrap();
        assert_eq!(solve_dag(&high).unwrap(), None);
        let single = build_system(&[], vec![1], true).unwrap();
        assert_eq!(solve_dag(&single).unwrap().unwrap().hamming_weight(), 1);
        let cyc = build_system(&[(0, 1), (1, 0)], vec![1, 1], true).unwrap();
        assert!(matches!(solve_dag(&cyc), Err(Error::Structure(_))));
    }

    #[test]
    fn complete_examples() {
        let k4 = build_system(&complete(4), vec![1, 2, 2, 4], false).unwrap();
        assert_eq!(solve_complete(&k4).unwrap().unwrap().hamming_weight(), 1);
        let k3 = build_system(&complete(3), vec![2, 2, 3], false).unwrap();
        assert_eq!(solve_complete(&k3).unwrap().unwrap().hamming_weight(), 2);
        let k2 = build_system(&complete(2), vec![2, 2], false).unwrap();
        assert_eq!(solve_complete(&k2).unwrap().unwrap().hamming_weight(), 2);
        let none = build_system(&complete(3), vec![4, 4, 4], false).unwrap();
        assert_eq!(solve_complete(&none).unwrap(), None);
        let path = build_system(&[(0, 1), (1, 2)], vec![1, 1, 1], false).unwrap();
        assert!(solve_complete(&path).is_err());
    }

    #[test]
    fn kernel_structure() {
        // 0-1 threshold-1 edge, 2 and 3 high, 4 threshold-1 isolated from the rest
        let sys = build_system(&[(0, 1), (1, 2), (2, 3)], vec![1, 1, 2, 2, 1], false).unwrap();
        let k = build_kernel(&sys);
        assert_eq!(k.components, vec![vec![0, 1], vec![4]]);
        assert_eq!(k.residual_vertices, vec![2, 3]);
        assert_eq!(k.forbidden, vec![2]);
    }

    #[test]
    fn fpt_examples() {
        let path = build_system(&[(0, 1), (1, 2), (2, 3)], vec![1; 4], false).unwrap();
        assert_eq!(fpt_solve(&path).unwrap().unwrap().hamming_weight(), 4);
        let empty = build_system(&[], vec![], false).unwrap();
        assert_eq!(fpt_solve(&empty).unwrap(), None);
        let over = build_system(&complete(4), vec![3; 4], false).unwrap();
        assert!(matches!(fpt_solve_with_cap(&over, 3), Err(Error::Capacity(_))));
        // three active vertices would switch the fourth on
        assert_eq!(fpt_solve_with_cap(&over, 4).unwrap().unwrap().hamming_weight(), 4);
    }
}
