//! Minimum nontrivial fixed points of synchronous threshold systems.
//!
//! A [`ThresholdSystem`] pairs a graph with one threshold per vertex. Every
//! vertex updates simultaneously: it takes state 1 iff at least `τ_v` vertices
//! of its closed neighborhood are in state 1. The crate finds fixed points of
//! this map with the fewest state-1 vertices, excluding the all-zero one.
//!
//! ```
//! use nminfpe::{build_system, brute_force_opt, is_fixed_point};
//!
//! // triangle, two vertices need two active neighbors, one needs all three
//! let sys = build_system(&[(0, 1), (1, 2), (0, 2)], vec![2, 2, 3], false).unwrap();
//! let best = brute_force_opt(&sys, None).unwrap().unwrap();
//! assert_eq!(best.to_string(), "(1,1,0)");
//! assert!(is_fixed_point(&sys, &best));
//! ```

pub mod baselines;
pub mod bench;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod heuristics;
pub mod ilp;
pub mod io;
pub mod reductions;
pub mod special;
pub mod system;

pub use baselines::{baseline_fixed_point, rank_vertices, Method, RankOptions, VertexRanking};
pub use config::{hamming_weight, Configuration};
pub use dynamics::{
    evolve, evolve_with_history, greatest_fixed_point, is_fixed_point, is_nontrivial_fixed_point, monotone_closure,
    successor, EvolutionTrace, LimitKind,
};
pub use error::{Error, Result};
pub use exact::{branch_and_bound_opt, brute_force_opt, ExactOutcome, ExactSolution};
pub use heuristics::{greedy_framework, greedy_seeded, GreedyOptions, GreedyState, SeededOutcome, Strategy};
pub use ilp::{export_lp, verify_ilp_solution, IlpModel};
pub use reductions::{build_clique_reduction, build_mvc_reduction, Epsilon, ReductionSpec, Role};
pub use special::{detect_case, fpt_solve, solve_complete, solve_constant1, solve_dag, solve_progressive, SpecialCase};
pub use system::{build_system, ThresholdSystem, VertexClass};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/intro.md")]
mod book_intro {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/dynamics.md")]
mod book_dynamics {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/special.md")]
mod book_special {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/exact.md")]
mod book_exact {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/greedy.md")]
mod book_greedy {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/baselines.md")]
mod book_baselines {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/reductions.md")]
mod book_reductions {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
