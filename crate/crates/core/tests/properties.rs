mod common;

use std::time::Duration;

use common::*;
use nminfpe::dynamics::default_step_budget;
use nminfpe::heuristics::greedy_seeded_audited;
use nminfpe::{
    baseline_fixed_point, branch_and_bound_opt, brute_force_opt, build_system, evolve, fpt_solve, greatest_fixed_point,
    greedy_framework, is_fixed_point, monotone_closure, rank_vertices, successor, verify_ilp_solution, Configuration,
    ExactOutcome, GreedyOptions, Method, RankOptions, SeededOutcome, ThresholdSystem,
};
use proptest::prelude::*;

/// Small undirected instance with thresholds in `[0, deg+2]`.
fn instance(max_n: usize) -> impl Strategy<Value = ThresholdSystem> {
    instance_from(max_n, 0)
}

/// Thresholds in `[lo, deg+2]`.
fn instance_from(max_n: usize, lo: u32) -> impl Strategy<Value = ThresholdSystem> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let m = pairs.len();
            (Just(n), Just(pairs), proptest::collection::vec(any::<bool>(), m), proptest::collection::vec(0u32..1000, n))
        })
        .prop_map(move |(n, pairs, keep, raw)| {
            let e: Vec<_> = pairs.into_iter().zip(keep).filter(|&(_, k)| k).map(|(p, _)| p).collect();
            let mut deg = vec![0u32; n];
            for &(u, v) in &e {
                deg[u] += 1;
                deg[v] += 1;
            }
            let t = raw.iter().zip(&deg).map(|(&r, &d)| lo + r % (d + 3 - lo)).collect();
            build_system(&e, t, false).unwrap()
        })
}

fn directed_instance(max_n: usize) -> impl Strategy<Value = ThresholdSystem> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let arcs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
            let m = arcs.len();
            (Just(n), Just(arcs), proptest::collection::vec(0u8..4, m), proptest::collection::vec(0u32..1000, n))
        })
        .prop_map(|(n, arcs, keep, raw)| {
            let e: Vec<_> = arcs.into_iter().zip(keep).filter(|&(_, k)| k == 0).map(|(p, _)| p).collect();
            let mut indeg = vec![0u32; n];
            for &(_, v) in &e {
                indeg[v] += 1;
            }
            let t = raw.iter().zip(&indeg).map(|(&r, &d)| r % (d + 3)).collect();
            build_system(&e, t, true).unwrap()
        })
}

fn config_for(n: usize, bits: u64) -> Configuration {
    Configuration::from_mask(n, bits & ((1u64 << n) - 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn successor_matches_oracle(sys in instance(10), bits in any::<u64>()) {
        let c = config_for(sys.vertex_count(), bits);
        prop_assert_eq!(successor(&sys, &c).unwrap(), successor_oracle(&sys, &c));
    }

    #[test]
    fn directed_successor_matches_oracle(sys in directed_instance(8), bits in any::<u64>()) {
        let c = config_for(sys.vertex_count(), bits);
        prop_assert_eq!(successor(&sys, &c).unwrap(), successor_oracle(&sys, &c));
    }

    #[test]
    fn successor_is_monotone(sys in instance(10), a in any::<u64>(), b in any::<u64>()) {
        let n = sys.vertex_count();
        let lo = config_for(n, a & b);
        let hi = config_for(n, a);
        prop_assert!(successor(&sys, &lo).unwrap().precedes(&successor(&sys, &hi).unwrap()));
    }

    #[test]
    fn evolution_ends_in_a_fixed_point_or_two_cycle(sys in instance(10), bits in any::<u64>()) {
        let start = config_for(sys.vertex_count(), bits);
        let trace = evolve(&sys, &start, default_step_budget(&sys)).unwrap();
        let last = trace.last().clone();
        let next = successor(&sys, &last).unwrap();
        prop_assert!(next == last || successor(&sys, &next).unwrap() == last);
        if let Some(fp) = trace.fixed_point() {
            prop_assert!(is_fixed_oracle(&sys, fp));
        }
    }

    #[test]
    fn greedy_outputs_are_nontrivial_fixed_points(sys in instance_from(9, 1)) {
        let opt = brute_min(&sys);
        for strategy in nminfpe::Strategy::ALL {
            for sub in [false, true] {
                let run = greedy_framework(&sys, GreedyOptions::new(strategy).sub(sub).audit(true)).unwrap();
                match (&run.best, opt) {
                    (Some(c), Some(w)) => {
                        prop_assert!(!c.is_zero() && is_fixed_oracle(&sys, c));
                        prop_assert!(c.hamming_weight() >= w);
                    }
                    (None, None) => {}
                    (Some(_), None) => prop_assert!(false, "greedy found a fixed point where none exists"),
                    // greedy may miss, but only if the construction itself fails
                    (None, Some(_)) => {}
                }
            }
        }
    }

    #[test]
    fn incremental_counters_stay_consistent(sys in instance_from(9, 1), seed in 0usize..9) {
        let u = seed % sys.vertex_count();
        for strategy in nminfpe::Strategy::ALL {
            if let SeededOutcome::Found(c) = greedy_seeded_audited(&sys, u, strategy, None).unwrap() {
                prop_assert!(c.get(u));
                prop_assert!(is_fixed_oracle(&sys, &c));
            }
        }
    }

    #[test]
    fn exact_solvers_agree_with_enumeration(sys in instance_from(9, 1)) {
        let opt = brute_min(&sys);
        prop_assert_eq!(brute_force_opt(&sys, None).unwrap().map(|c| c.hamming_weight()), opt);
        let bb = branch_and_bound_opt(&sys, Duration::from_secs(10));
        prop_assert!(bb.outcome.is_optimal() || bb.outcome == ExactOutcome::Infeasible);
        prop_assert_eq!(bb.outcome.configuration().map(|c| c.hamming_weight()), opt);
        prop_assert_eq!(fpt_solve(&sys).unwrap().map(|c| c.hamming_weight()), opt);
    }

    #[test]
    fn branch_and_bound_handles_constant_ones(sys in instance(9)) {
        let bb = branch_and_bound_opt(&sys, Duration::from_secs(10));
        prop_assert_eq!(bb.outcome.configuration().map(|c| c.hamming_weight()), brute_min(&sys));
    }

    #[test]
    fn ilp_feasibility_is_nontrivial_fixedness(sys in instance(8), bits in any::<u64>()) {
        let c = config_for(sys.vertex_count(), bits);
        let x: Vec<bool> = (0..c.len()).map(|v| c.get(v)).collect();
        prop_assert_eq!(verify_ilp_solution(&sys, &x), !c.is_zero() && is_fixed_oracle(&sys, &c));
    }

    #[test]
    fn closure_is_least_fixed_point_above_seeds(sys in instance(9), bits in any::<u64>()) {
        let n = sys.vertex_count();
        let seeds: Vec<usize> = (0..n).filter(|&v| bits >> v & 1 == 1).collect();
        let cl = monotone_closure(&sys, &seeds);
        let gfp = greatest_fixed_point(&sys);
        prop_assert!(is_fixed_point(&sys, &gfp));
        if is_fixed_point(&sys, &cl) {
            let masks = closed_masks(&sys);
            let s = to_mask(&config_for(n, bits));
            // every fixed point containing the seeds contains the closure
            for x in 0u64..1 << n {
                if x & s == s && successor_mask(&sys, &masks, x) == x {
                    prop_assert_eq!(to_mask(&cl) & !x, 0);
                }
            }
        }
    }

    #[test]
    fn baselines_return_fixed_points(sys in instance_from(10, 1), rng_seed in any::<u64>()) {
        for method in Method::ALL {
            let ranking = rank_vertices(&sys, method, RankOptions { rng_seed, ..Default::default() });
            prop_assert_eq!(ranking.order.len(), sys.vertex_count());
            if let Some(c) = baseline_fixed_point(&sys, &ranking).unwrap() {
                prop_assert!(!c.is_zero() && is_fixed_oracle(&sys, &c));
            }
        }
    }
}
