//! Ranking baselines. Each ranks the vertices by a metric and then switches
//! them on in that order until the active set is a fixed point.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::heuristics::GreedyState;
use crate::system::ThresholdSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    DegDis,
    Random,
    Pagerank,
    Distance,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::DegDis, Method::Random, Method::Pagerank, Method::Distance];

    pub fn name(self) -> &'static str {
        match self {
            Method::DegDis => "degdis",
            Method::Random => "random",
            Method::Pagerank => "pagerank",
            Method::Distance => "distance",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

/// Vertices in ranking order with the metric that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexRanking {
    pub method: Method,
    pub order: Vec<usize>,
    /// Metric per vertex (indexed by vertex, not by rank).
    pub metric: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RankOptions {
    pub rng_seed: u64,
    /// Rank `distance` by ascending distance sum instead of ascending closeness.
    pub distance_by_sum: bool,
}

/// Undirected view used by every metric: `N(v) ∪ N_out(v)`.
fn adjacency(sys: &ThresholdSystem) -> Vec<Vec<usize>> {
    (0..sys.vertex_count())
        .map(|v| {
            let mut a: Vec<usize> = sys.neighbors(v).iter().chain(sys.out_neighbors(v)).copied().collect();
            a.sort_unstable();
            a.dedup();
            a
        })
        .collect()
}

/// Stable ascending sort on the metric, ties by index.
fn ascending(metric: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..metric.len()).collect();
    order.sort_by(|&a, &b| metric[a].total_cmp(&metric[b]).then(a.cmp(&b)));
    order
}

/// Repeatedly takes the vertex minimizing `d_v - t_v`, where `t_v` counts the
/// already-ranked neighbors. The metric records the discounted degree at the
/// moment each vertex was taken.
fn degdis(sys: &ThresholdSystem) -> (Vec<usize>, Vec<f64>) {
    let adj = adjacency(sys);
    let n = adj.len();
    let mut score: Vec<i64> = adj.iter().map(|a| a.len() as i64).collect();
    let mut taken = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut metric = vec![0.0; n];
    for _ in 0..n {
        let v = (0..n).filter(|&v| !taken[v]).min_by_key(|&v| (score[v], v)).expect("vertex left");
        taken[v] = true;
        metric[v] = score[v] as f64;
        order.push(v);
        for &w in &adj[v] {
            score[w] -= 1;
        }
    }
    (order, metric)
}

/// Power iteration on the out-edges with uniform teleport; mass at dangling
/// vertices is spread uniformly.
pub fn pagerank(sys: &ThresholdSystem) -> Vec<f64> {
    const DAMPING: f64 = 0.85;
    const TOL: f64 = 1e-10;
    const MAX_ITER: usize = 200;
    let n = sys.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let nf = n as f64;
    let mut rank = vec![1.0 / nf; n];
    for _ in 0..MAX_ITER {
        let dangling: f64 = (0..n).filter(|&v| sys.out_neighbors(v).is_empty()).map(|v| rank[v]).sum();
        let base = (1.0 - DAMPING) / nf + DAMPING * dangling / nf;
        let mut next = vec![base; n];
        for v in 0..n {
            let out = sys.out_neighbors(v);
            if !out.is_empty() {
                let share = DAMPING * rank[v] / out.len() as f64;
                for &w in out {
                    next[w] += share;
                }
            }
        }
        let diff: f64 = next.iter().zip(&rank).map(|(a, b)| (a - b).abs()).sum();
        rank = next;
        if diff < TOL {
            break;
        }
    }
    rank
}

/// Sum of BFS distances from each vertex; an unreachable vertex counts `n`.
pub fn distance_sums(sys: &ThresholdSystem) -> Vec<u64> {
    let adj = adjacency(sys);
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    (0..n)
        .map(|s| {
            dist.fill(usize::MAX);
            dist[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            dist.iter().map(|&d| if d == usize::MAX { n as u64 } else { d as u64 }).sum()
        })
        .collect()
}

pub fn rank_vertices(sys: &ThresholdSystem, method: Method, opts: RankOptions) -> VertexRanking {
    let n = sys.vertex_count();
    let (order, metric) = match method {
        Method::DegDis => degdis(sys),
        Method::Random => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(opts.rng_seed));
            let mut metric = vec![0.0; n];
            for (i, &v) in order.iter().enumerate() {
                metric[v] = i as f64;
            }
            (order, metric)
        }
        Method::Pagerank => {
            let pr = pagerank(sys);
            (ascending(&pr), pr)
        }
        Method::Distance => {
            let sums = distance_sums(sys);
            let metric: Vec<f64> = if opts.distance_by_sum {
                sums.iter().map(|&s| s as f64).collect()
            } else {
                sums.iter().map(|&s| if s == 0 { 0.0 } else { 1.0 / s as f64 }).collect()
            };
            (ascending(&metric), metric)
        }
    };
    VertexRanking { method, order, metric }
}

/// Switches on ranked vertices one by one (skipping constant-0 vertices and
/// vertices already on), absorbing passive closures, and returns the first
/// active set with zero deficit.
pub fn baseline_fixed_point(sys: &ThresholdSystem, ranking: &VertexRanking) -> Result<Option<Configuration>> {
    if sys.has_constant1() {
        return Err(Error::Precondition("baselines assume no vertex with threshold 0".into()));
    }
    let mut st = GreedyState::new(sys);
    for &v in &ranking.order {
        if st.contains(v) || sys.is_constant0(v) {
            continue;
        }
        st.activate(v);
        if st.deficit() == 0 {
            return Ok(Some(st.configuration()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::build_system;

    #[test]
    fn names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("closeness".parse::<Method>().is_err());
    }

    #[test]
    fn star_center_is_last_by_closeness() {
        let sys = build_system(&[(0, 1), (0, 2), (0, 3), (0, 4)], vec![1; 5], false).unwrap();
        let r = rank_vertices(&sys, Method::Distance, RankOptions::default());
        assert_eq!(r.order.last(), Some(&0));
        let flipped = rank_vertices(&sys, Method::Distance, RankOptions { distance_by_sum: true, ..Default::default() });
        assert_eq!(flipped.order[0], 0);
    }

    #[test]
    fn random_is_seeded() {
        let sys = build_system(&[], vec![1; 30], false).unwrap();
        let a = rank_vertices(&sys, Method::Random, RankOptions { rng_seed: 9, ..Default::default() });
        let b = rank_vertices(&sys, Method::Random, RankOptions { rng_seed: 9, ..Default::default() });
        let c = rank_vertices(&sys, Method::Random, RankOptions { rng_seed: 10, ..Default::default() });
        assert_eq!(a, b);
        assert_ne!(a.order, c.order);
    }

    #[test]
    fn pagerank_cycle_is_uniform() {
        let cycle: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let sys = build_system(&cycle, vec![2; 6], false).unwrap();
        let r = rank_vertices(&sys, Method::Pagerank, RankOptions::default());
        assert_eq!(r.order, (0..6).collect::<Vec<_>>());
        assert!(r.metric.iter().all(|&x| (x - 1.0 / 6.0).abs() < 1e-12));
    }

    #[test]
    fn degdis_discounts_ranked_neighbors() {
        // path 0-1-2-3: ends have degree 1, then 1 drops to 1 after 0 is taken
        let sys = build_system(&[(0, 1), (1, 2), (2, 3)], vec![1; 4], false).unwrap();
        let r = rank_vertices(&sys, Method::DegDis, RankOptions::default());
        assert_eq!(r.order, vec![0, 1, 2, 3]);
    }

    #[test]
    fn baseline_examples() {
        let single = build_system(&[(0, 1)], vec![1, 3], false).unwrap();
        let r = VertexRanking { method: Method::Random, order: vec![0, 1], metric: vec![0.0, 1.0] };
        assert_eq!(baseline_fixed_point(&single, &r).unwrap().unwrap().hamming_weight(), 1);
        let k3 = build_system(&[(0, 1), (1, 2), (0, 2)], vec![2, 2, 3], false).unwrap();
        let r = VertexRanking { method: Method::Random, order: vec![1, 2, 0], metric: vec![0.0; 3] };
        let c = baseline_fixed_point(&k3, &r).unwrap().unwrap();
        assert_eq!(c.hamming_weight(), 3);
        let r = VertexRanking { method: Method::Random, order: vec![1, 0, 2], metric: vec![0.0; 3] };
        assert_eq!(baseline_fixed_point(&k3, &r).unwrap().unwrap().hamming_weight(), 2);
        let dead = build_system(&[(0, 1), (1, 2)], vec![8; 3], false).unwrap();
        let r = rank_vertices(&dead, Method::DegDis, RankOptions::default());
        assert_eq!(baseline_fixed_point(&dead, &r).unwrap(), None);
    }
}
