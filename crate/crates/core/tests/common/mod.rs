//! Independent oracles and instance generators shared by the integration
//! tests. Nothing here calls the solvers under test; dynamics are recomputed
//! from the raw edge list.

#![allow(dead_code)]

use nminfpe::{build_system, Configuration, ThresholdSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closed in-neighborhood bitmasks rebuilt from `edges()`.
pub fn closed_masks(sys: &ThresholdSystem) -> Vec<u64> {
    let n = sys.vertex_count();
    assert!(n <= 64);
    let mut m: Vec<u64> = (0..n).map(|v| 1u64 << v).collect();
    for &(u, v) in sys.edges() {
        m[v] |= 1 << u;
        if !sys.is_directed() {
            m[u] |= 1 << v;
        }
    }
    m
}

pub fn successor_mask(sys: &ThresholdSystem, masks: &[u64], x: u64) -> u64 {
    (0..masks.len())
        .filter(|&v| (x & masks[v]).count_ones() >= sys.threshold(v))
        .fold(0u64, |acc, v| acc | (1 << v))
}

pub fn to_mask(c: &Configuration) -> u64 {
    c.support().fold(0u64, |acc, v| acc | (1 << v))
}

/// Oracle successor for arbitrary sizes.
pub fn successor_oracle(sys: &ThresholdSystem, c: &Configuration) -> Configuration {
    let n = sys.vertex_count();
    let mut count = vec![0u32; n];
    for v in c.support() {
        count[v] += 1;
    }
    for &(u, v) in sys.edges() {
        if c.get(u) {
            count[v] += 1;
        }
        if !sys.is_directed() && c.get(v) {
            count[u] += 1;
        }
    }
    (0..n).map(|v| count[v] >= sys.threshold(v)).collect()
}

pub fn is_fixed_oracle(sys: &ThresholdSystem, c: &Configuration) -> bool {
    successor_oracle(sys, c) == *c
}

/// Minimum weight over all `2^n` configurations (n <= 20).
pub fn brute_min(sys: &ThresholdSystem) -> Option<usize> {
    let n = sys.vertex_count();
    assert!(n <= 20);
    let masks = closed_masks(sys);
    (1u64..1 << n)
        .filter(|&x| successor_mask(sys, &masks, x) == x)
        .map(|x| x.count_ones() as usize)
        .min()
}

/// Minimum weight of a nonzero configuration closed under the progressive
/// rule, i.e. no state-0 vertex reaches its threshold.
pub fn progressive_min(sys: &ThresholdSystem) -> Option<usize> {
    let n = sys.vertex_count();
    assert!(n <= 20);
    let masks = closed_masks(sys);
    (1u64..1 << n)
        .filter(|&x| successor_mask(sys, &masks, x) & !x == 0)
        .map(|x| x.count_ones() as usize)
        .min()
}

pub fn gnp_edges(r: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    e
}

fn degrees(n: usize, edges: &[(usize, usize)], directed: bool) -> Vec<usize> {
    let mut d = vec![0; n];
    for &(u, v) in edges {
        d[v] += 1;
        if !directed {
            d[u] += 1;
        }
    }
    d
}

/// Thresholds in `[min(3, deg+1), deg+1]`, the random-threshold scenario.
pub fn random_thresholds(r: &mut ChaCha8Rng, n: usize, edges: &[(usize, usize)], directed: bool) -> Vec<u32> {
    degrees(n, edges, directed)
        .into_iter()
        .map(|d| {
            let hi = d as u32 + 1;
            r.gen_range(hi.min(3)..=hi)
        })
        .collect()
}

/// Thresholds anywhere in `[lo, deg+2]`.
pub fn wide_thresholds(r: &mut ChaCha8Rng, n: usize, edges: &[(usize, usize)], directed: bool, lo: u32) -> Vec<u32> {
    degrees(n, edges, directed).into_iter().map(|d| r.gen_range(lo..=d as u32 + 2)).collect()
}

/// Random undirected instance with random-scenario thresholds.
pub fn random_instance(seed: u64, n: usize, p: f64) -> ThresholdSystem {
    let mut r = rng(seed);
    let e = gnp_edges(&mut r, n, p);
    let t = random_thresholds(&mut r, n, &e, false);
    build_system(&e, t, false).unwrap()
}

/// Random undirected instance with thresholds spread over `[1, deg+2]`.
pub fn mixed_instance(seed: u64, n: usize, p: f64) -> ThresholdSystem {
    let mut r = rng(seed);
    let e = gnp_edges(&mut r, n, p);
    let t = wide_thresholds(&mut r, n, &e, false, 1);
    build_system(&e, t, false).unwrap()
}

/// State-1 set induces a weakly connected subgraph (oracle BFS on edges).
pub fn connected_support(sys: &ThresholdSystem, c: &Configuration) -> bool {
    let on: Vec<usize> = c.support().collect();
    let Some(&first) = on.first() else { return true };
    let mut seen = vec![false; sys.vertex_count()];
    seen[first] = true;
    let mut stack = vec![first];
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for &(a, b) in sys.edges() {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if c.get(w) && !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == on.len()
}

/// Graphs from the atlas fixture: every graph on at most seven vertices.
pub fn atlas() -> Vec<(usize, Vec<(usize, usize)>)> {
    include_str!("../fixtures/atlas7.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace();
            let n: usize = it.next().unwrap().parse().unwrap();
            let e = it
                .map(|tok| {
                    let (a, b) = tok.split_once('-').unwrap();
                    (a.parse().unwrap(), b.parse().unwrap())
                })
                .collect();
            (n, e)
        })
        .collect()
}

/// Next integer with the same popcount.
pub fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Smallest fixed-point weight `<= q`, scanning weights upward.
pub fn min_weight_up_to(sys: &ThresholdSystem, q: usize) -> Option<usize> {
    let n = sys.vertex_count();
    let masks = closed_masks(sys);
    for w in 1..=q.min(n) {
        let mut x = (1u64 << w) - 1;
        while x < 1 << n {
            if successor_mask(sys, &masks, x) == x {
                return Some(w);
            }
            x = next_combination(x);
        }
    }
    None
}

pub fn has_clique(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
    let mut adj = vec![0u32; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .any(|s| (0..n).filter(|&v| s >> v & 1 == 1).all(|v| s & !(1 << v) & !adj[v] == 0))
}

pub fn has_cover(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize <= k)
        .any(|s| edges.iter().all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1))
}

pub fn house_tail() -> ThresholdSystem {
    build_system(&[(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (3, 4)], vec![3, 1, 1, 2, 2], false).unwrap()
}
