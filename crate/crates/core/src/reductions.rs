//! Instance generators from vertex cover and clique.
//!
//! Vertex cover: from a connected graph `G` with `n` vertices and `m` edges,
//! a cover size `k` and `0 < ε < 1`, build the bipartite system
//!
//! * `X = {x_u}` with `τ = deg(u) + 1`, `Y = {y_e}` with `τ = 3`,
//! * `x_u - y_e` whenever `u ∈ e`, `z` adjacent to all of `Y` with `τ = m + 1`,
//! * `w` adjacent to all of `X` with `τ = k + 1`,
//! * a path `R = r_1 … r_β` of threshold-1 vertices hanging off `w`,
//!
//! where `α = m + n + 1` and `β = α^⌈2/ε⌉`. A cover of size `k` gives a fixed
//! point of weight `m + k + 1`; without one every nontrivial fixed point
//! contains all of `R`.
//!
//! Clique: subdivide every edge of `G` with a vertex `y_e` of threshold 3 and
//! give each original vertex threshold `k`. The minimum nontrivial fixed point
//! has weight `k(k+1)/2` exactly when `G` has a `k`-clique.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::system::ThresholdSystem;

pub const DEFAULT_BETA_CAP: u64 = 100_000;

/// `ε = num / den`, kept exact so `⌈2/ε⌉` has no rounding issues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Epsilon {
    pub num: u64,
    pub den: u64,
}

impl Epsilon {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 || num >= den {
            return Err(Error::Precondition(format!("epsilon {num}/{den} is not in (0, 1)")));
        }
        Ok(Epsilon { num, den })
    }

    /// Parses a decimal such as `0.9` or a fraction such as `9/10`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("cannot read epsilon `{text}`"));
        if let Some((a, b)) = text.split_once('/') {
            return Epsilon::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        }
        let (int, frac) = text.trim().split_once('.').unwrap_or((text.trim(), ""));
        if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let den = 10u64.pow(frac.len() as u32);
        let frac_val: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int.checked_mul(den).and_then(|x| x.checked_add(frac_val)).ok_or_else(bad)?;
        Epsilon::new(num, den)
    }

    /// `⌈2/ε⌉`.
    pub fn exponent(self) -> u64 {
        (2 * self.den).div_ceil(self.num)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionKind {
    MvcReduction,
    CliqueReduction,
}

/// Role of a generated vertex; the payload is the source vertex, source edge
/// index or path position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "role", content = "source")]
pub enum Role {
    X(usize),
    Y(usize),
    R(usize),
    W,
    Z,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionSpec {
    pub kind: ReductionKind,
    pub source_vertices: usize,
    pub source_edges: Vec<(usize, usize)>,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Epsilon>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    /// Role of every generated vertex, indexed by vertex.
    pub roles: Vec<Role>,
}

impl ReductionSpec {
    pub fn vertices_with(&self, pred: impl Fn(&Role) -> bool) -> Vec<usize> {
        (0..self.roles.len()).filter(|&v| pred(&self.roles[v])).collect()
    }

    pub fn x(&self, u: usize) -> Option<usize> {
        self.roles.iter().position(|r| *r == Role::X(u))
    }

    pub fn y(&self, e: usize) -> Option<usize> {
        self.roles.iter().position(|r| *r == Role::Y(e))
    }

    pub fn role_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for r in &self.roles {
            let tag = match r {
                Role::X(_) => "X",
                Role::Y(_) => "Y",
                Role::R(_) => "R",
                Role::W => "w",
                Role::Z => "z",
            };
            *out.entry(tag).or_insert(0) += 1;
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("role map serializes")
    }

    /// Configuration with every source vertex in `cover` at `X`, all of `Y`
    /// and `z` at state 1 (vertex cover) or the clique vertices and their
    /// internal edges at state 1 (clique).
    pub fn lift(&self, chosen: &[usize]) -> Configuration {
        let mut pick = vec![false; self.source_vertices];
        for &u in chosen {
            pick[u] = true;
        }
        let on = |r: &Role| match (self.kind, r) {
            (_, Role::X(u)) => pick[*u],
            (ReductionKind::MvcReduction, Role::Y(_) | Role::Z) => true,
            (ReductionKind::CliqueReduction, Role::Y(e)) => {
                let (a, b) = self.source_edges[*e];
                pick[a] && pick[b]
            }
            _ => false,
        };
        Configuration::from_support(self.roles.len(), self.vertices_with(on))
    }
}

fn normalize(n: usize, edges: &[(usize, usize)]) -> Result<ThresholdSystem> {
    ThresholdSystem::build(edges, vec![1; n], false)
}

/// Builds the vertex-cover instance. Vertex layout: `X` (source order), `Y`
/// (edge order after normalization), `R` (path order), `w`, `z`.
pub fn build_mvc_reduction(
    n: usize,
    edges: &[(usize, usize)],
    k: usize,
    epsilon: Epsilon,
    beta_cap: u64,
) -> Result<(ThresholdSystem, ReductionSpec)> {
    let g = normalize(n, edges)?;
    if n == 0 || !g.induces_connected(&(0..n).collect::<Vec<_>>()) {
        return Err(Error::Precondition("source graph must be non-empty and connected".into()));
    }
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!("cover size {k} must be in 1..={}", n.saturating_sub(1))));
    }
    let m = g.edge_count();
    let alpha = (m + n + 1) as u64;
    let exp = u32::try_from(epsilon.exponent()).map_err(|_| Error::Capacity("epsilon too small".into()))?;
    let beta = alpha
        .checked_pow(exp)
        .filter(|&b| b <= beta_cap)
        .ok_or_else(|| Error::Capacity(format!("beta = {alpha}^{exp} exceeds the cap {beta_cap}")))?
        as usize;

    let (x0, y0, r0) = (0, n, n + m);
    let w = r0 + beta;
    let z = w + 1;
    let mut out_edges = Vec::with_capacity(n + 3 * m + beta);
    let mut taus = Vec::with_capacity(z + 1);
    let mut roles = Vec::with_capacity(z + 1);
    for u in 0..n {
        taus.push(g.degree(u) as u32 + 1);
        roles.push(Role::X(u));
    }
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        taus.push(3);
        roles.push(Role::Y(i));
        out_edges.push((x0 + a, y0 + i));
        out_edges.push((x0 + b, y0 + i));
        out_edges.push((y0 + i, z));
    }
    for i in 0..beta {
        taus.push(1);
        roles.push(Role::R(i + 1));
        if i + 1 < beta {
            out_edges.push((r0 + i, r0 + i + 1));
        }
    }
    taus.push(k as u32 + 1);
    roles.push(Role::W);
    taus.push(m as u32 + 1);
    roles.push(Role::Z);
    for u in 0..n {
        out_edges.push((x0 + u, w));
    }
    out_edges.push((w, r0));
    let sys = ThresholdSystem::build(&out_edges, taus, false)?;
    let spec = ReductionSpec {
        kind: ReductionKind::MvcReduction,
        source_vertices: n,
        source_edges: g.edges().to_vec(),
        k,
        epsilon: Some(epsilon),
        alpha: Some(alpha),
        beta: Some(beta as u64),
        q: None,
        roles,
    };
    Ok((sys, spec))
}

/// Builds the clique instance. Vertex layout: `X` then `Y`.
pub fn build_clique_reduction(n: usize, edges: &[(usize, usize)], k: usize) -> Result<(ThresholdSystem, ReductionSpec)> {
    if k < 2 {
        return Err(Error::Precondition("clique size must be at least 2".into()));
    }
    let g = normalize(n, edges)?;
    let m = g.edge_count();
    let mut out_edges = Vec::with_capacity(2 * m);
    let mut taus = vec![k as u32; n];
    let mut roles: Vec<Role> = (0..n).map(Role::X).collect();
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        out_edges.push((a, n + i));
        out_edges.push((n + i, b));
        taus.push(3);
        roles.push(Role::Y(i));
    }
    let sys = ThresholdSystem::build(&out_edges, taus, false)?;
    let spec = ReductionSpec {
        kind: ReductionKind::CliqueReduction,
        source_vertices: n,
        source_edges: g.edges().to_vec(),
        k,
        epsilon: None,
        alpha: None,
        beta: None,
        q: Some(k * (k + 1) / 2),
        roles,
    };
    Ok((sys, spec))
}

/// Two-coloring check used to confirm the generated graphs are bipartite.
pub fn is_bipartite(sys: &ThresholdSystem) -> bool {
    let n = sys.vertex_count();
    let mut color = vec![u8::MAX; n];
    let mut stack = Vec::new();
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &w in sys.neighbors(v).iter().chain(sys.out_neighbors(v)) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    stack.push(w);
                } else if color[w] == color[v] {
                    return false;
                }
            }
        }
    }
    true
}
