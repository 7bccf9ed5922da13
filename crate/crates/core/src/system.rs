//! Threshold systems: an underlying graph plus one integer threshold per vertex.
//!
//! Vertex `v` is in state 1 after a step iff the number of state-1 vertices in
//! its closed neighborhood (`v` itself plus its neighbors, or its in-neighbors
//! in directed mode) is at least `τ_v`. Thresholds are normalized on
//! construction so that `τ_v <= deg(v) + 2`; every larger value behaves like a
//! vertex that can never fire.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Behavioral class of a single vertex, decided by its threshold alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexClass {
    /// `τ_v = 0`: in state 1 after every step.
    Constant1,
    /// `τ_v = deg(v) + 2`: in state 0 after every step.
    Constant0,
    Ordinary,
}

/// An immutable threshold system.
///
/// Adjacency is stored in compressed-row form twice: `inbound` lists the
/// vertices whose state feeds `v` (excluding `v` itself), `outbound` lists the
/// vertices that `v` feeds. For undirected systems the two coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdSystem {
    directed: bool,
    thresholds: Vec<u32>,
    edges: Vec<(usize, usize)>,
    in_offsets: Vec<usize>,
    in_targets: Vec<usize>,
    out_offsets: Vec<usize>,
    out_targets: Vec<usize>,
}

fn csr(n: usize, pairs: impl Iterator<Item = (usize, usize)> + Clone) -> (Vec<usize>, Vec<usize>) {
    let mut offsets = vec![0usize; n + 1];
    for (from, _) in pairs.clone() {
        offsets[from + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut fill = offsets.clone();
    let mut targets = vec![0usize; offsets[n]];
    for (from, to) in pairs {
        targets[fill[from]] = to;
        fill[from] += 1;
    }
    for v in 0..n {
        targets[offsets[v]..offsets[v + 1]].sort_unstable();
    }
    (offsets, targets)
}

impl ThresholdSystem {
    /// Builds a system from dense vertex indices.
    ///
    /// `thresholds.len()` fixes the vertex count; it must cover every edge
    /// endpoint, and any extra entries become isolated vertices. Parallel
    /// edges are merged, self-loops are rejected. In directed mode the pair
    /// `(u, v)` is the arc `u -> v`, so `u` counts toward `v`'s threshold.
    pub fn build(edges: &[(usize, usize)], thresholds: Vec<u32>, directed: bool) -> Result<Self> {
        let n = thresholds.len();
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if u >= n || v >= n {
                let needed = u.max(v) + 1;
                return Err(Error::ThresholdLength { expected: needed, got: n });
            }
            if directed {
                set.insert((u, v));
            } else {
                set.insert((u.min(v), u.max(v)));
            }
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let (in_offsets, in_targets, out_offsets, out_targets) = if directed {
            let (io, it) = csr(n, edges.iter().map(|&(u, v)| (v, u)));
            let (oo, ot) = csr(n, edges.iter().map(|&(u, v)| (u, v)));
            (io, it, oo, ot)
        } else {
            let both = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]);
            let (o, t) = csr(n, both);
            (o.clone(), t.clone(), o, t)
        };
        let mut sys = ThresholdSystem {
            directed,
            thresholds,
            edges,
            in_offsets,
            in_targets,
            out_offsets,
            out_targets,
        };
        sys.clamp_thresholds();
        Ok(sys)
    }

    fn clamp_thresholds(&mut self) {
        for v in 0..self.thresholds.len() {
            let cap = self.degree(v) as u32 + 2;
            if self.thresholds[v] > cap {
                self.thresholds[v] = cap;
            }
        }
    }

    /// Same graph, new thresholds (clamped as on construction).
    pub fn with_thresholds(&self, thresholds: Vec<u32>) -> Result<Self> {
        if thresholds.len() != self.vertex_count() {
            return Err(Error::ThresholdLength {
                expected: self.vertex_count(),
                got: thresholds.len(),
            });
        }
        let mut sys = ThresholdSystem { thresholds, ..self.clone() };
        sys.clamp_thresholds();
        Ok(sys)
    }

    pub fn vertex_count(&self) -> usize {
        self.thresholds.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Deduplicated edges; undirected edges are stored as `(min, max)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn thresholds(&self) -> &[u32] {
        &self.thresholds
    }

    pub fn threshold(&self, v: usize) -> u32 {
        self.thresholds[v]
    }

    /// Open (in-)neighborhood of `v`, sorted ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.in_targets[self.in_offsets[v]..self.in_offsets[v + 1]]
    }

    /// Vertices whose closed neighborhood contains `v`, excluding `v` itself.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_targets[self.out_offsets[v]..self.out_offsets[v + 1]]
    }

    /// Degree in undirected mode, in-degree in directed mode.
    pub fn degree(&self, v: usize) -> usize {
        self.in_offsets[v + 1] - self.in_offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn classify(&self, v: usize) -> VertexClass {
        let tau = self.thresholds[v];
        if tau == 0 {
            VertexClass::Constant1
        } else if tau as usize == self.degree(v) + 2 {
            VertexClass::Constant0
        } else {
            VertexClass::Ordinary
        }
    }

    pub fn is_constant0(&self, v: usize) -> bool {
        self.classify(v) == VertexClass::Constant0
    }

    pub fn has_constant1(&self) -> bool {
        self.thresholds.contains(&0)
    }

    /// Undirected and every pair of distinct vertices adjacent.
    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        !self.directed && (0..n).all(|v| self.degree(v) + 1 == n)
    }

    /// Directed with no directed cycle (Kahn's algorithm).
    pub fn is_acyclic(&self) -> bool {
        if !self.directed {
            return false;
        }
        let n = self.vertex_count();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in self.out_neighbors(v) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        seen == n
    }

    /// Whether `vertices` induce a connected subgraph (weakly connected in
    /// directed mode). The empty set counts as connected.
    pub fn induces_connected(&self, vertices: &[usize]) -> bool {
        let Some(&first) = vertices.first() else { return true };
        let mut inside = vec![false; self.vertex_count()];
        for &v in vertices {
            inside[v] = true;
        }
        let mut seen = vec![false; self.vertex_count()];
        seen[first] = true;
        let mut stack = vec![first];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v).iter().chain(self.out_neighbors(v)) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == inside.iter().filter(|&&b| b).count()
    }

    /// Number of state-1 vertices in the closed neighborhood of `v`, where
    /// `state(u)` reports the state of `u`.
    pub(crate) fn closed_count(&self, v: usize, state: impl Fn(usize) -> bool) -> u32 {
        let own = state(v) as u32;
        own + self.neighbors(v).iter().filter(|&&u| state(u)).count() as u32
    }
}

/// Builds a system from an edge list over dense indices; see [`ThresholdSystem::build`].
pub fn build_system(edges: &[(usize, usize)], thresholds: Vec<u32>, directed: bool) -> Result<ThresholdSystem> {
    ThresholdSystem::build(edges, thresholds, directed)
}
