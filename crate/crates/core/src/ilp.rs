//! Integer program whose feasible points are exactly the nontrivial fixed
//! points:
//!
//! ```text
//! minimize    Σ_v x_v
//! subject to  τ_v x_v            <= Σ_{u∈N[v]} x_u        (cover, per v)
//!             Σ_v x_v            >= 1                      (nontriviality)
//!             Δ x_v + τ_v        >= Σ_{u∈N[v]} x_u + 1     (blocking, per v)
//!             x_v ∈ {0, 1}
//! ```
//!
//! with `N[v]` the closed neighborhood and `Δ = max_degree + 2`. A state-1
//! vertex must see at least `τ_v` state-1 vertices (cover); a state-0 vertex
//! must see fewer than `τ_v` (blocking, which `Δ` relaxes when `x_v = 1`).

use std::fmt::Write as _;
use std::io::Write;

use crate::error::Result;
use crate::system::ThresholdSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Cover,
    Nontrivial,
    Blocking,
}

/// One linear constraint `Σ coef·x (sense) rhs`; terms sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRow {
    pub name: String,
    pub kind: RowKind,
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl LinearRow {
    pub fn holds(&self, x: &[bool]) -> bool {
        let lhs: i64 = self.terms.iter().filter(|(v, _)| x[*v]).map(|(_, c)| c).sum();
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpModel {
    pub variables: usize,
    pub delta: i64,
    /// Cover rows (vertex order), then the nontriviality row, then blocking rows.
    pub rows: Vec<LinearRow>,
}

/// `coef_self · x_v - Σ_{u∈N(v)} x_u` with the self term merged.
fn neighborhood_terms(sys: &ThresholdSystem, v: usize, coef_self: i64) -> Vec<(usize, i64)> {
    let mut terms: Vec<(usize, i64)> = sys.neighbors(v).iter().map(|&u| (u, -1)).collect();
    terms.push((v, coef_self));
    terms.sort_unstable();
    terms.retain(|&(_, c)| c != 0);
    terms
}

impl IlpModel {
    pub fn from_system(sys: &ThresholdSystem) -> Self {
        let n = sys.vertex_count();
        let delta = sys.max_degree() as i64 + 2;
        let mut rows = Vec::with_capacity(2 * n + 1);
        for v in 0..n {
            let tau = sys.threshold(v) as i64;
            rows.push(LinearRow {
                name: format!("cover_{v}"),
                kind: RowKind::Cover,
                terms: neighborhood_terms(sys, v, tau - 1),
                sense: Sense::Le,
                rhs: 0,
            });
        }
        rows.push(LinearRow {
            name: "nontrivial".into(),
            kind: RowKind::Nontrivial,
            terms: (0..n).map(|v| (v, 1)).collect(),
            sense: Sense::Ge,
            rhs: 1,
        });
        for v in 0..n {
            let tau = sys.threshold(v) as i64;
            rows.push(LinearRow {
                name: format!("block_{v}"),
                kind: RowKind::Blocking,
                terms: neighborhood_terms(sys, v, delta - 1),
                sense: Sense::Ge,
                rhs: 1 - tau,
            });
        }
        IlpModel { variables: n, delta, rows }
    }

    pub fn is_feasible(&self, x: &[bool]) -> bool {
        x.len() == self.variables && self.rows.iter().all(|r| r.holds(x))
    }

    pub fn objective(&self, x: &[bool]) -> usize {
        x.iter().filter(|&&b| b).count()
    }

    pub fn to_lp_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "\\ minimum nontrivial fixed point, n = {}, delta = {}", self.variables, self.delta);
        s.push_str("Minimize\n obj:");
        if self.variables == 0 {
            s.push_str(" 0");
        }
        for v in 0..self.variables {
            let _ = write!(s, "{} x_{v}", if v == 0 { "" } else { " +" });
        }
        s.push_str("\nSubject To\n");
        for row in &self.rows {
            let _ = write!(s, " {}:", row.name);
            if row.terms.is_empty() {
                s.push_str(" 0 x_0");
            }
            for (i, &(v, c)) in row.terms.iter().enumerate() {
                let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
                let mag = c.abs();
                let lead = if sign.is_empty() { "" } else { " " };
                if mag == 1 {
                    let _ = write!(s, " {sign}{lead}x_{v}");
                } else {
                    let _ = write!(s, " {sign}{lead}{mag} x_{v}");
                }
            }
            let op = match row.sense {
                Sense::Le => "<=",
                Sense::Ge => ">=",
            };
            let _ = writeln!(s, " {op} {}", row.rhs);
        }
        s.push_str("Binary\n");
        for v in 0..self.variables {
            let _ = writeln!(s, " x_{v}");
        }
        s.push_str("End\n");
        s
    }
}

/// Writes the model in CPLEX LP format. Variables are named `x_<index>`.
pub fn export_lp<W: Write>(model: &IlpModel, mut sink: W) -> Result<()> {
    sink.write_all(model.to_lp_string().as_bytes())?;
    Ok(())
}

/// Checks `assignment` against every ILP constraint.
pub fn verify_ilp_solution(sys: &ThresholdSystem, assignment: &[bool]) -> bool {
    IlpModel::from_system(sys).is_feasible(assignment)
}
