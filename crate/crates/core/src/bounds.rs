//! Pairwise inequalities on path probabilities and the critical-vertex test.
//!
//! For distinct `i`, `j` and every third vertex `k`:
//!
//! ```text
//! max_k q_ik q_kj  <=  q_ij  <=  1 - (1 - a_ij) * prod_k (1 - q_ik q_kj)
//! ```
//!
//! Equality `q_ij = q_ik q_kj` means every path from `i` to `j` runs through
//! `k`, which makes `k` a cut vertex.

use serde::Serialize;

use crate::connectivity::ConnectivityMatrix;
use crate::error::{Error, Result};
use crate::graph::{AdjacencyMatrix, ProbGraph};
use crate::matrix::Matrix;
use crate::mc::McEstimate;

pub const DEFAULT_BOUNDS_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_CRITICAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundViolation {
    pub i: usize,
    pub j: usize,
    pub kind: BoundKind,
    /// Distance outside the bound, beyond any tolerance.
    pub magnitude: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub lower: Matrix,
    pub upper: Matrix,
    pub violations: Vec<BoundViolation>,
    /// Pairs with no third vertex, where both bounds are trivial.
    pub unconstrained: Vec<(usize, usize)>,
    pub tolerance: f64,
}

fn check_tolerance(tolerance: f64) -> Result<()> {
    if tolerance.is_finite() && tolerance >= 0.0 {
        Ok(())
    } else {
        Err(Error::BadTolerance(tolerance))
    }
}

pub fn compute_bounds(
    a: &AdjacencyMatrix,
    q: &ConnectivityMatrix,
    tolerance: f64,
) -> Result<BoundsReport> {
    check_tolerance(tolerance)?;
    let n = q.dim();
    if a.dim() != n {
        return Err(Error::DimensionMismatch(a.dim(), n));
    }
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    let mut violations = Vec::new();
    let mut unconstrained = Vec::new();

    for i in 0..n {
        for j in (i + 1)..n {
            // max over an empty set is 0, product over an empty set is 1
            let mut lo = 0.0f64;
            let mut miss = 1.0;
            for k in (0..n).filter(|&k| k != i && k != j) {
                let through = q.get(i, k) * q.get(k, j);
                lo = lo.max(through);
                miss *= 1.0 - through;
            }
            let hi = 1.0 - (1.0 - a.get(i, j)) * miss;
            lower.set_sym(i, j, lo);
            upper.set_sym(i, j, hi);
            if n == 2 {
                unconstrained.push((i, j));
            }

            let qij = q.get(i, j);
            if qij < lo - tolerance {
                violations.push(BoundViolation {
                    i,
                    j,
                    kind: BoundKind::Lower,
                    magnitude: lo - qij,
                });
            }
            if qij > hi + tolerance {
                violations.push(BoundViolation {
                    i,
                    j,
                    kind: BoundKind::Upper,
                    magnitude: qij - hi,
                });
            }
        }
    }
    Ok(BoundsReport {
        lower,
        upper,
        violations,
        unconstrained,
        tolerance,
    })
}

/// Split implied by a cut vertex: `k` separates `side_i` from `side_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionHint {
    pub side_i: Vec<usize>,
    pub side_j: Vec<usize>,
}

/// Pair `(l, m)` across a derived partition where `q_lm = q_lk q_km` did
/// not hold within tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorWarning {
    pub l: usize,
    pub m: usize,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalFinding {
    pub k: usize,
    /// Every `(i, j)`, `i < j`, with `q_ij > 0` and `q_ij = q_ik q_kj`.
    pub witnesses: Vec<(usize, usize)>,
    pub partition_hint: Option<PartitionHint>,
    pub warnings: Vec<FactorWarning>,
    /// Set when the matrix was estimated by sampling; the equality test is
    /// then only as good as the supplied tolerance.
    pub statistical: bool,
}

/// Scans every vertex for the product equality. Exhaustive over witnesses.
pub fn find_critical_vertices(
    q: &ConnectivityMatrix,
    tolerance: f64,
) -> Result<Vec<CriticalFinding>> {
    check_tolerance(tolerance)?;
    let n = q.dim();
    let mut findings = Vec::new();
    for k in 0..n {
        let mut witnesses = Vec::new();
        for i in (0..n).filter(|&i| i != k) {
            for j in ((i + 1)..n).filter(|&j| j != k) {
                let qij = q.get(i, j);
                if qij > 0.0 && (qij - q.get(i, k) * q.get(k, j)).abs() <= tolerance {
                    witnesses.push((i, j));
                }
            }
        }
        if !witnesses.is_empty() {
            findings.push(CriticalFinding {
                k,
                witnesses,
                partition_hint: None,
                warnings: Vec::new(),
                statistical: false,
            });
        }
    }
    Ok(findings)
}

/// As [`find_critical_vertices`], with the vertex split derived from the
/// support graph of `g` and the cross-partition factorization checked.
pub fn find_critical_vertices_in(
    g: &ProbGraph,
    q: &ConnectivityMatrix,
    tolerance: f64,
) -> Result<Vec<CriticalFinding>> {
    if g.n() != q.dim() {
        return Err(Error::DimensionMismatch(g.n(), q.dim()));
    }
    let mut findings = find_critical_vertices(q, tolerance)?;
    let adj = g.support_neighbors();
    for f in &mut findings {
        let (i, _) = f.witnesses[0];
        let side_i = reachable_without(&adj, i, f.k);
        let side_j: Vec<usize> = (0..g.n())
            .filter(|v| *v != f.k && side_i.binary_search(v).is_err())
            .collect();
        if side_j.is_empty() {
            continue;
        }
        for &l in &side_i {
            for &m in &side_j {
                let deviation = (q.get(l, m) - q.get(l, f.k) * q.get(f.k, m)).abs();
                if deviation > tolerance {
                    f.warnings.push(FactorWarning { l, m, deviation });
                }
            }
        }
        f.partition_hint = Some(PartitionHint { side_i, side_j });
    }
    Ok(findings)
}

/// Critical-vertex scan on a sampled matrix. Findings are flagged as
/// statistical rather than certified.
pub fn find_critical_vertices_sampled(
    est: &McEstimate,
    tolerance: f64,
) -> Result<Vec<CriticalFinding>> {
    let mut findings = find_critical_vertices(&est.q_hat, tolerance)?;
    for f in &mut findings {
        f.statistical = true;
    }
    Ok(findings)
}

fn reachable_without(adj: &[Vec<usize>], start: usize, removed: usize) -> Vec<usize> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    seen[removed] = true;
    let mut stack = vec![start];
    let mut out = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                out.push(w);
                stack.push(w);
            }
        }
    }
    out.sort_unstable();
    out
}
