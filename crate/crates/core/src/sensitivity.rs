//! One-link sensitivity of the connectivity matrix and of its largest
//! eigenvalue.
//!
//! Every path probability is affine in each single link probability, so two
//! exact evaluations (link dead, link sure) pin the whole line `Q(t)`. The
//! derivative of a simple largest eigenvalue along that line is `x^T S x`
//! with `x` the unit principal eigenvector and `S` the slope matrix.

use rayon::prelude::*;
use serde::Serialize;

use crate::connectivity::ConnectivityMatrix;
use crate::error::Result;
use crate::exact::exact_connectivity;
use crate::graph::ProbGraph;
use crate::matrix::Matrix;
use crate::spectral::{lambda_max, sym_eig, SymEigen};

/// Below this eigengap the largest eigenvalue is treated as repeated.
pub const SIMPLE_GAP: f64 = 1e-8;
pub const FD_STEP: f64 = 1e-5;

/// Gains closer than this are ranked as ties.
const GAIN_RESOLUTION: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct AffineSlice {
    pub edge: usize,
    pub q0: ConnectivityMatrix,
    pub q1: ConnectivityMatrix,
    pub slope: Matrix,
}

impl AffineSlice {
    /// `q0 + t * slope`. Meaningful for `t` in `[0, 1]`; outside that range
    /// it is the affine extension.
    pub fn at(&self, t: f64) -> Matrix {
        self.q0.matrix().map2(&self.slope, |base, s| base + t * s)
    }
}

pub fn affine_slice(g: &ProbGraph, edge: usize, max_edges: usize) -> Result<AffineSlice> {
    let q0 = exact_connectivity(&g.with_probability(edge, 0.0)?, max_edges)?;
    let q1 = exact_connectivity(&g.with_probability(edge, 1.0)?, max_edges)?;
    let slope = q1.matrix().map2(q0.matrix(), |a, b| a - b);
    Ok(AffineSlice {
        edge,
        q0,
        q1,
        slope,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivativeMethod {
    Rayleigh,
    /// Central difference along the affine line; used when the largest
    /// eigenvalue is not simple and the derivative may not exist.
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaDerivative {
    pub value: f64,
    pub method: DerivativeMethod,
    pub gap: f64,
}

/// Derivative of the largest eigenvalue with respect to one link
/// probability, at its current value.
pub fn lambda_derivative(g: &ProbGraph, edge: usize, max_edges: usize) -> Result<LambdaDerivative> {
    let q = exact_connectivity(g, max_edges)?;
    let eig = sym_eig(q.matrix())?;
    let slice = affine_slice(g, edge, max_edges)?;
    derivative_on(&slice, g.edges()[edge].p, &eig)
}

fn derivative_on(slice: &AffineSlice, p: f64, eig: &SymEigen) -> Result<LambdaDerivative> {
    let gap = match eig.values.as_slice() {
        [first, second, ..] => first - second,
        _ => f64::INFINITY,
    };
    if gap > SIMPLE_GAP {
        let value = slice.slope.quadratic_form(&eig.vector(0));
        return Ok(LambdaDerivative {
            value,
            method: DerivativeMethod::Rayleigh,
            gap,
        });
    }
    let ahead = lambda_max(&slice.at(p + FD_STEP))?;
    let behind = lambda_max(&slice.at(p - FD_STEP))?;
    Ok(LambdaDerivative {
        value: (ahead - behind) / (2.0 * FD_STEP),
        method: DerivativeMethod::FiniteDifference,
        gap,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankEntry {
    /// Canonical index, or `None` for a pair not in the edge list.
    pub edge: Option<usize>,
    pub i: usize,
    pub j: usize,
    pub p: f64,
    pub dlambda: f64,
    pub method: DerivativeMethod,
    pub headroom: f64,
    /// Largest-eigenvalue increase from making this link sure.
    pub projected_gain: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SensitivityRanking {
    pub lambda_max: f64,
    /// Sorted by projected gain, descending; ties by `(i, j)`.
    pub entries: Vec<RankEntry>,
}

/// Ranks single-link improvements. With `include_absent`, every vertex pair
/// missing from the edge list is also scored as a new link at probability 0.
pub fn rank_improvements(
    g: &ProbGraph,
    include_absent: bool,
    max_edges: usize,
) -> Result<SensitivityRanking> {
    let q = exact_connectivity(g, max_edges)?;
    let eig = sym_eig(q.matrix())?;
    let current = eig.values[0];

    let mut candidates: Vec<(Option<usize>, usize, usize)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(k, e)| (Some(k), e.i, e.j))
        .collect();
    if include_absent {
        candidates.extend(g.absent_pairs().into_iter().map(|(i, j)| (None, i, j)));
    }

    let mut entries = candidates
        .into_par_iter()
        .map(|(edge, i, j)| -> Result<RankEntry> {
            let (slice, p) = match edge {
                Some(k) => (affine_slice(g, k, max_edges)?, g.edges()[k].p),
                None => {
                    let extended = g.with_edge(i, j, 0.0)?;
                    let k = extended.edge_index(i, j).expect("edge just added");
                    (affine_slice(&extended, k, max_edges)?, 0.0)
                }
            };
            let derivative = derivative_on(&slice, p, &eig)?;
            let projected_gain = if p >= 1.0 {
                0.0
            } else {
                lambda_max(slice.q1.matrix())? - current
            };
            Ok(RankEntry {
                edge,
                i,
                j,
                p,
                dlambda: derivative.value,
                method: derivative.method,
                headroom: 1.0 - p,
                projected_gain,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    entries.sort_by_key(|e| (std::cmp::Reverse(gain_key(e.projected_gain)), e.i, e.j));
    Ok(SensitivityRanking {
        lambda_max: current,
        entries,
    })
}

fn gain_key(gain: f64) -> i64 {
    (gain / GAIN_RESOLUTION).round() as i64
}
