//! Spectrum of the connectivity matrix and the largest-eigenvalue quality
//! metric.

use serde::Serialize;

use crate::connectivity::ConnectivityMatrix;
use crate::error::{Error, Result};
use crate::graph::ComponentPartition;
use crate::matrix::Matrix;

pub const DEFAULT_SPECTRAL_TOLERANCE: f64 = 1e-9;

const MAX_SWEEPS: usize = 100;
const RELATIVE_OFF_NORM: f64 = 1e-12;
const SYMMETRY_SLACK: f64 = 1e-12;

/// Eigenvalues in descending order; column `k` of `vectors` belongs to
/// `values[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
    pub sweeps: usize,
}

impl SymEigen {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        (0..self.vectors.dim())
            .map(|r| self.vectors[(r, k)])
            .collect()
    }

    /// `V diag(values) V^T`.
    pub fn reconstruct(&self) -> Matrix {
        let n = self.values.len();
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n)
                    .map(|k| self.vectors[(i, k)] * self.values[k] * self.vectors[(j, k)])
                    .sum();
            }
        }
        out
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Sweeps over all off-diagonal pairs in row order until the off-diagonal
/// Frobenius norm drops to `1e-12` times the input norm. Entries that are
/// exactly zero are never rotated, so block-diagonal inputs keep
/// block-supported eigenvectors.
pub fn sym_eig(m: &Matrix) -> Result<SymEigen> {
    let n = m.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            if (m[(i, j)] - m[(j, i)]).abs() > SYMMETRY_SLACK {
                return Err(Error::Asymmetric { i, j });
            }
        }
    }
    let mut a = m.clone();
    let mut v = Matrix::identity(n);
    let target = RELATIVE_OFF_NORM * m.frobenius_norm();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                if a[(p, q)] != 0.0 {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(y, y)].total_cmp(&a[(x, x)]));
    let values = order.iter().map(|&k| a[(k, k)]).collect();
    let mut vectors = Matrix::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, col)] = v[(r, k)];
        }
    }
    Ok(SymEigen {
        values,
        vectors,
        sweeps,
    })
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.dim();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                total += a[(i, j)] * a[(i, j)];
            }
        }
    }
    total.sqrt()
}

/// Annihilates `a[p][q]` with a plane rotation and accumulates it into `v`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let n = a.dim();
    let apq = a[(p, q)];
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;

    for k in 0..n {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        a[(k, p)] = a[(p, k)];
        a[(k, q)] = a[(q, k)];
    }
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

pub fn lambda_max(m: &Matrix) -> Result<f64> {
    Ok(sym_eig(m)?.values.first().copied().unwrap_or(0.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentSpectrum {
    pub vertices: Vec<usize>,
    pub lambda_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralReport {
    pub eigenvalues: Vec<f64>,
    pub lambda_max: f64,
    pub lambda_max_normalized: f64,
    pub psd: bool,
    pub definite: bool,
    /// Unit eigenvector of the largest eigenvalue, signed to have a
    /// non-negative sum.
    pub principal_eigvec: Vec<f64>,
    pub components: Vec<ComponentSpectrum>,
    pub tolerance: f64,
}

pub fn spectral_report(
    q: &ConnectivityMatrix,
    partition: &ComponentPartition,
    tolerance: f64,
) -> Result<SpectralReport> {
    let n = q.dim();
    if partition.vertex_count() != n {
        return Err(Error::DimensionMismatch(partition.vertex_count(), n));
    }
    let labels = partition.labels();
    for i in 0..n {
        for j in (i + 1)..n {
            if labels[i] != labels[j] && q.get(i, j) != 0.0 {
                return Err(Error::PartitionMismatch { i, j });
            }
        }
    }

    let eig = sym_eig(q.matrix())?;
    let lambda_max = eig.values[0];
    let smallest = *eig.values.last().expect("non-empty matrix");
    let mut principal_eigvec = eig.vector(0);
    if principal_eigvec.iter().sum::<f64>() < 0.0 {
        principal_eigvec.iter_mut().for_each(|x| *x = -*x);
    }
    let components = component_spectra(q, partition)?;

    let slack = tolerance * n as f64;
    Ok(SpectralReport {
        lambda_max,
        lambda_max_normalized: lambda_max / n as f64,
        psd: smallest >= -slack,
        definite: smallest > slack,
        principal_eigvec,
        components,
        eigenvalues: eig.values,
        tolerance,
    })
}

fn component_spectra(
    q: &ConnectivityMatrix,
    partition: &ComponentPartition,
) -> Result<Vec<ComponentSpectrum>> {
    partition
        .blocks()
        .iter()
        .map(|block| {
            Ok(ComponentSpectrum {
                vertices: block.clone(),
                lambda_max: lambda_max(&q.matrix().submatrix(block))?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum QualityOrder {
    /// The second matrix dominates the first entrywise and both networks are
    /// connected; `margin` is the eigenvalue increase and must be positive.
    SecondBetter {
        margin: f64,
    },
    FirstBetter {
        margin: f64,
    },
    /// No ordering follows from dominance of irreducible matrices.
    Incomparable {
        reason: Incomparable,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Incomparable {
    Identical,
    /// Neither matrix dominates the other entrywise.
    Crossing,
    /// Dominance holds, but at least one network is disconnected.
    Reducible {
        first: bool,
        second: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityComparison {
    pub order: QualityOrder,
    pub lambda_first: f64,
    pub lambda_second: f64,
    pub normalized_first: f64,
    pub normalized_second: f64,
    pub components_first: Vec<ComponentSpectrum>,
    pub components_second: Vec<ComponentSpectrum>,
}

/// Entry differences up to this are rounding in the engines, not a change.
const DOMINANCE_SLACK: f64 = 1e-12;

/// Orders two networks on the same vertex set by their connectivity
/// matrices. Dominance of connected networks implies a strict increase of
/// the largest eigenvalue; every other case is reported as incomparable
/// with the eigenvalues still attached.
pub fn compare_quality(
    first: &ConnectivityMatrix,
    second: &ConnectivityMatrix,
) -> Result<QualityComparison> {
    let n = first.dim();
    if second.dim() != n {
        return Err(Error::DimensionMismatch(n, second.dim()));
    }
    let (mut up, mut down) = (false, false);
    for (a, b) in first
        .matrix()
        .as_slice()
        .iter()
        .zip(second.matrix().as_slice())
    {
        up |= b - a > DOMINANCE_SLACK;
        down |= a - b > DOMINANCE_SLACK;
    }
    let lambda_first = lambda_max(first.matrix())?;
    let lambda_second = lambda_max(second.matrix())?;
    let irreducible = (first.is_irreducible(), second.is_irreducible());

    let order = match (up, down) {
        (false, false) => QualityOrder::Incomparable {
            reason: Incomparable::Identical,
        },
        (true, true) => QualityOrder::Incomparable {
            reason: Incomparable::Crossing,
        },
        _ if irreducible != (true, true) => QualityOrder::Incomparable {
            reason: Incomparable::Reducible {
                first: !irreducible.0,
                second: !irreducible.1,
            },
        },
        (true, false) => QualityOrder::SecondBetter {
            margin: lambda_second - lambda_first,
        },
        (false, true) => QualityOrder::FirstBetter {
            margin: lambda_first - lambda_second,
        },
    };
    Ok(QualityComparison {
        order,
        lambda_first,
        lambda_second,
        normalized_first: lambda_first / n as f64,
        normalized_second: lambda_second / n as f64,
        components_first: component_spectra(first, &first.positive_components())?,
        components_second: component_spectra(second, &second.positive_components())?,
    })
}

/// Evidence that a 0/1 connectivity matrix is a symmetric permutation of
/// `diag(J_1, ..., J_k)` with all-ones blocks `J_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CornerCertificate {
    pub blocks: Vec<Vec<usize>>,
    /// Vertices listed block by block.
    pub permutation: Vec<usize>,
    /// Block sizes descending, padded with zeros to `n`.
    pub expected_spectrum: Vec<f64>,
    pub eigenvalues: Vec<f64>,
}

const BINARY_SLACK: f64 = 1e-12;

pub fn verify_corner_structure(q: &ConnectivityMatrix) -> Result<CornerCertificate> {
    let n = q.dim();
    let mut bits = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            let value = q.get(i, j);
            bits[i * n + j] = if value.abs() <= BINARY_SLACK {
                false
            } else if (value - 1.0).abs() <= BINARY_SLACK {
                true
            } else {
                return Err(Error::NotBinary { i, j, value });
            };
        }
    }

    let mut assigned = vec![false; n];
    let mut blocks = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let block: Vec<usize> = (0..n).filter(|&j| bits[i * n + j]).collect();
        for &u in &block {
            if assigned[u] {
                return Err(Error::CornerStructure { i, j: u });
            }
            // every member must carry exactly the same row
            for w in 0..n {
                if bits[u * n + w] != bits[i * n + w] {
                    return Err(Error::CornerStructure { i: u, j: w });
                }
            }
            assigned[u] = true;
        }
        blocks.push(block);
    }

    let permutation: Vec<usize> = blocks.iter().flatten().copied().collect();
    let mut expected_spectrum: Vec<f64> = blocks.iter().map(|b| b.len() as f64).collect();
    expected_spectrum.sort_by(|a, b| b.total_cmp(a));
    expected_spectrum.resize(n, 0.0);

    let eigenvalues = sym_eig(q.matrix())?.values;
    let deviation = eigenvalues
        .iter()
        .zip(&expected_spectrum)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if deviation > DEFAULT_SPECTRAL_TOLERANCE {
        return Err(Error::CornerSpectrum(deviation));
    }
    Ok(CornerCertificate {
        blocks,
        permutation,
        expected_spectrum,
        eigenvalues,
    })
}
