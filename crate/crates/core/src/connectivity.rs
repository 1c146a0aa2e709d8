use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::graph::ComponentPartition;
use crate::matrix::Matrix;

/// Path-probability matrix: entry `(i, j)` is the probability that a path
/// joins `i` and `j`. Symmetric with a unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectivityMatrix(Matrix);

impl ConnectivityMatrix {
    /// Validates symmetry (exact), the unit diagonal and the `[0, 1]` range.
    pub fn new(m: Matrix) -> Result<Self> {
        let n = m.dim();
        for i in 0..n {
            if m[(i, i)] != 1.0 {
                return Err(Error::BadDiagonal(i));
            }
            for j in (i + 1)..n {
                if m[(i, j)] != m[(j, i)] {
                    return Err(Error::Asymmetric { i, j });
                }
                if !(0.0..=1.0).contains(&m[(i, j)]) {
                    return Err(Error::ProbabilityOutOfRange { i, j, p: m[(i, j)] });
                }
            }
        }
        Ok(ConnectivityMatrix(m))
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    pub(crate) fn from_trusted(m: Matrix) -> Self {
        debug_assert!(m.max_asymmetry() == 0.0);
        ConnectivityMatrix(m)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    /// Components read off the zero pattern: `i` and `j` share a block when
    /// linked by a chain of positive entries.
    pub fn positive_components(&self) -> ComponentPartition {
        let n = self.dim();
        let mut uf = UnionFind::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if self.get(i, j) > 0.0 {
                    uf.union(i, j);
                }
            }
        }
        ComponentPartition::from_labels(&uf.labels())
    }

    /// True when every entry is positive, i.e. the matrix is irreducible.
    pub fn is_irreducible(&self) -> bool {
        self.0.as_slice().iter().all(|&x| x > 0.0)
    }
}
