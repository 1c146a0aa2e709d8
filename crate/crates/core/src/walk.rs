//! Walk-probability matrices built with the composition
//! `C_ij = 1 - prod_{l != i, j} (1 - A_il B_lj)`.
//!
//! These use a zero diagonal, unlike adjacency and connectivity matrices,
//! and are kept as a separate type. For `z = 2` the entries are exact
//! probabilities of at least one two-step walk because the link pairs through
//! distinct intermediates are disjoint. Longer walks share links, so from
//! `z = 3` on the composition is only an independence approximation, and the
//! result need not be symmetric.

use crate::error::{Error, Result};
use crate::graph::ProbGraph;
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq)]
pub struct WalkMatrix {
    entries: Matrix,
    z: usize,
}

impl WalkMatrix {
    /// One-step walk matrix. Entries must lie in `[0, 1]`.
    pub fn new(entries: Matrix) -> Result<Self> {
        let n = entries.dim();
        for i in 0..n {
            for j in 0..n {
                let value = entries[(i, j)];
                if !(0.0..=1.0).contains(&value) {
                    return Err(Error::WalkEntry { i, j, value });
                }
            }
        }
        Ok(WalkMatrix { entries, z: 1 })
    }

    /// Link probabilities with a zero diagonal.
    pub fn from_graph(g: &ProbGraph) -> Self {
        let mut entries = Matrix::zeros(g.n());
        for e in g.edges() {
            entries.set_sym(e.i, e.j, e.p);
        }
        WalkMatrix { entries, z: 1 }
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }
}

/// `a ⊗ b`. The walk length of the result is the sum of the operands'.
pub fn otimes(a: &WalkMatrix, b: &WalkMatrix) -> Result<WalkMatrix> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch(n, b.dim()));
    }
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            // 1 - prod(1 - x) accumulated as a running union, which keeps
            // small probabilities free of cancellation
            out[(i, j)] = (0..n)
                .filter(|&l| l != i && l != j)
                .map(|l| a.get(i, l) * b.get(l, j))
                .fold(0.0, |u, x| u + x * (1.0 - u));
        }
    }
    Ok(WalkMatrix {
        entries: out,
        z: a.z + b.z,
    })
}

/// `m ⊗ m ⊗ ... ⊗ m` with `z` factors, folded from the left.
pub fn walk_probabilities(m: &WalkMatrix, z: usize) -> Result<WalkMatrix> {
    if z == 0 {
        return Err(Error::ZeroWalkLength);
    }
    let mut acc = m.clone();
    for _ in 1..z {
        acc = otimes(&acc, m)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walk(n: usize, links: &[(usize, usize, f64)]) -> WalkMatrix {
        let mut m = Matrix::zeros(n);
        for &(i, j, p) in links {
            m.set_sym(i, j, p);
        }
        WalkMatrix::new(m).unwrap()
    }

    #[test]
    fn single_intermediate() {
        let m = walk(3, &[(0, 1, 0.5), (1, 2, 0.4)]);
        let two = otimes(&m, &m).unwrap();
        assert_eq!(two.get(0, 2), 0.2);
        assert_eq!(two.z(), 2);
    }

    #[test]
    fn zero_operand_gives_zero() {
        let m = walk(3, &[(0, 1, 0.5), (1, 2, 0.4), (0, 2, 0.9)]);
        let zero = WalkMatrix::new(Matrix::zeros(3)).unwrap();
        assert_eq!(*otimes(&m, &zero).unwrap().entries(), Matrix::zeros(3));
    }

    #[test]
    fn two_intermediates() {
        // 0-1-3 and 0-2-3 each carry 0.4 * 0.5 = 0.2
        let m = walk(4, &[(0, 1, 0.4), (1, 3, 0.5), (0, 2, 0.4), (2, 3, 0.5)]);
        let two = otimes(&m, &m).unwrap();
        assert!((two.get(0, 3) - 0.36).abs() < 1e-15);
    }

    #[test]
    fn fold_lengths() {
        let m = walk(3, &[(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.5)]);
        assert_eq!(walk_probabilities(&m, 1).unwrap(), m);
        let two = walk_probabilities(&m, 2).unwrap();
        assert!((two.get(0, 1) - 0.25).abs() < 1e-15);
        assert_eq!(walk_probabilities(&m, 3).unwrap().z(), 3);
        assert_eq!(walk_probabilities(&m, 0), Err(Error::ZeroWalkLength));
    }

    #[test]
    fn path_three_steps_stays_in_range() {
        let g = ProbGraph::new(3, [(0, 1, 0.9), (1, 2, 0.8)]).unwrap();
        let m = WalkMatrix::from_graph(&g);
        let three = walk_probabilities(&m, 3).unwrap();
        for x in three.entries().as_slice() {
            assert!((0.0..=1.0).contains(x));
        }
        // 0 to 1 in three steps goes 0-1-2-1 or 0-1-0-1; the fold composes
        // the two-step matrix with one more link
        let two = walk_probabilities(&m, 2).unwrap();
        let expected = 1.0 - (1.0 - two.get(0, 2) * 0.8);
        assert!((three.get(0, 1) - expected).abs() < 1e-15);
    }

    #[test]
    fn invalid_entries_and_dimensions() {
        let mut m = Matrix::zeros(2);
        m.set_sym(0, 1, 1.2);
        assert!(matches!(WalkMatrix::new(m), Err(Error::WalkEntry { .. })));
        let a = walk(2, &[]);
        let b = walk(3, &[]);
        assert_eq!(otimes(&a, &b), Err(Error::DimensionMismatch(2, 3)));
    }
}
