//! Exact path probabilities by exhaustive enumeration of edge states.
//!
//! Every joint realization of the uncertain links is visited, the
//! deterministic graph it induces is split into connected pieces, and the
//! realization's probability is credited to every pair it connects. The
//! expectation factorizes over support components, so each component is
//! enumerated on its own and the results are placed block-diagonally.
//!
//! Links with probability 0 or 1 are not enumerated: a dead link only adds
//! zero-weight states and a sure link is pre-merged before enumeration, so
//! the result is unchanged while the exponent drops to the number of
//! genuinely uncertain links.

use rayon::prelude::*;

use crate::connectivity::ConnectivityMatrix;
use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::graph::{Edge, ProbGraph};
use crate::matrix::{CompensatedSum, Matrix};

/// Default cap on uncertain links per component (about 4.2M states).
pub const DEFAULT_MAX_EDGES: usize = 22;

/// log2 of the number of fixed enumeration chunks. The chunking does not
/// depend on the thread count, so results are bit-identical everywhere.
const CHUNK_BITS: usize = 8;

/// One realization of every edge indicator, in canonical edge order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeState {
    bits: Vec<bool>,
}

impl EdgeState {
    pub fn new(bits: Vec<bool>) -> Self {
        EdgeState { bits }
    }

    /// Bit `k` of `mask` is the indicator of edge `k`.
    pub fn from_mask(mask: u64, m: usize) -> Self {
        assert!(m <= 64, "mask holds at most 64 edges");
        EdgeState {
            bits: (0..m).map(|k| mask >> k & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Every state of `m` edges in ascending mask order.
    pub fn all(m: usize) -> impl Iterator<Item = EdgeState> {
        assert!(m < 64, "too many edges to enumerate");
        (0..1u64 << m).map(move |mask| EdgeState::from_mask(mask, m))
    }

    fn check(&self, g: &ProbGraph) -> Result<()> {
        if self.bits.len() != g.m() {
            return Err(Error::StateLength {
                expected: g.m(),
                got: self.bits.len(),
            });
        }
        Ok(())
    }
}

/// 0/1 matrix of the deterministic graph made of the edges switched on in
/// `state`. The probabilities are not consulted.
pub fn conditional_connectivity(g: &ProbGraph, state: &EdgeState) -> Result<Matrix> {
    state.check(g)?;
    let n = g.n();
    let mut uf = UnionFind::new(n);
    for (e, _) in g.edges().iter().zip(state.bits()).filter(|(_, &on)| on) {
        uf.union(e.i, e.j);
    }
    let labels = uf.labels();
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                out[(i, j)] = 1.0;
            }
        }
    }
    Ok(out)
}

/// Probability of `state` under independent links.
pub fn state_probability(g: &ProbGraph, state: &EdgeState) -> Result<f64> {
    state.check(g)?;
    Ok(g.edges()
        .iter()
        .zip(state.bits())
        .map(|(e, &on)| if on { e.p } else { 1.0 - e.p })
        .product())
}

/// Exact connectivity matrix. Fails with [`Error::EdgeLimitExceeded`] when
/// some support component has more than `max_edges` uncertain links.
pub fn exact_connectivity(g: &ProbGraph, max_edges: usize) -> Result<ConnectivityMatrix> {
    let parts = g.support_components();
    let labels = parts.labels();

    let mut jobs = Vec::new();
    for (b, block) in parts.blocks().iter().enumerate() {
        if block.len() < 2 {
            continue;
        }
        let local: Vec<Edge> = g
            .edges()
            .iter()
            .filter(|e| e.p > 0.0 && labels[e.i] == b)
            .map(|e| Edge {
                i: local_index(block, e.i),
                j: local_index(block, e.j),
                p: e.p,
            })
            .collect();
        let uncertain = local.iter().filter(|e| e.p < 1.0).count();
        if uncertain > max_edges {
            return Err(Error::EdgeLimitExceeded {
                edges: uncertain,
                max_edges,
            });
        }
        jobs.push((block, local));
    }

    let mut q = Matrix::identity(g.n());
    for (block, local) in jobs {
        let values = enumerate_block(block.len(), &local);
        for (a, &u) in block.iter().enumerate() {
            for (b, &v) in block.iter().enumerate().skip(a + 1) {
                q.set_sym(u, v, values[a * block.len() + b]);
            }
        }
    }
    Ok(ConnectivityMatrix::from_trusted(q))
}

fn local_index(block: &[usize], v: usize) -> usize {
    block
        .binary_search(&v)
        .expect("edge endpoint inside its component")
}

/// Path probabilities among `size` vertices joined by `edges` (all with
/// `p > 0`), returned as a dense `size * size` row-major array whose upper
/// triangle is filled.
fn enumerate_block(size: usize, edges: &[Edge]) -> Vec<f64> {
    let mut base = UnionFind::new(size);
    let mut uncertain = Vec::new();
    for e in edges {
        if e.p >= 1.0 {
            base.union(e.i, e.j);
        } else {
            uncertain.push(*e);
        }
    }
    let base_labels = base.labels();

    let k = uncertain.len();
    let chunk_bits = k.min(CHUNK_BITS);
    let per_chunk = 1u64 << (k - chunk_bits);

    let partials: Vec<Vec<CompensatedSum>> = (0..1u64 << chunk_bits)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = vec![CompensatedSum::default(); size * size];
            let mut uf = base.clone();
            let mut labels = vec![0; size];
            let start = chunk * per_chunk;
            for mask in start..start + per_chunk {
                uf.reset_from(&base);
                let mut weight = 1.0;
                for (bit, e) in uncertain.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        weight *= e.p;
                        uf.union(e.i, e.j);
                    } else {
                        weight *= 1.0 - e.p;
                    }
                }
                for (v, label) in labels.iter_mut().enumerate() {
                    *label = uf.find(v);
                }
                for a in 0..size {
                    for b in (a + 1)..size {
                        if labels[a] == labels[b] {
                            acc[a * size + b].add(weight);
                        }
                    }
                }
            }
            acc
        })
        .collect();

    let mut values = vec![0.0; size * size];
    for a in 0..size {
        for b in (a + 1)..size {
            let idx = a * size + b;
            values[idx] = if base_labels[a] == base_labels[b] {
                1.0
            } else {
                let mut total = CompensatedSum::default();
                for part in &partials {
                    total.merge(&part[idx]);
                }
                total.value().clamp(0.0, 1.0)
            };
        }
    }
    values
}
