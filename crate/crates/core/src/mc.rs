//! Monte Carlo estimate of the connectivity matrix.
//!
//! Sample `s` draws its links from a ChaCha8 stream keyed by `(seed, s)`, so
//! the estimate does not depend on how samples are spread over threads.
//! Pair counts are integers and their sum is order-independent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::connectivity::ConnectivityMatrix;
use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::graph::ProbGraph;
use crate::matrix::Matrix;

pub const DEFAULT_SEED: u64 = 0x5eed;

const SAMPLES_PER_TASK: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub q_hat: ConnectivityMatrix,
    pub samples: u64,
    /// Plug-in binomial standard error `sqrt(q(1-q)/N)` per entry.
    pub std_err: Matrix,
    pub seed: u64,
}

pub fn mc_connectivity(g: &ProbGraph, samples: u64, seed: u64) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::ZeroSamples);
    }
    let n = g.n();
    let edges: Vec<_> = g.edges().iter().map(|e| (e.i, e.j, e.p)).collect();
    let tasks = samples.div_ceil(SAMPLES_PER_TASK);

    let counts = (0..tasks)
        .into_par_iter()
        .map(|task| {
            let mut counts = vec![0u64; n * n];
            let mut uf = UnionFind::new(n);
            let fresh = UnionFind::new(n);
            let mut labels = vec![0; n];
            let start = task * SAMPLES_PER_TASK;
            let end = (start + SAMPLES_PER_TASK).min(samples);
            for sample in start..end {
                let mut rng = sample_rng(seed, sample);
                uf.reset_from(&fresh);
                for &(i, j, p) in &edges {
                    if rng.random::<f64>() < p {
                        uf.union(i, j);
                    }
                }
                for (v, label) in labels.iter_mut().enumerate() {
                    *label = uf.find(v);
                }
                for a in 0..n {
                    for b in (a + 1)..n {
                        if labels[a] == labels[b] {
                            counts[a * n + b] += 1;
                        }
                    }
                }
            }
            counts
        })
        .reduce(
            || vec![0u64; n * n],
            |mut acc, part| {
                acc.iter_mut().zip(part).for_each(|(a, b)| *a += b);
                acc
            },
        );

    let total = samples as f64;
    let mut q = Matrix::identity(n);
    let mut std_err = Matrix::zeros(n);
    for a in 0..n {
        for b in (a + 1)..n {
            let mean = counts[a * n + b] as f64 / total;
            q.set_sym(a, b, mean);
            std_err.set_sym(a, b, (mean * (1.0 - mean) / total).sqrt());
        }
    }
    Ok(McEstimate {
        q_hat: ConnectivityMatrix::from_trusted(q),
        samples,
        std_err,
        seed,
    })
}

/// Independent generator for one sample.
pub fn sample_rng(seed: u64, sample: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Confidence {
    P90,
    P95,
    P99,
}

impl Confidence {
    pub fn level(self) -> f64 {
        match self {
            Confidence::P90 => 0.90,
            Confidence::P95 => 0.95,
            Confidence::P99 => 0.99,
        }
    }

    /// Two-sided standard normal quantile.
    pub fn z(self) -> f64 {
        match self {
            Confidence::P90 => 1.6448536269514722,
            Confidence::P95 => 1.959963984540054,
            Confidence::P99 => 2.5758293035489004,
        }
    }
}

impl TryFrom<f64> for Confidence {
    type Error = Error;

    fn try_from(level: f64) -> Result<Self> {
        [Confidence::P90, Confidence::P95, Confidence::P99]
            .into_iter()
            .find(|c| (c.level() - level).abs() < 1e-12)
            .ok_or(Error::InvalidConfidence(level))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfWidths {
    /// Normal approximation, `z * std_err`.
    pub normal: f64,
    /// Distribution-free Hoeffding bound, `sqrt(ln(2/(1-c)) / 2N)`.
    pub hoeffding: f64,
}

pub fn ci_halfwidth(est: &McEstimate, i: usize, j: usize, confidence: f64) -> Result<HalfWidths> {
    let n = est.q_hat.dim();
    if i == j || i >= n || j >= n {
        return Err(Error::InvalidPair(i, j));
    }
    let c = Confidence::try_from(confidence)?;
    Ok(HalfWidths {
        normal: c.z() * est.std_err[(i, j)],
        hoeffding: ((2.0 / (1.0 - c.level())).ln() / (2.0 * est.samples as f64)).sqrt(),
    })
}
