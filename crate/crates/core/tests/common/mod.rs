//! Random graph families and brute-force oracles shared by the integration
//! tests. The oracles never call into the crate's engines.

#![allow(dead_code)]

use std::collections::VecDeque;

use probconn::{Matrix, ProbGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect()
}

/// Uniform in the open interval `(lo, hi)`.
pub fn open_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    loop {
        let x = rng.random_range(lo..hi);
        if x > lo {
            return x;
        }
    }
}

/// `n` in `n_min..=n_max`, a random subset of at most `max_m` pairs, each
/// with a probability drawn by `prob`.
pub fn random_graph(
    rng: &mut ChaCha8Rng,
    n_min: usize,
    n_max: usize,
    max_m: usize,
    mut prob: impl FnMut(&mut ChaCha8Rng) -> f64,
) -> ProbGraph {
    let n = rng.random_range(n_min..=n_max);
    let mut pairs = all_pairs(n);
    pairs.shuffle(rng);
    let m = rng.random_range(0..=pairs.len().min(max_m));
    let edges: Vec<_> = pairs[..m].iter().map(|&(i, j)| (i, j, prob(rng))).collect();
    ProbGraph::new(n, edges).unwrap()
}

/// Random spanning tree on `n` vertices plus `extra` further random pairs.
pub fn random_connected(
    rng: &mut ChaCha8Rng,
    n: usize,
    extra: usize,
    mut prob: impl FnMut(&mut ChaCha8Rng) -> f64,
) -> ProbGraph {
    let mut pairs = Vec::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        pairs.push((u, v));
    }
    let mut rest: Vec<_> = all_pairs(n)
        .into_iter()
        .filter(|p| !pairs.contains(p))
        .collect();
    rest.shuffle(rng);
    pairs.extend(rest.into_iter().take(extra));
    let edges: Vec<_> = pairs.into_iter().map(|(i, j)| (i, j, prob(rng))).collect();
    ProbGraph::new(n, edges).unwrap()
}

fn state_weight(g: &ProbGraph, mask: u64) -> f64 {
    g.edges()
        .iter()
        .enumerate()
        .map(|(k, e)| if mask >> k & 1 == 1 { e.p } else { 1.0 - e.p })
        .product()
}

fn reach(n: usize, adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Connectivity matrix by plain summation over all `2^m` global edge states
/// with breadth-first search in each.
pub fn brute_force_q(g: &ProbGraph) -> Matrix {
    let n = g.n();
    let m = g.m();
    assert!(m <= 20, "oracle is exponential");
    let mut q = Matrix::zeros(n);
    for mask in 0..1u64 << m {
        let w = state_weight(g, mask);
        let mut adj = vec![Vec::new(); n];
        for (k, e) in g.edges().iter().enumerate() {
            if mask >> k & 1 == 1 {
                adj[e.i].push(e.j);
                adj[e.j].push(e.i);
            }
        }
        for i in 0..n {
            let seen = reach(n, &adj, i);
            for (j, &s) in seen.iter().enumerate() {
                if s {
                    q[(i, j)] += w;
                }
            }
        }
    }
    for i in 0..n {
        q[(i, i)] = 1.0;
    }
    q
}

/// Probability that at least one walk `i - l - j` through a third vertex is
/// fully up, by enumeration.
pub fn brute_force_two_walk(g: &ProbGraph) -> Matrix {
    let n = g.n();
    let m = g.m();
    let mut out = Matrix::zeros(n);
    for mask in 0..1u64 << m {
        let w = state_weight(g, mask);
        let mut up = vec![vec![false; n]; n];
        for (k, e) in g.edges().iter().enumerate() {
            if mask >> k & 1 == 1 {
                up[e.i][e.j] = true;
                up[e.j][e.i] = true;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && (0..n).any(|l| l != i && l != j && up[i][l] && up[l][j]) {
                    out[(i, j)] += w;
                }
            }
        }
    }
    out
}

/// Vertices whose deletion splits their support component.
pub fn brute_force_articulation(g: &ProbGraph) -> Vec<usize> {
    let n = g.n();
    let live: Vec<_> = g.edges().iter().filter(|e| e.p > 0.0).collect();
    let count = |removed: Option<usize>| {
        let mut adj = vec![Vec::new(); n];
        for e in &live {
            if Some(e.i) != removed && Some(e.j) != removed {
                adj[e.i].push(e.j);
                adj[e.j].push(e.i);
            }
        }
        let mut seen = vec![false; n];
        let mut pieces = 0;
        for v in (0..n).filter(|&v| Some(v) != removed) {
            if !seen[v] {
                pieces += 1;
                for (w, s) in reach(n, &adj, v).into_iter().enumerate() {
                    seen[w] |= s;
                }
            }
        }
        pieces
    };
    let base = count(None);
    (0..n)
        .filter(|&v| {
            let isolated = !live.iter().any(|e| e.i == v || e.j == v);
            !isolated && count(Some(v)) > base
        })
        .collect()
}

pub fn path_graph() -> ProbGraph {
    ProbGraph::new(3, [(0, 1, 0.9), (1, 2, 0.8)]).unwrap()
}

pub fn triangle(p: f64) -> ProbGraph {
    ProbGraph::new(3, [(0, 1, p), (0, 2, p), (1, 2, p)]).unwrap()
}

pub fn bowtie(p: f64) -> ProbGraph {
    ProbGraph::new(
        5,
        [
            (0, 1, p),
            (0, 2, p),
            (1, 2, p),
            (2, 3, p),
            (2, 4, p),
            (3, 4, p),
        ],
    )
    .unwrap()
}
