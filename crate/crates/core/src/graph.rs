//! Probabilistic graphs: independent undirected links, each present with its
//! own probability.

use serde::Serialize;

use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// A possible link between `i < j`, present with probability `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub p: f64,
}

/// Vertex count plus the list of possible edges, kept sorted by `(i, j)`.
///
/// The position of an edge in [`ProbGraph::edges`] is its canonical index.
/// Zero-probability edges are kept: they are possible links that are
/// currently dead and never connect anything.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl ProbGraph {
    /// Validates and canonicalizes an edge list. Endpoints may be given in
    /// either order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let mut list = Vec::new();
        for (a, b, p) in edges {
            for index in [a, b] {
                if index >= n {
                    return Err(Error::VertexOutOfRange { index, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::ProbabilityOutOfRange { i, j, p });
            }
            list.push(Edge { i, j, p });
        }
        list.sort_by_key(|e| (e.i, e.j));
        if let Some(w) = list
            .windows(2)
            .find(|w| (w[0].i, w[0].j) == (w[1].i, w[1].j))
        {
            return Err(Error::DuplicateEdge {
                i: w[0].i,
                j: w[0].j,
            });
        }
        Ok(ProbGraph { n, edges: list })
    }

    /// Builds a graph from a full probabilistic adjacency matrix. The matrix
    /// must be symmetric with a unit diagonal; zero off-diagonal entries are
    /// treated as absent links.
    pub fn from_adjacency_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = Matrix::from_rows(rows)?;
        let n = m.dim();
        let mut edges = Vec::new();
        for i in 0..n {
            if m[(i, i)] != 1.0 {
                return Err(Error::BadDiagonal(i));
            }
            for j in (i + 1)..n {
                if m[(i, j)] != m[(j, i)] {
                    return Err(Error::Asymmetric { i, j });
                }
                if m[(i, j)] != 0.0 {
                    edges.push((i, j, m[(i, j)]));
                }
            }
        }
        Self::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges.binary_search_by_key(&key, |e| (e.i, e.j)).ok()
    }

    /// Copy of the graph with edge `index` set to probability `p`.
    pub fn with_probability(&self, index: usize, p: f64) -> Result<Self> {
        if index >= self.edges.len() {
            return Err(Error::EdgeOutOfRange {
                index,
                m: self.edges.len(),
            });
        }
        if !(0.0..=1.0).contains(&p) {
            let e = self.edges[index];
            return Err(Error::ProbabilityOutOfRange { i: e.i, j: e.j, p });
        }
        let mut g = self.clone();
        g.edges[index].p = p;
        Ok(g)
    }

    /// Copy of the graph with one more possible edge.
    pub fn with_edge(&self, i: usize, j: usize, p: f64) -> Result<Self> {
        let edges = self
            .edges
            .iter()
            .map(|e| (e.i, e.j, e.p))
            .chain([(i, j, p)]);
        Self::new(self.n, edges)
    }

    /// Vertex pairs `i < j` that have no entry in the edge list.
    pub fn absent_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut it = self.edges.iter().peekable();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if it.peek().is_some_and(|e| (e.i, e.j) == (i, j)) {
                    it.next();
                } else {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let mut m = Matrix::identity(self.n);
        for e in &self.edges {
            m.set_sym(e.i, e.j, e.p);
        }
        AdjacencyMatrix(m)
    }

    /// Reachability classes of the support graph (edges with `p > 0`).
    pub fn support_components(&self) -> ComponentPartition {
        let mut uf = UnionFind::new(self.n);
        for e in self.edges.iter().filter(|e| e.p > 0.0) {
            uf.union(e.i, e.j);
        }
        ComponentPartition::from_labels(&uf.labels())
    }

    /// Neighbour lists of the support graph.
    pub fn support_neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in self.edges.iter().filter(|e| e.p > 0.0) {
            adj[e.i].push(e.j);
            adj[e.j].push(e.i);
        }
        adj
    }

    /// Cut vertices of the support graph, ascending.
    pub fn support_articulation_points(&self) -> Vec<usize> {
        articulation_points(&self.support_neighbors())
    }
}

/// Probabilistic adjacency matrix: symmetric, unit diagonal, link
/// probabilities off the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix(Matrix);

impl AdjacencyMatrix {
    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }
}

/// Disjoint vertex blocks covering `0..n`. Each block is sorted and blocks
/// are ordered by their smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentPartition {
    blocks: Vec<Vec<usize>>,
}

impl ComponentPartition {
    /// Groups vertices by an arbitrary per-vertex label.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut first_seen: Vec<(usize, usize)> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (v, &label) in labels.iter().enumerate() {
            match first_seen.iter().find(|(l, _)| *l == label) {
                Some(&(_, b)) => blocks[b].push(v),
                None => {
                    first_seen.push((label, blocks.len()));
                    blocks.push(vec![v]);
                }
            }
        }
        ComponentPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Block index of every vertex.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.vertex_count()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in block {
                labels[v] = b;
            }
        }
        labels
    }
}

/// Tarjan's low-link articulation points on an undirected adjacency list.
pub fn articulation_points(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbour position)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut pos)) = stack.last_mut() {
            if *pos < adj[v].len() {
                let w = adj[v][*pos];
                *pos += 1;
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}
