use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("probability {p} on edge ({i}, {j}) is outside [0, 1]")]
    ProbabilityOutOfRange { i: usize, j: usize, p: f64 },
    #[error("duplicate edge ({i}, {j})")]
    DuplicateEdge { i: usize, j: usize },
    #[error("matrix entries ({i}, {j}) and ({j}, {i}) differ")]
    Asymmetric { i: usize, j: usize },
    #[error("diagonal entry {0} must equal 1")]
    BadDiagonal(usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("edge state has {got} bits, graph has {expected} edges")]
    StateLength { expected: usize, got: usize },
    #[error("edge index {index} out of range for {m} edges")]
    EdgeOutOfRange { index: usize, m: usize },
    #[error(
        "component with {edges} uncertain edges exceeds the exact-engine limit of {max_edges}; \
         use Monte Carlo estimation instead"
    )]
    EdgeLimitExceeded { edges: usize, max_edges: usize },
    #[error("sample count must be at least 1")]
    ZeroSamples,
    #[error("invalid vertex pair ({0}, {1})")]
    InvalidPair(usize, usize),
    #[error("unsupported confidence level {0}; expected 0.90, 0.95 or 0.99")]
    InvalidConfidence(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("entry ({i}, {j}) is nonzero across component blocks")]
    PartitionMismatch { i: usize, j: usize },
    #[error("entry ({i}, {j}) = {value} is not 0 or 1")]
    NotBinary { i: usize, j: usize, value: f64 },
    #[error("0/1 matrix is not a permuted block-of-ones form at ({i}, {j})")]
    CornerStructure { i: usize, j: usize },
    #[error("corner eigenvalues disagree with block sizes (max deviation {0:e})")]
    CornerSpectrum(f64),
    #[error("walk length must be at least 1")]
    ZeroWalkLength,
    #[error("walk matrix entry ({i}, {j}) = {value} is outside [0, 1]")]
    WalkEntry { i: usize, j: usize, value: f64 },
    #[error("tolerance must be a finite non-negative number, got {0}")]
    BadTolerance(f64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
