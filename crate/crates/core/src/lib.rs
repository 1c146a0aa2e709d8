//! Quality of connectivity for networks whose links fail independently.
//!
//! A [`ProbGraph`] lists each possible link with its probability of being
//! up. From it the crate computes the connectivity matrix `Q`, whose entry
//! `(i, j)` is the probability that some path joins `i` and `j`, either
//! exactly ([`exact_connectivity`]) or by sampling ([`mc_connectivity`]).
//! `Q` is symmetric positive semi-definite, and its largest eigenvalue, in
//! `[1, n]`, is a scalar measure of how well the whole network is connected
//! ([`spectral_report`]).
//!
//! ```
//! use probconn::{exact_connectivity, spectral_report, ProbGraph, DEFAULT_MAX_EDGES};
//!
//! let g = ProbGraph::new(3, [(0, 1, 0.5), (0, 2, 0.5), (1, 2, 0.5)]).unwrap();
//! let q = exact_connectivity(&g, DEFAULT_MAX_EDGES).unwrap();
//! assert!((q.get(0, 1) - 0.625).abs() < 1e-15);
//!
//! let s = spectral_report(&q, &g.support_components(), 1e-9).unwrap();
//! assert!((s.lambda_max - 2.25).abs() < 1e-12);
//! ```

pub mod bounds;
pub mod connectivity;
pub mod dsu;
pub mod error;
pub mod exact;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod mc;
pub mod report;
pub mod sensitivity;
pub mod spectral;
pub mod walk;

pub use bounds::{
    compute_bounds, find_critical_vertices, find_critical_vertices_in,
    find_critical_vertices_sampled, BoundsReport, CriticalFinding, DEFAULT_BOUNDS_TOLERANCE,
    DEFAULT_CRITICAL_TOLERANCE,
};
pub use connectivity::ConnectivityMatrix;
pub use error::{Error, Result};
pub use exact::{
    conditional_connectivity, exact_connectivity, state_probability, EdgeState, DEFAULT_MAX_EDGES,
};
pub use graph::{AdjacencyMatrix, ComponentPartition, Edge, ProbGraph};
pub use io::{parse_graph_file, write_graph_file};
pub use matrix::Matrix;
pub use mc::{ci_halfwidth, mc_connectivity, McEstimate, DEFAULT_SEED};
pub use report::ResultDocument;
pub use sensitivity::{affine_slice, lambda_derivative, rank_improvements, AffineSlice};
pub use spectral::{
    compare_quality, spectral_report, sym_eig, verify_corner_structure, SpectralReport,
    DEFAULT_SPECTRAL_TOLERANCE,
};
pub use walk::{otimes, walk_probabilities, WalkMatrix};
