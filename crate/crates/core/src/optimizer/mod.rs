//! Near-optimal cluster designs.
//!
//! [`causal_cluster`] relaxes the penalized min-cut to a unit-diagonal
//! semidefinite program, rounds the solution with k-means on its leading
//! eigenvectors for every `K` in a range, and keeps the best candidate.
//! [`spectral_equal_size`] skips the SDP and partitions the leading
//! eigenvectors of the trace matrix into equal-size clusters.

mod causal;
mod eigen;
mod kmeans;
mod refine;
mod sdp;
mod trace;

pub use causal::{causal_cluster, round_to_clusters, spectral_equal_size, Candidate, CausalClustering};
pub use eigen::{symmetric_eigen, EigenPairs};
pub use kmeans::{constrained_kmeans, kmeans};
pub use refine::refine;
pub use sdp::{dual_upper_bound, solve_sdp, IterationRecord, SdpSolution};
pub use trace::{build_trace_matrix, integral_trace_value, row_normalized_adjacency, TraceMatrix};

pub(crate) use eigen::top_eigenpairs;

use crate::error::{Error, Result};

/// Coordinates handed to k-means when rounding an SDP solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Embedding {
    /// Unit eigenvectors.
    Eigenvectors,
    /// Eigenvectors scaled by the square root of their eigenvalue, i.e. rows
    /// of a factor `V` with `X ~ V V^T`.
    #[default]
    Scaled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub admm_rho: f64,
    pub tol_primal: f64,
    pub tol_dual: f64,
    pub max_iter: usize,
    pub kmeans_restarts: usize,
    pub kmeans_max_iter: usize,
    pub seed: u64,
    /// Rebalance `rho` when one residual dominates the other.
    pub adaptive_rho: bool,
    /// Keep a per-iteration log in [`SdpSolution::trace`].
    pub record_trace: bool,
    pub max_dense_nodes: usize,
    /// Solve the SDP again for every `K` in the sweep.
    pub resolve_per_k: bool,
    pub embedding: Embedding,
    /// Polish every candidate with improving single-node moves.
    pub refine: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            admm_rho: 1.0,
            tol_primal: 1e-6,
            tol_dual: 1e-6,
            max_iter: 5000,
            kmeans_restarts: 10,
            kmeans_max_iter: 300,
            seed: 0,
            adaptive_rho: true,
            record_trace: false,
            max_dense_nodes: 4000,
            resolve_per_k: false,
            embedding: Embedding::Scaled,
            refine: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.admm_rho > 0.0
            && self.admm_rho.is_finite()
            && self.tol_primal > 0.0
            && self.tol_dual > 0.0
            && self.max_iter > 0
            && self.kmeans_restarts > 0
            && self.kmeans_max_iter > 0
            && self.max_dense_nodes > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter("solver settings must be positive".into()))
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}
