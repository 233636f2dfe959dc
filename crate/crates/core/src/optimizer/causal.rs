use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    build_trace_matrix, constrained_kmeans, kmeans, refine, solve_sdp, top_eigenpairs, Embedding,
    EigenPairs, IterationRecord, SolverConfig,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::{self, DesignReport, Heterogeneity};
use crate::partition::Clustering;
use crate::rng;

const REFINE_PASSES: usize = 100;

/// One scored partition from the sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Candidate {
    /// Requested `K`; `None` for the two trivial designs.
    pub requested_k: Option<usize>,
    pub k: usize,
    pub objective: f64,
}

#[derive(Debug, Clone)]
pub struct CausalClustering {
    pub clustering: Clustering,
    pub report: DesignReport,
    /// Surrogate value of the chosen clustering.
    pub objective: f64,
    pub candidates: Vec<Candidate>,
    pub sdp_objective: f64,
    pub sdp_dual_bound: f64,
    pub sdp_converged: bool,
    /// Iteration log of the SDP solve when `cfg.record_trace` is set.
    pub sdp_trace: Vec<IterationRecord>,
}

fn embed(eig: &EigenPairs, k: usize, mode: Embedding) -> DMatrix<f64> {
    let cols = eig.vectors.columns(0, k).into_owned();
    match mode {
        Embedding::Eigenvectors => cols,
        Embedding::Scaled => {
            let mut m = cols;
            for (j, &v) in eig.values.iter().take(k).enumerate() {
                m.column_mut(j).scale_mut(v.max(0.0).sqrt());
            }
            m
        }
    }
}

/// k-means on the leading `k` eigenvectors of `x`.
pub fn round_to_clusters(x: &DMatrix<f64>, k: usize, cfg: &SolverConfig) -> Result<Clustering> {
    let n = x.nrows();
    if k > n {
        return Err(Error::KTooLarge { k, n });
    }
    let eig = top_eigenpairs(x.clone(), k);
    let labels = kmeans(&embed(&eig, k, cfg.embedding), k, cfg)?;
    Ok(Clustering::from_assignment(&labels))
}

fn check_range(n: usize, k_min: usize, k_max: usize) -> Result<()> {
    if k_min == 0 || k_min > k_max {
        return Err(Error::InvalidParameter(format!("need 1 <= kmin <= kmax, got {k_min}..{k_max}")));
    }
    if k_max > n {
        return Err(Error::KTooLarge { k: k_max, n });
    }
    Ok(())
}

/// Sweep `K` over `k_min..=k_max`, round the SDP solution for each, and
/// return the partition with the smallest surrogate objective. The
/// singleton and single-cluster partitions always compete. With
/// `cfg.refine`, every candidate is first improved by [`refine`].
pub fn causal_cluster(
    g: &Graph,
    xi: f64,
    k_min: usize,
    k_max: usize,
    het: &Heterogeneity,
    cfg: &SolverConfig,
) -> Result<CausalClustering> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    check_range(n, k_min, k_max)?;
    if n > cfg.max_dense_nodes {
        return Err(Error::TooLarge {
            n,
            limit: cfg.max_dense_nodes,
        });
    }
    cfg.validate()?;
    let c = build_trace_matrix(g, xi, het)?;
    let sol = solve_sdp(&c.matrix, cfg)?;
    let eig = top_eigenpairs(sol.x.clone(), k_max);

    let polish = |cl: Clustering| -> Result<Clustering> {
        if cfg.refine {
            refine(g, &cl, xi, het, REFINE_PASSES)
        } else {
            Ok(cl)
        }
    };
    let score = |cl: &Clustering| metrics::weighted_objective(g, cl, xi, het);
    let round = |k: usize| -> Result<Clustering> {
        let sub = SolverConfig {
            seed: rng::mix(cfg.seed, k as u64),
            ..cfg.clone()
        };
        if cfg.resolve_per_k {
            let again = solve_sdp(&c.matrix, &sub)?;
            round_to_clusters(&again.x, k, &sub)
        } else {
            Ok(Clustering::from_assignment(&kmeans(&embed(&eig, k, cfg.embedding), k, &sub)?))
        }
    };
    let swept: Vec<Option<(usize, Clustering, f64)>> = (k_min..=k_max)
        .into_par_iter()
        .map(|k| match round(k).and_then(polish).and_then(|cl| score(&cl).map(|s| (cl, s))) {
            Ok((cl, s)) => Some((k, cl, s)),
            Err(e) => {
                log::warn!("skipping K = {k}: {e}");
                None
            }
        })
        .collect();

    let (singletons, single) = Clustering::trivial_partitions(n);
    let mut pool: Vec<(Option<usize>, Clustering, f64)> =
        swept.into_iter().flatten().map(|(k, cl, s)| (Some(k), cl, s)).collect();
    for cl in [singletons, single] {
        let cl = polish(cl)?;
        let s = score(&cl)?;
        pool.push((None, cl, s));
    }

    let mut best = 0;
    for (i, cand) in pool.iter().enumerate() {
        if cand.2 < pool[best].2 {
            best = i;
        }
    }
    let candidates = pool
        .iter()
        .map(|(r, cl, s)| Candidate {
            requested_k: *r,
            k: cl.k(),
            objective: *s,
        })
        .collect();
    let (_, clustering, objective) = pool.swap_remove(best);
    let report = metrics::report(g, &clustering, xi, het)?;
    Ok(CausalClustering {
        clustering,
        report,
        objective,
        candidates,
        sdp_objective: sol.objective,
        sdp_dual_bound: sol.dual_bound,
        sdp_converged: sol.converged,
        sdp_trace: sol.trace,
    })
}

/// Equal-size clusters from the leading `k` eigenvectors of the
/// homogeneous trace matrix.
pub fn spectral_equal_size(g: &Graph, xi: f64, k: usize, cfg: &SolverConfig) -> Result<Clustering> {
    let n = g.n();
    if k > n {
        return Err(Error::KTooLarge { k, n });
    }
    if n > cfg.max_dense_nodes {
        return Err(Error::TooLarge {
            n,
            limit: cfg.max_dense_nodes,
        });
    }
    let c = build_trace_matrix(g, xi, &Heterogeneity::default())?;
    let eig = top_eigenpairs(c.matrix, k);
    let labels = constrained_kmeans(&eig.vectors, k, cfg)?;
    Ok(Clustering::from_assignment(&labels))
}
