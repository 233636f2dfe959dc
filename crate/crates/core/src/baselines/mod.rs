//! Reference clusterers for benchmarking the causal design.

mod enet;
mod louvain;

pub use enet::{epsilon_net, epsilon_net_with_order};
pub use louvain::{louvain, modularity};

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::Heterogeneity;
use crate::optimizer::{build_trace_matrix, kmeans, symmetric_eigen, SolverConfig};
use crate::partition::Clustering;
use crate::rng;

/// `max(1, floor(n/3))`.
pub fn default_spectral_k(n: usize) -> usize {
    (n / 3).max(1)
}

/// k-means on the leading `k` eigenvectors of the symmetrized
/// row-normalized adjacency.
pub fn spectral_fixed(g: &Graph, k: Option<usize>, seed: u64) -> Result<Clustering> {
    let n = g.n();
    let k = k.unwrap_or_else(|| default_spectral_k(n));
    if k > n {
        return Err(Error::KTooLarge { k, n });
    }
    let c = build_trace_matrix(g, 0.0, &Heterogeneity::default())?;
    let eig = symmetric_eigen(&c.matrix, k)?;
    let cfg = SolverConfig::default().with_seed(seed);
    Ok(Clustering::from_assignment(&kmeans(&eig.vectors, k, &cfg)?))
}

/// Random permutation cut into `k` blocks whose sizes differ by at most one.
pub fn random_balanced(g: &Graph, k: usize, seed: u64) -> Result<Clustering> {
    let n = g.n();
    if k > n {
        return Err(Error::KTooLarge { k, n });
    }
    if k == 0 {
        return Err(Error::InvalidParameter("K must be at least 1".into()));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng::seeded(seed));
    let mut labels = vec![0; n];
    let (q, r) = (n / k, n % k);
    let mut pos = 0;
    for b in 0..k {
        let size = q + usize::from(b < r);
        for &v in &perm[pos..pos + size] {
            labels[v] = b;
        }
        pos += size;
    }
    Ok(Clustering::from_assignment(&labels))
}
