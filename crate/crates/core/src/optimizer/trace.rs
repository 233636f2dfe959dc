use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::Heterogeneity;
use crate::partition::Clustering;

/// Symmetrized objective matrix `sym(n diag(alpha) V^-1 A - xi w w^T)`.
///
/// For a clustering with membership matrix `M`, `tr(C M M^T)` is the sum of
/// the within-cluster blocks of `C`, and maximizing it minimizes the
/// penalized cut `bias_frac + (xi/n^2) sum_k (sum_{c_k} w_i)^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceMatrix {
    pub matrix: DMatrix<f64>,
    pub xi: f64,
    pub heterogeneity: Heterogeneity,
}

impl TraceMatrix {
    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    /// Constant `kappa` with `weighted_objective = kappa - tr(C M M^T) / n^2`:
    /// `(1/n) sum_i alpha_i` over non-isolated nodes.
    pub fn objective_offset(g: &Graph, het: &Heterogeneity) -> f64 {
        let n = g.n() as f64;
        (0..g.n()).filter(|&i| g.degree(i) > 0).map(|i| het.alpha(i)).sum::<f64>() / n
    }
}

/// Row-normalized adjacency `V^-1 A` with zero rows for isolated nodes.
pub fn row_normalized_adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut l = DMatrix::zeros(n, n);
    for i in 0..n {
        let d = g.degree(i);
        if d == 0 {
            continue;
        }
        let inv = 1.0 / d as f64;
        for j in g.neighbor_ids(i) {
            l[(i, j)] = inv;
        }
    }
    l
}

pub fn build_trace_matrix(g: &Graph, xi: f64, het: &Heterogeneity) -> Result<TraceMatrix> {
    g.require_binary()?;
    het.validate(g.n())?;
    if !(xi >= 0.0 && xi.is_finite()) {
        return Err(Error::InvalidParameter(format!("xi must be finite and >= 0, got {xi}")));
    }
    let n = g.n();
    let nf = n as f64;
    let l = row_normalized_adjacency(g);
    let w = het.penalty_weights(n);
    let mut c = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let a = nf * het.alpha(i) * l[(i, j)];
            let b = nf * het.alpha(j) * l[(j, i)];
            c[(i, j)] = 0.5 * (a + b) - xi * w[i] * w[j];
        }
    }
    Ok(TraceMatrix {
        matrix: c,
        xi,
        heterogeneity: het.clone(),
    })
}

/// `tr(C M_c M_c^T)`: the sum of `C` over within-cluster pairs.
pub fn integral_trace_value(c: &TraceMatrix, clustering: &Clustering) -> Result<f64> {
    if clustering.n() != c.n() {
        return Err(Error::LengthMismatch {
            expected: c.n(),
            found: clustering.n(),
        });
    }
    let mut total = 0.0;
    for members in clustering.members() {
        for &i in &members {
            for &j in &members {
                total += c.matrix[(i, j)];
            }
        }
    }
    Ok(total)
}
