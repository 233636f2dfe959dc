//! Picking `xi` and a plausible spillover range from pre-treatment data.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Ordinary least squares coefficients. `x` must have more rows than
/// columns and full column rank.
pub fn ols(x: &DMatrix<f64>, y: &[f64]) -> Result<Vec<f64>> {
    let (n, p) = x.shape();
    if y.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: y.len(),
        });
    }
    if n <= p {
        return Err(Error::TooFewRows { rows: n, cols: p });
    }
    let svd = x.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let tol = smax * 1e-10 * n.max(p) as f64;
    if p > 0 && svd.singular_values.min() <= tol {
        return Err(Error::RankDeficient);
    }
    let beta = svd
        .solve(&DVector::from_column_slice(y), tol)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(beta.iter().copied().collect())
}

/// Residual sum of squares over `n - p`.
pub fn residual_variance(x: &DMatrix<f64>, y: &[f64]) -> Result<f64> {
    let beta = ols(x, y)?;
    let fitted = x * DVector::from_vec(beta);
    let rss: f64 = y.iter().zip(fitted.iter()).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(rss / (x.nrows() - x.ncols()) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiInterval {
    pub phi_bar: f64,
    pub lower: f64,
    pub upper: f64,
}

/// `[sigma2 / phi^2, 4 sigma2 / phi^2]` for each candidate spillover bound.
pub fn xi_range(sigma2: f64, phi_set: &[f64]) -> Result<Vec<XiInterval>> {
    phi_set
        .iter()
        .map(|&phi| {
            if !(phi > 0.0) {
                return Err(Error::NonpositivePhi(phi));
            }
            let lower = sigma2 / (phi * phi);
            Ok(XiInterval {
                phi_bar: phi,
                lower,
                upper: 4.0 * lower,
            })
        })
        .collect()
}

/// `psi_bar / (lambda phi_bar^2)`.
pub fn xi_from_psi_phi(psi_bar: f64, phi_bar: f64, lambda: f64) -> Result<f64> {
    if !(phi_bar > 0.0) {
        return Err(Error::NonpositivePhi(phi_bar));
    }
    if !(psi_bar > 0.0 && lambda > 0.0) {
        return Err(Error::InvalidParameter("psi_bar and lambda must be positive".into()));
    }
    Ok(psi_bar / (lambda * phi_bar * phi_bar))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiRange {
    pub gamma_hat: f64,
    pub lower: f64,
    pub upper: f64,
    /// Set when the peer coefficient is exactly zero.
    pub degenerate: bool,
}

/// Regress baseline outcomes on `[x, neighbor-mean outcome]` over nodes
/// with at least one neighbor and map the peer coefficient `g` to
/// `[g^2, beta_bar |g|]`.
pub fn phi_range_from_endogenous(g: &Graph, y: &[f64], x: &DMatrix<f64>, beta_bar: f64) -> Result<PhiRange> {
    g.require_binary()?;
    let n = g.n();
    for len in [y.len(), x.nrows()] {
        if len != n {
            return Err(Error::LengthMismatch { expected: n, found: len });
        }
    }
    if !(beta_bar > 0.0) {
        return Err(Error::InvalidParameter(format!("beta_bar must be positive, got {beta_bar}")));
    }
    let rows: Vec<usize> = (0..n).filter(|&i| g.degree(i) > 0).collect();
    if rows.is_empty() {
        return Err(Error::NoNeighbors);
    }
    let p = x.ncols();
    let mut design = DMatrix::zeros(rows.len(), p + 1);
    let mut target = Vec::with_capacity(rows.len());
    for (r, &i) in rows.iter().enumerate() {
        for c in 0..p {
            design[(r, c)] = x[(i, c)];
        }
        design[(r, p)] = g.neighbor_ids(i).map(|j| y[j]).sum::<f64>() / g.degree(i) as f64;
        target.push(y[i]);
    }
    let gamma_hat = ols(&design, &target)?[p];
    Ok(PhiRange {
        gamma_hat,
        lower: gamma_hat * gamma_hat,
        upper: beta_bar * gamma_hat.abs(),
        degenerate: gamma_hat == 0.0,
    })
}
