//! ADMM for `max tr(C X)  s.t.  diag(X) = 1, X PSD`.
//!
//! The iterate is split into `X` (unit diagonal) and `Z` (PSD cone) with a
//! scaled dual `U`:
//!
//! ```text
//! X <- Z - U + C / rho, then diag(X) <- 1
//! Z <- proj_psd(X + U)
//! U <- U + X - Z
//! ```
//!
//! `C` is divided by its largest entry before iterating. The returned
//! matrix is the last `Z` rescaled to unit diagonal, so it is feasible
//! whether or not the residuals reached tolerance.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::SolverConfig;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub objective: f64,
}

#[derive(Debug, Clone)]
pub struct SdpSolution {
    /// Feasible PSD matrix with unit diagonal.
    pub x: DMatrix<f64>,
    /// `tr(C x)` in the caller's scale.
    pub objective: f64,
    /// Upper bound on the optimum certified from the dual iterate.
    pub dual_bound: f64,
    pub iterations: usize,
    pub converged: bool,
    pub primal_residual: f64,
    pub dual_residual: f64,
    /// Filled when `SolverConfig::record_trace` is set.
    pub trace: Vec<IterationRecord>,
}

impl SdpSolution {
    /// Error out unless the residuals reached tolerance.
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::MaxIterExceeded {
                iterations: self.iterations,
                primal: self.primal_residual,
                dual: self.dual_residual,
            })
        }
    }
}

/// Eigenvalue clipping onto the PSD cone.
pub(crate) fn project_psd(m: DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let eig = SymmetricEigen::new(m);
    let keep: Vec<usize> = (0..n).filter(|&j| eig.eigenvalues[j] > 0.0).collect();
    let mut w = DMatrix::zeros(n, keep.len());
    for (c, &j) in keep.iter().enumerate() {
        let s = eig.eigenvalues[j].sqrt();
        for r in 0..n {
            w[(r, c)] = eig.eigenvectors[(r, j)] * s;
        }
    }
    let z = &w * w.transpose();
    (&z + z.transpose()) * 0.5
}

fn trace_product(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

/// `sum(nu) + n * max(0, lambda_max(C - Diag(nu)))` bounds `tr(C X)` over
/// all unit-diagonal PSD `X`.
pub fn dual_upper_bound(c: &DMatrix<f64>, nu: &[f64]) -> f64 {
    let n = c.nrows();
    let mut s = c.clone();
    for i in 0..n {
        s[(i, i)] -= nu[i];
    }
    let lmax = SymmetricEigen::new(s)
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    nu.iter().sum::<f64>() + n as f64 * lmax.max(0.0)
}

pub fn solve_sdp(c: &DMatrix<f64>, cfg: &SolverConfig) -> Result<SdpSolution> {
    let n = c.nrows();
    if c.ncols() != n {
        return Err(Error::InvalidParameter(format!("matrix is {}x{}", n, c.ncols())));
    }
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > cfg.max_dense_nodes {
        return Err(Error::TooLarge {
            n,
            limit: cfg.max_dense_nodes,
        });
    }
    cfg.validate()?;
    let asym = super::eigen::asymmetry(c);
    if asym > 1e-12 * c.amax().max(1.0) {
        return Err(Error::NonSymmetric(asym));
    }

    let scale = if c.amax() > 0.0 { c.amax() } else { 1.0 };
    let cs = c / scale;
    let nf = n as f64;

    let mut rho = cfg.admm_rho;
    let mut z = DMatrix::<f64>::identity(n, n);
    let mut u = DMatrix::<f64>::zeros(n, n);
    let mut trace = Vec::new();
    let mut converged = false;
    let mut primal = f64::INFINITY;
    let mut dual = f64::INFINITY;
    let mut iterations = 0;

    for it in 1..=cfg.max_iter {
        iterations = it;
        let mut x = &z - &u + &cs / rho;
        for i in 0..n {
            x[(i, i)] = 1.0;
        }
        let z_new = project_psd(&x + &u);
        primal = (&x - &z_new).norm() / nf;
        dual = rho * (&z_new - &z).norm() / nf;
        u += &x - &z_new;
        z = z_new;

        if cfg.record_trace {
            trace.push(IterationRecord {
                iteration: it,
                primal_residual: primal,
                dual_residual: dual,
                objective: scale * trace_product(&cs, &x),
            });
        }
        if primal <= cfg.tol_primal && dual <= cfg.tol_dual {
            converged = true;
            break;
        }
        if cfg.adaptive_rho && it % 10 == 0 {
            if primal > 10.0 * dual {
                rho *= 2.0;
                u /= 2.0;
            } else if dual > 10.0 * primal {
                rho /= 2.0;
                u *= 2.0;
            }
        }
    }

    // Rescale to unit diagonal; congruence keeps the matrix PSD.
    let d: Vec<f64> = (0..n).map(|i| z[(i, i)]).collect();
    let mut x = z;
    for i in 0..n {
        for j in 0..n {
            x[(i, j)] = if d[i] > 1e-300 && d[j] > 1e-300 {
                x[(i, j)] / (d[i] * d[j]).sqrt()
            } else if i == j {
                1.0
            } else {
                0.0
            };
        }
        x[(i, i)] = 1.0;
    }
    let objective = trace_product(c, &x);

    // Multiplier of the diagonal constraint: nu = diag(C - rho U) in the
    // caller's scale.
    let nu: Vec<f64> = (0..n).map(|i| scale * (cs[(i, i)] - rho * u[(i, i)])).collect();
    let dual_bound = dual_upper_bound(c, &nu).max(objective);

    if !converged {
        log::warn!(
            "SDP stopped after {iterations} iterations (primal {primal:.2e}, dual {dual:.2e})"
        );
    }
    Ok(SdpSolution {
        x,
        objective,
        dual_bound,
        iterations,
        converged,
        primal_residual: primal,
        dual_residual: dual,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_matrix(xi: f64) -> DMatrix<f64> {
        // n = 2, one edge: 2 * V^-1 A - xi 11^T
        DMatrix::from_row_slice(2, 2, &[-xi, 2.0 - xi, 2.0 - xi, -xi])
    }

    fn tight() -> SolverConfig {
        SolverConfig {
            tol_primal: 1e-10,
            tol_dual: 1e-10,
            max_iter: 20_000,
            ..SolverConfig::default()
        }
    }

    #[test]
    fn single_edge_closed_forms() {
        let s = solve_sdp(&edge_matrix(1.0), &tight()).unwrap();
        assert!((s.x[(0, 1)] - 1.0).abs() < 1e-6);
        assert!(s.objective.abs() < 1e-6);
        let s = solve_sdp(&edge_matrix(3.0), &tight()).unwrap();
        assert!((s.x[(0, 1)] + 1.0).abs() < 1e-6);
        assert!((s.objective + 4.0).abs() < 1e-6);
        assert!(s.dual_bound >= s.objective);
        assert!(s.dual_bound - s.objective < 1e-5);
    }

    #[test]
    fn output_is_feasible_even_when_stopped_early() {
        let c = DMatrix::from_fn(6, 6, |i, j| ((i * 7 + j * 3) % 5) as f64 + ((j * 7 + i * 3) % 5) as f64 - 4.0);
        let cfg = SolverConfig {
            max_iter: 3,
            ..SolverConfig::default()
        };
        let s = solve_sdp(&c, &cfg).unwrap();
        assert!(!s.converged);
        for i in 0..6 {
            assert_eq!(s.x[(i, i)], 1.0);
        }
        let min = SymmetricEigen::new(s.x.clone()).eigenvalues.min();
        assert!(min >= -1e-9);
        assert!(matches!(s.require_converged(), Err(Error::MaxIterExceeded { .. })));
    }

    #[test]
    fn trace_log_records_iterations() {
        let cfg = SolverConfig {
            record_trace: true,
            ..SolverConfig::default()
        };
        let s = solve_sdp(&edge_matrix(1.0), &cfg).unwrap();
        assert_eq!(s.trace.len(), s.iterations);
        assert_eq!(s.trace[0].iteration, 1);
    }

    #[test]
    fn rejects_asymmetric() {
        let c = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(solve_sdp(&c, &SolverConfig::default()), Err(Error::NonSymmetric(_))));
    }
}
