//! Pick xi from pre-treatment data: residual variance of a baseline
//! regression and a plausible range for the spillover bound.

use causal_cluster::graph::erdos_renyi;
use causal_cluster::optimizer::row_normalized_adjacency;
use causal_cluster::tuning::{phi_range_from_endogenous, residual_variance, xi_from_psi_phi, xi_range};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> causal_cluster::Result<()> {
    let g = erdos_renyi(400, 0.02, 8)?;
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cov: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
    let noise: Vec<f64> = (0..n).map(|_| rng.random_range(-0.5..0.5)).collect();

    // baseline outcomes with a peer coefficient of 0.25
    let rhs = DVector::from_iterator(n, (0..n).map(|i| 0.2 + 0.6 * cov[i] + noise[i]));
    let a = row_normalized_adjacency(&g);
    let y: Vec<f64> = (DMatrix::identity(n, n) - a * 0.25)
        .lu()
        .solve(&rhs)
        .expect("diagonally dominant")
        .iter()
        .copied()
        .collect();
    let mut x = DMatrix::from_element(n, 2, 1.0);
    for i in 0..n {
        x[(i, 1)] = cov[i];
    }

    let sigma2 = residual_variance(&x, &y)?;
    let range = phi_range_from_endogenous(&g, &y, &x, 1.0)?;
    println!("sigma2 = {sigma2:.4}, gamma_hat = {:.3}, phi_bar in [{:.4}, {:.4}]", range.gamma_hat, range.lower, range.upper);
    for iv in xi_range(sigma2, &[range.lower, range.upper])? {
        println!("phi_bar {:.4}: xi in [{:.2}, {:.2}]", iv.phi_bar, iv.lower, iv.upper);
    }
    println!("psi_bar=0.24, phi_bar=0.27: xi = {:.2}", xi_from_psi_phi(0.24, 0.27, 1.0)?);
    Ok(())
}
