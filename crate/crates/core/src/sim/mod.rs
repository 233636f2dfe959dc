//! Cluster-randomized experiments: treatment draws, outcome models, the
//! difference-in-means estimator, exact design moments by enumeration, and
//! Monte Carlo error estimates.

mod exact;
mod outcomes;

pub use exact::{dependency_clusters, exact_design_moments, exact_unit_covariance, DesignMoments, MAX_ENUMERATED_CLUSTERS};
pub use outcomes::{
    simulate_outcomes, treated_share, worst_case_mu, ModelKind, OutcomeModel, PreparedModel, Sign, WorstCaseOutcome,
    PRESET_NOISE_VARIANCES, PRESET_PHI_BAR,
};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Clustering;
use crate::rng;

/// Each cluster is treated independently with probability 1/2.
pub fn assign_treatments(c: &Clustering, seed: u64) -> Vec<bool> {
    draw_treatments(c, &mut rng::seeded(seed))
}

pub fn draw_treatments<R: Rng>(c: &Clustering, rng: &mut R) -> Vec<bool> {
    let arms: Vec<bool> = (0..c.k()).map(|_| rng.random_bool(0.5)).collect();
    c.assignment().iter().map(|&k| arms[k]).collect()
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

/// `(2/n) sum_i (2 D_i - 1) Y_i`.
pub fn estimate(y: &[f64], d: &[bool]) -> Result<f64> {
    check_len(y.len(), d.len())?;
    let n = y.len() as f64;
    Ok(2.0 / n * y.iter().zip(d).map(|(&v, &t)| if t { v } else { -v }).sum::<f64>())
}

/// [`estimate`] applied to `Y - mu_bar`.
pub fn estimate_adjusted(y: &[f64], d: &[bool], mu_bar: &[f64]) -> Result<f64> {
    check_len(y.len(), mu_bar.len())?;
    let centered: Vec<f64> = y.iter().zip(mu_bar).map(|(a, b)| a - b).collect();
    estimate(&centered, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Replication {
    pub replication: usize,
    pub tau_hat: f64,
    pub tau: f64,
    pub sq_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarlo {
    pub mse: f64,
    /// Standard error of `mse`.
    pub se: f64,
    pub replications: Vec<Replication>,
}

/// Mean squared error of the estimator over `reps` independent draws of
/// treatment and noise. Replication `r` draws from stream `r` of `seed`.
pub fn monte_carlo_mse(
    g: &Graph,
    c: &Clustering,
    model: &OutcomeModel,
    true_tau: f64,
    reps: usize,
    seed: u64,
) -> Result<MonteCarlo> {
    if reps < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 replications, got {reps}")));
    }
    check_len(g.n(), c.n())?;
    let prepared = model.prepare(g)?;
    let replications = (0..reps)
        .into_par_iter()
        .map(|r| {
            let mut rng = rng::stream(seed, r as u64);
            let d = draw_treatments(c, &mut rng);
            let y = prepared.sample(&d, &mut rng)?;
            let tau_hat = estimate(&y, &d)?;
            Ok(Replication {
                replication: r,
                tau_hat,
                tau: true_tau,
                sq_error: (tau_hat - true_tau).powi(2),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let r = reps as f64;
    let mse = replications.iter().map(|x| x.sq_error).sum::<f64>() / r;
    let var = replications.iter().map(|x| (x.sq_error - mse).powi(2)).sum::<f64>() / (r - 1.0);
    Ok(MonteCarlo {
        mse,
        se: (var / r).sqrt(),
        replications,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn halves() -> Clustering {
        Clustering::from_labels(&[0, 0, 1, 1], 4).unwrap()
    }

    #[test]
    fn treatments_follow_clusters() {
        for seed in 0..50 {
            let d = assign_treatments(&halves(), seed);
            assert_eq!(d[0], d[1]);
            assert_eq!(d[2], d[3]);
        }
    }

    #[test]
    fn treatment_frequencies_and_independence() {
        let c = halves();
        let reps = 10_000;
        let (mut a, mut b, mut ab) = (0.0, 0.0, 0.0);
        for seed in 0..reps {
            let d = assign_treatments(&c, seed);
            let (x, y) = (f64::from(u8::from(d[0])), f64::from(u8::from(d[2])));
            a += x;
            b += y;
            ab += x * y;
        }
        let r = reps as f64;
        let se = (0.25 / r).sqrt();
        assert!((a / r - 0.5).abs() < 3.0 * se);
        assert!((b / r - 0.5).abs() < 3.0 * se);
        let corr = (ab / r - a / r * b / r) / 0.25;
        assert!(corr.abs() < 3.0 / r.sqrt());
    }

    #[test]
    fn estimator_arithmetic() {
        assert_eq!(estimate(&[1.0, 1.0, 0.0, 0.0], &[true, true, false, false]).unwrap(), 1.0);
        assert!((estimate(&[0.7; 5], &[true; 5]).unwrap() - 1.4).abs() < 1e-15);
        assert_eq!(estimate(&[0.0; 3], &[true, false, true]).unwrap(), 0.0);
        assert!(matches!(estimate(&[1.0], &[true, false]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn adjusted_estimator() {
        let y = [1.0, 3.0, -2.0, 0.5];
        let d = [true, false, false, true];
        assert_eq!(estimate_adjusted(&y, &d, &y).unwrap(), 0.0);
        assert_eq!(estimate_adjusted(&y, &d, &[0.0; 4]).unwrap(), estimate(&y, &d).unwrap());
        let shifted: Vec<f64> = y.iter().map(|v| v + 2.5).collect();
        let a = estimate_adjusted(&y, &d, &[0.1; 4]).unwrap();
        let b = estimate_adjusted(&shifted, &d, &[2.6; 4]).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn constant_outcomes_monte_carlo() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        let mc = monte_carlo_mse(&g, &halves(), &OutcomeModel::constant(1.0), 0.0, 10_000, 5).unwrap();
        assert!((mc.mse - 2.0).abs() < 3.0 * mc.se, "{} +- {}", mc.mse, mc.se);
        let zero = monte_carlo_mse(&g, &halves(), &OutcomeModel::constant(0.0), 0.0, 100, 5).unwrap();
        assert_eq!(zero.mse, 0.0);
        let again = monte_carlo_mse(&g, &halves(), &OutcomeModel::constant(1.0), 0.0, 10_000, 5).unwrap();
        assert_eq!(again, mc);
    }
}
