use nalgebra::{DMatrix, DVector, LU};
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::Heterogeneity;
use crate::optimizer::row_normalized_adjacency;

/// Spillover bound used in the calibrated simulation presets.
pub const PRESET_PHI_BAR: f64 = 0.27;
/// Noise variances used in the calibrated simulation presets.
pub const PRESET_NOISE_VARIANCES: [f64; 3] = [0.25, 0.5, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    LinearExogenous,
    Endogenous,
}

/// Linear peer-effects outcome model:
///
/// ```text
/// Y = a + beta_d d + kappa0 (1 - d) s + kappa1 d s + eps + noise
/// ```
///
/// with `s` the treated share of neighbors. The endogenous variant
/// additionally feeds back `gamma` times the neighbor-mean outcome, i.e. it
/// solves `(I - gamma A~) Y = rhs` for the row-normalized adjacency `A~`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeModel {
    pub kind: ModelKind,
    pub intercept: f64,
    pub beta_d: f64,
    pub kappa0: f64,
    pub kappa1: f64,
    pub gamma: f64,
    pub noise_sd: f64,
    pub fixed_effects: Option<Vec<f64>>,
}

impl OutcomeModel {
    pub fn exogenous(intercept: f64, beta_d: f64, kappa0: f64, kappa1: f64) -> Self {
        Self {
            kind: ModelKind::LinearExogenous,
            intercept,
            beta_d,
            kappa0,
            kappa1,
            gamma: 0.0,
            noise_sd: 0.0,
            fixed_effects: None,
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::exogenous(c, 0.0, 0.0, 0.0)
    }

    pub fn endogenous(mut self, gamma: f64) -> Self {
        self.kind = ModelKind::Endogenous;
        self.gamma = gamma;
        self
    }

    pub fn with_noise_sd(mut self, sd: f64) -> Self {
        self.noise_sd = sd;
        self
    }

    pub fn with_fixed_effects(mut self, eps: Vec<f64>) -> Self {
        self.fixed_effects = Some(eps);
        self
    }

    /// Spillover slopes `+-phi_bar` on the share terms and noise variance
    /// `sigma2`; intercept and direct effect are left to the caller.
    pub fn preset(intercept: f64, beta_d: f64, sigma2: f64) -> Self {
        Self::exogenous(intercept, beta_d, -PRESET_PHI_BAR, PRESET_PHI_BAR).with_noise_sd(sigma2.sqrt())
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if !(self.noise_sd >= 0.0 && self.noise_sd.is_finite()) {
            return Err(Error::InvalidParameter(format!("noise_sd must be >= 0, got {}", self.noise_sd)));
        }
        if self.kind == ModelKind::Endogenous && !(self.gamma.abs() < 1.0) {
            return Err(Error::SingularSystem(self.gamma));
        }
        if let Some(e) = &self.fixed_effects {
            if e.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: e.len(),
                });
            }
        }
        Ok(())
    }

    /// Factor the model on `g` once for repeated evaluation.
    pub fn prepare(&self, g: &Graph) -> Result<PreparedModel> {
        g.require_binary()?;
        self.validate(g.n())?;
        let lu = match self.kind {
            ModelKind::Endogenous if self.gamma != 0.0 => {
                let n = g.n();
                let m = DMatrix::identity(n, n) - row_normalized_adjacency(g) * self.gamma;
                Some(m.lu())
            }
            _ => None,
        };
        Ok(PreparedModel {
            model: self.clone(),
            graph: g.clone(),
            lu,
        })
    }
}

/// An [`OutcomeModel`] bound to a graph.
pub struct PreparedModel {
    model: OutcomeModel,
    graph: Graph,
    lu: Option<LU<f64, nalgebra::Dyn, nalgebra::Dyn>>,
}

impl PreparedModel {
    /// Noise-free outcomes under assignment `d`.
    pub fn mean_outcomes(&self, d: &[bool]) -> Result<Vec<f64>> {
        self.outcomes(d, |_| 0.0)
    }

    /// Outcomes with Gaussian noise drawn from `rng`.
    pub fn sample<R: Rng>(&self, d: &[bool], rng: &mut R) -> Result<Vec<f64>> {
        let normal = Normal::new(0.0, self.model.noise_sd).expect("validated sd");
        let sd = self.model.noise_sd;
        self.outcomes(d, |_| if sd > 0.0 { normal.sample(rng) } else { 0.0 })
    }

    fn outcomes(&self, d: &[bool], mut noise: impl FnMut(usize) -> f64) -> Result<Vec<f64>> {
        let g = &self.graph;
        let m = &self.model;
        if d.len() != g.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                found: d.len(),
            });
        }
        let s = treated_share(g, d);
        let rhs: Vec<f64> = (0..g.n())
            .map(|i| {
                let di = if d[i] { 1.0 } else { 0.0 };
                let fe = m.fixed_effects.as_ref().map_or(0.0, |e| e[i]);
                m.intercept + m.beta_d * di + m.kappa0 * (1.0 - di) * s[i] + m.kappa1 * di * s[i] + fe + noise(i)
            })
            .collect();
        match &self.lu {
            None => Ok(rhs),
            Some(lu) => lu
                .solve(&DVector::from_vec(rhs))
                .map(|y| y.iter().copied().collect())
                .ok_or(Error::SingularSystem(m.gamma)),
        }
    }

    /// `mean(mu_i(1) - mu_i(0))` from the all-treated and all-control
    /// evaluations.
    pub fn tau(&self) -> Result<f64> {
        let n = self.graph.n();
        let y1 = self.mean_outcomes(&vec![true; n])?;
        let y0 = self.mean_outcomes(&vec![false; n])?;
        Ok(y1.iter().zip(&y0).map(|(a, b)| a - b).sum::<f64>() / n as f64)
    }
}

/// Fraction of each node's neighbors that are treated; zero when isolated.
pub fn treated_share(g: &Graph, d: &[bool]) -> Vec<f64> {
    (0..g.n())
        .map(|i| match g.degree(i) {
            0 => 0.0,
            deg => g.neighbor_ids(i).filter(|&j| d[j]).count() as f64 / deg as f64,
        })
        .collect()
}

/// One-shot evaluation of [`OutcomeModel`] with noise from `noise_seed`.
pub fn simulate_outcomes(g: &Graph, model: &OutcomeModel, d: &[bool], noise_seed: u64) -> Result<Vec<f64>> {
    model.prepare(g)?.sample(d, &mut crate::rng::seeded(noise_seed))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    /// Treated units gain from untreated neighbors and controls lose from
    /// treated neighbors, pushing the estimate up.
    #[default]
    Positive,
    /// The mirror image, pushing the estimate down.
    Negative,
}

/// Extremal potential outcomes that attain the worst-case bias of a
/// clustering with spillovers bounded by `alpha_i * phi_bar`.
#[derive(Debug, Clone, PartialEq)]
pub struct WorstCaseOutcome {
    pub mu1: Vec<f64>,
    pub mu0: Vec<f64>,
    pub phi_bar: f64,
    pub alpha: Vec<f64>,
    pub sign: Sign,
    neighbors: Vec<Vec<usize>>,
}

pub fn worst_case_mu(g: &Graph, het: &Heterogeneity, mu1: Vec<f64>, mu0: Vec<f64>, sign: Sign) -> Result<WorstCaseOutcome> {
    g.require_binary()?;
    het.validate(g.n())?;
    for v in [&mu1, &mu0] {
        if v.len() != g.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                found: v.len(),
            });
        }
    }
    Ok(WorstCaseOutcome {
        mu1,
        mu0,
        phi_bar: het.phi_bar,
        alpha: (0..g.n()).map(|i| het.alpha(i)).collect(),
        sign,
        neighbors: (0..g.n()).map(|i| g.neighbor_ids(i).collect()).collect(),
    })
}

impl WorstCaseOutcome {
    pub fn n(&self) -> usize {
        self.mu1.len()
    }

    /// `(mu_i(1, d), mu_i(0, d))`.
    pub fn potential(&self, i: usize, d: &[bool]) -> (f64, f64) {
        let nb = &self.neighbors[i];
        if nb.is_empty() {
            return (self.mu1[i], self.mu0[i]);
        }
        let treated = nb.iter().filter(|&&k| d[k]).count() as f64;
        let scale = self.phi_bar * self.alpha[i] / nb.len() as f64;
        let s = match self.sign {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        };
        let untreated = nb.len() as f64 - treated;
        (self.mu1[i] + s * scale * untreated, self.mu0[i] - s * scale * treated)
    }

    /// Realized outcomes under `d`.
    pub fn evaluate(&self, d: &[bool]) -> Vec<f64> {
        (0..self.n())
            .map(|i| {
                let (y1, y0) = self.potential(i, d);
                if d[i] {
                    y1
                } else {
                    y0
                }
            })
            .collect()
    }

    pub fn tau(&self) -> f64 {
        self.mu1.iter().zip(&self.mu0).map(|(a, b)| a - b).sum::<f64>() / self.n() as f64
    }
}
