//! Worst-case bias, variance, and the objectives that trade them off.
//!
//! For a binary graph and a clustering `c`, the cross fraction of node `i`
//! is the share of its neighbors assigned to a different cluster (zero for
//! isolated nodes). Everything here is a closed-form function of those
//! fractions, the cluster sizes, and the user's [`Heterogeneity`] bounds:
//!
//! * `bias_frac = (1/n) sum_i alpha_i * cross_i`, and the worst-case bias is
//!   `phi_bar * bias_frac`;
//! * `variance_proxy = (1/n^2) sum_k n_k^2`;
//! * `objective_sq = xi * variance_proxy + bias_frac^2`;
//! * `objective_abs = xi * variance_proxy + bias_frac`, the penalized
//!   min-cut surrogate that the optimizer minimizes;
//! * `xi_threshold = (1 - bias_frac^2) / variance_proxy`: a cluster design
//!   beats independent (Bernoulli) assignment when `xi <= xi_threshold`.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Clustering;

/// Prior bounds on how outcomes and spillovers vary across units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Heterogeneity {
    /// Per-unit spillover scale in `(0, 1]` with maximum 1; `None` = all 1.
    pub alpha: Option<Vec<f64>>,
    /// Per-unit outcome scale; `None` = all `sqrt(psi_bar)`.
    pub psi: Option<Vec<f64>>,
    /// Upper bound on the squared outcome sum `(mu_i(1) + mu_i(0))^2`.
    pub psi_bar: f64,
    /// Matching lower bound. Carried for reporting only.
    pub psi_lower: Option<f64>,
    /// Largest spillover effect.
    pub phi_bar: f64,
    /// Weight of squared bias relative to variance.
    pub lambda: f64,
}

impl Default for Heterogeneity {
    fn default() -> Self {
        Self {
            alpha: None,
            psi: None,
            psi_bar: 1.0,
            psi_lower: None,
            phi_bar: 1.0,
            lambda: 1.0,
        }
    }
}

impl Heterogeneity {
    pub fn homogeneous(psi_bar: f64, phi_bar: f64, lambda: f64) -> Self {
        Self {
            psi_bar,
            phi_bar,
            lambda,
            ..Self::default()
        }
    }

    pub fn with_alpha(mut self, alpha: Vec<f64>) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn with_psi(mut self, psi: Vec<f64>) -> Self {
        self.psi = Some(psi);
        self
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if !(self.psi_bar > 0.0 && self.psi_bar.is_finite()) {
            return bad(format!("psi_bar must be positive, got {}", self.psi_bar));
        }
        if !(self.phi_bar >= 0.0 && self.phi_bar.is_finite()) {
            return bad(format!("phi_bar must be nonnegative, got {}", self.phi_bar));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return bad(format!("lambda must be positive, got {}", self.lambda));
        }
        if let Some(a) = &self.alpha {
            if a.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: a.len() });
            }
            if a.iter().any(|&x| !(x > 0.0 && x <= 1.0)) {
                return bad("alpha entries must lie in (0, 1]".into());
            }
            if n > 0 && a.iter().cloned().fold(f64::MIN, f64::max) != 1.0 {
                return bad("alpha must be normalized to max 1".into());
            }
        }
        if let Some(p) = &self.psi {
            if p.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: p.len() });
            }
            if p.iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
                return bad("psi entries must be finite and nonnegative".into());
            }
            let max_sq = p.iter().map(|x| x * x).fold(0.0, f64::max);
            if max_sq > self.psi_bar * (1.0 + 1e-12) {
                return bad(format!("psi_bar {} is below max psi_i^2 = {max_sq}", self.psi_bar));
            }
        }
        Ok(())
    }

    pub fn alpha(&self, i: usize) -> f64 {
        self.alpha.as_ref().map_or(1.0, |a| a[i])
    }

    pub fn psi(&self, i: usize) -> f64 {
        self.psi.as_ref().map_or_else(|| self.psi_bar.sqrt(), |p| p[i])
    }

    /// Weights `w` of the size penalty `sum_k (sum_{i in c_k} w_i)^2`:
    /// the per-unit `psi` when given, otherwise all ones.
    pub fn penalty_weights(&self, n: usize) -> Vec<f64> {
        self.psi.clone().unwrap_or_else(|| vec![1.0; n])
    }

    /// `psi_bar / (lambda * phi_bar^2)`.
    pub fn xi(&self) -> f64 {
        self.psi_bar / (self.lambda * self.phi_bar * self.phi_bar)
    }

    /// Default `xi` for the penalized cut: `1 / phi_bar^2` when per-unit
    /// `psi` weights carry the outcome scale, otherwise [`Self::xi`].
    pub fn objective_xi(&self) -> f64 {
        if self.psi.is_some() {
            1.0 / (self.phi_bar * self.phi_bar)
        } else {
            self.xi()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Cluster,
    Bernoulli,
    Indifferent,
}

impl std::fmt::Display for Decision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Decision::Cluster => "cluster",
            Decision::Bernoulli => "bernoulli",
            Decision::Indifferent => "indifferent",
        })
    }
}

impl std::str::FromStr for Decision {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cluster" => Ok(Decision::Cluster),
            "bernoulli" => Ok(Decision::Bernoulli),
            "indifferent" => Ok(Decision::Indifferent),
            other => Err(Error::InvalidParameter(format!("unknown decision '{other}'"))),
        }
    }
}

/// Everything the design metrics say about one `(graph, clustering, xi)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignReport {
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub bias_frac: f64,
    pub worst_case_bias: f64,
    pub variance_proxy: f64,
    pub objective_sq: f64,
    pub objective_abs: f64,
    pub xi: f64,
    pub xi_threshold: f64,
    pub decision: Decision,
}

fn check(g: &Graph, c: &Clustering) -> Result<()> {
    g.require_binary()?;
    if g.n() != c.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            found: c.n(),
        });
    }
    Ok(())
}

/// Share of each node's neighbors in another cluster; 0 for isolated nodes.
pub fn cross_fractions(g: &Graph, c: &Clustering) -> Result<Vec<f64>> {
    check(g, c)?;
    Ok((0..g.n())
        .map(|i| {
            let deg = g.degree(i);
            if deg == 0 {
                return 0.0;
            }
            let ci = c.cluster_of(i);
            let cross = g.neighbor_ids(i).filter(|&j| c.cluster_of(j) != ci).count();
            cross as f64 / deg as f64
        })
        .collect())
}

/// `(1/n) sum_i alpha_i * cross_i`, in `[0, 1]`.
pub fn bias_frac(g: &Graph, c: &Clustering, het: &Heterogeneity) -> Result<f64> {
    let cf = cross_fractions(g, c)?;
    let n = g.n() as f64;
    Ok(cf.iter().enumerate().map(|(i, f)| het.alpha(i) * f).sum::<f64>() / n)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bias {
    pub worst_case_bias: f64,
    pub bias_frac: f64,
}

/// Largest `|E[tau_hat] - tau|` over outcome models whose spillovers are
/// bounded by `phi_bar * alpha_i` in the treated-neighbor share.
pub fn worst_case_bias(g: &Graph, c: &Clustering, het: &Heterogeneity) -> Result<Bias> {
    let bias_frac = bias_frac(g, c, het)?;
    Ok(Bias {
        worst_case_bias: het.phi_bar * bias_frac,
        bias_frac,
    })
}

/// `(1/n^2) sum_k n_k^2`, in `[1/K, 1]`.
pub fn variance_proxy(c: &Clustering) -> f64 {
    let n = c.n() as f64;
    c.sum_squared_sizes() / (n * n)
}

pub fn objective_sq(g: &Graph, c: &Clustering, xi: f64, het: &Heterogeneity) -> Result<f64> {
    let b = bias_frac(g, c, het)?;
    Ok(xi * variance_proxy(c) + b * b)
}

pub fn objective_abs(g: &Graph, c: &Clustering, xi: f64, het: &Heterogeneity) -> Result<f64> {
    let b = bias_frac(g, c, het)?;
    Ok(xi * variance_proxy(c) + b)
}

/// `bias_frac + (xi/n^2) sum_k (sum_{i in c_k} w_i)^2` with `w` from
/// [`Heterogeneity::penalty_weights`]. Equals [`objective_abs`] when no
/// per-unit `psi` is given.
pub fn weighted_objective(g: &Graph, c: &Clustering, xi: f64, het: &Heterogeneity) -> Result<f64> {
    let b = bias_frac(g, c, het)?;
    let w = het.penalty_weights(g.n());
    let n = g.n() as f64;
    Ok(b + xi * weighted_size_penalty(c, &w) / (n * n))
}

fn weighted_size_penalty(c: &Clustering, w: &[f64]) -> f64 {
    let mut sums = vec![0.0; c.k()];
    for (i, &k) in c.assignment().iter().enumerate() {
        sums[k] += w[i];
    }
    sums.iter().map(|s| s * s).sum()
}

/// Worst-case mean squared error under heterogeneous outcome scales:
/// `sum_k (n_k/n)^2 (mean_{c_k} psi)^2 + (phi_bar * bias_frac)^2`.
pub fn objective_hetero(g: &Graph, c: &Clustering, het: &Heterogeneity) -> Result<f64> {
    let b = worst_case_bias(g, c, het)?.worst_case_bias;
    let psi: Vec<f64> = (0..g.n()).map(|i| het.psi(i)).collect();
    let n = g.n() as f64;
    Ok(weighted_size_penalty(c, &psi) / (n * n) + b * b)
}

/// Largest `xi` at which the clustering still beats a Bernoulli design.
pub fn xi_threshold(g: &Graph, c: &Clustering, het: &Heterogeneity) -> Result<f64> {
    let b = bias_frac(g, c, het)?;
    Ok((1.0 - b * b) / variance_proxy(c))
}

fn decide(xi: f64, threshold: f64) -> Decision {
    if (xi - threshold).abs() <= 1e-12 * threshold.abs().max(1.0) {
        Decision::Indifferent
    } else if xi < threshold {
        Decision::Cluster
    } else {
        Decision::Bernoulli
    }
}

/// Outcome of the finite-sample cluster-vs-Bernoulli rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleOfThumb {
    pub decision: Decision,
    pub xi: f64,
    pub xi_threshold: f64,
    pub bias_frac: f64,
    #[serde(rename = "K")]
    pub k: usize,
    /// `(1/K) sum_k gamma_k^2` with `gamma_k = n_k K / n`.
    pub gamma_lower: f64,
    /// Smallest spillover bound at which clustering is preferred;
    /// infinite when every neighbor link is cut.
    pub min_phi_bar: f64,
    pub min_phi_bar_sqrt_k: f64,
}

/// Prefer the cluster design iff
/// `psi_bar / (lambda phi_bar^2) <= (1 - bias_frac^2) / (gamma_lower / K)`.
///
/// Since `gamma_lower / K` equals the variance proxy, the right-hand side
/// is [`xi_threshold`]. When `bias_frac = 1` the right-hand side is zero and
/// the Bernoulli design wins for every spillover size; `min_phi_bar` is then
/// `+inf`.
pub fn rule_of_thumb(g: &Graph, c: &Clustering, het: &Heterogeneity) -> Result<RuleOfThumb> {
    het.validate(g.n())?;
    let b = bias_frac(g, c, het)?;
    let k = c.k();
    let n = c.n() as f64;
    let gamma_lower = c
        .sizes()
        .iter()
        .map(|&s| {
            let g = s as f64 * k as f64 / n;
            g * g
        })
        .sum::<f64>()
        / k as f64;
    let threshold = (1.0 - b * b) / (gamma_lower / k as f64);
    let xi = het.xi();
    let decision = if xi <= threshold {
        Decision::Cluster
    } else {
        Decision::Bernoulli
    };
    let min_phi_bar = if threshold > 0.0 {
        (het.psi_bar / (het.lambda * threshold)).sqrt()
    } else {
        f64::INFINITY
    };
    Ok(RuleOfThumb {
        decision,
        xi,
        xi_threshold: threshold,
        bias_frac: b,
        k,
        gamma_lower,
        min_phi_bar,
        min_phi_bar_sqrt_k: min_phi_bar * (k as f64).sqrt(),
    })
}

/// All metrics for one `(graph, clustering, xi)` triple.
pub fn report(g: &Graph, c: &Clustering, xi: f64, het: &Heterogeneity) -> Result<DesignReport> {
    if !(xi >= 0.0 && xi.is_finite()) {
        return Err(Error::InvalidParameter(format!("xi must be finite and >= 0, got {xi}")));
    }
    let bias = worst_case_bias(g, c, het)?;
    let b = bias.bias_frac;
    let v = variance_proxy(c);
    let threshold = (1.0 - b * b) / v;
    Ok(DesignReport {
        n: c.n(),
        k: c.k(),
        bias_frac: b,
        worst_case_bias: bias.worst_case_bias,
        variance_proxy: v,
        objective_sq: xi * v + b * b,
        objective_abs: xi * v + b,
        xi,
        xi_threshold: threshold,
        decision: decide(xi, threshold),
    })
}

/// One line of the bias-variance frontier table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontierRow {
    pub clustering_id: String,
    pub xi: f64,
    pub bias_frac: f64,
    pub worst_case_bias: f64,
    pub variance_proxy: f64,
    pub objective_sq: f64,
    pub objective_abs: f64,
    pub xi_threshold: f64,
    pub decision: Decision,
}

impl FrontierRow {
    fn new(id: &str, r: &DesignReport) -> Self {
        Self {
            clustering_id: id.to_string(),
            xi: r.xi,
            bias_frac: r.bias_frac,
            worst_case_bias: r.worst_case_bias,
            variance_proxy: r.variance_proxy,
            objective_sq: r.objective_sq,
            objective_abs: r.objective_abs,
            xi_threshold: r.xi_threshold,
            decision: r.decision,
        }
    }
}

/// Reports for every clustering at every `xi`, ordered by clustering then
/// grid position.
pub fn frontier(
    g: &Graph,
    clusterings: &[(String, Clustering)],
    xi_grid: &[f64],
    het: &Heterogeneity,
) -> Result<Vec<(String, DesignReport)>> {
    if xi_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if clusterings.is_empty() {
        return Err(Error::InvalidParameter("no clusterings given".into()));
    }
    let tasks: Vec<(usize, f64)> = (0..clusterings.len())
        .flat_map(|c| xi_grid.iter().map(move |&x| (c, x)))
        .collect();
    tasks
        .par_iter()
        .map(|&(ci, xi)| {
            let (id, c) = &clusterings[ci];
            report(g, c, xi, het).map(|r| (id.clone(), r))
        })
        .collect()
}

pub const FRONTIER_HEADER: [&str; 9] = [
    "clustering_id",
    "xi",
    "bias_frac",
    "worst_case_bias",
    "variance_proxy",
    "objective_sq",
    "objective_abs",
    "xi_threshold",
    "decision",
];

pub fn write_frontier_csv<W: Write>(rows: &[(String, DesignReport)], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    for (id, r) in rows {
        w.serialize(FrontierRow::new(id, r))?;
    }
    if rows.is_empty() {
        w.write_record(FRONTIER_HEADER)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_frontier_csv<R: Read>(input: R) -> Result<Vec<FrontierRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != FRONTIER_HEADER {
        return Err(Error::MalformedLine {
            line: 1,
            reason: format!("unexpected frontier header {header:?}"),
        });
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}
