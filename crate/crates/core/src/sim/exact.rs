use serde::Serialize;

use super::estimate;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Clustering;

pub const MAX_ENUMERATED_CLUSTERS: usize = 20;

/// Exact moments of the difference-in-means estimator over all `2^K`
/// equally likely cluster assignments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DesignMoments {
    pub mean: f64,
    pub variance: f64,
    pub assignments: usize,
}

/// Compensated (Neumaier) summation.
fn neumaier(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0;
    for x in xs {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
        sum = t;
    }
    sum + comp
}

fn for_each_assignment(c: &Clustering, mut f: impl FnMut(&[bool])) -> Result<usize> {
    let k = c.k();
    if k > MAX_ENUMERATED_CLUSTERS {
        return Err(Error::TooManyClusters {
            k,
            limit: MAX_ENUMERATED_CLUSTERS,
        });
    }
    let total = 1usize << k;
    let mut d = vec![false; c.n()];
    for mask in 0..total {
        for (i, &cl) in c.assignment().iter().enumerate() {
            d[i] = mask >> cl & 1 == 1;
        }
        f(&d);
    }
    Ok(total)
}

/// `outcomes(d)` returns the realized outcome vector under assignment `d`.
pub fn exact_design_moments<F>(g: &Graph, c: &Clustering, outcomes: F) -> Result<DesignMoments>
where
    F: Fn(&[bool]) -> Vec<f64>,
{
    if g.n() != c.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            found: c.n(),
        });
    }
    let mut values = Vec::new();
    let mut err = None;
    let total = for_each_assignment(c, |d| match estimate(&outcomes(d), d) {
        Ok(v) => values.push(v),
        Err(e) => err = Some(e),
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    let t = total as f64;
    let mean = neumaier(values.iter().copied()) / t;
    let variance = neumaier(values.iter().map(|v| (v - mean) * (v - mean))) / t;
    Ok(DesignMoments {
        mean,
        variance,
        assignments: total,
    })
}

/// Exact covariance of the estimator contributions `(2/n)(2 D_i - 1) Y_i`
/// of units `i` and `j`.
pub fn exact_unit_covariance<F>(c: &Clustering, outcomes: F, i: usize, j: usize) -> Result<f64>
where
    F: Fn(&[bool]) -> Vec<f64>,
{
    let n = c.n() as f64;
    let contrib = |d: &[bool], y: &[f64], u: usize| 2.0 / n * if d[u] { y[u] } else { -y[u] };
    let mut pairs = Vec::new();
    let total = for_each_assignment(c, |d| {
        let y = outcomes(d);
        pairs.push((contrib(d, &y, i), contrib(d, &y, j)));
    })? as f64;
    let mi = neumaier(pairs.iter().map(|p| p.0)) / total;
    let mj = neumaier(pairs.iter().map(|p| p.1)) / total;
    Ok(neumaier(pairs.iter().map(|p| (p.0 - mi) * (p.1 - mj))) / total)
}

/// Clusters of `i` and its neighbors, ascending: the clusters whose
/// assignment can move unit `i`'s contribution.
pub fn dependency_clusters(g: &Graph, c: &Clustering, i: usize) -> Vec<usize> {
    let mut out: Vec<usize> = std::iter::once(i).chain(g.neighbor_ids(i)).map(|u| c.cluster_of(u)).collect();
    out.sort_unstable();
    out.dedup();
    out
}
