use super::Graph;
use crate::error::{Error, Result};

/// Empirical percentile of the stored (nonzero) edge weights, linearly
/// interpolated between order statistics. `None` for an edgeless graph.
pub fn weight_percentile(g: &Graph, percentile: f64) -> Option<f64> {
    let mut w: Vec<f64> = g.edges().map(|(_, _, w)| w).collect();
    if w.is_empty() {
        return None;
    }
    w.sort_by(f64::total_cmp);
    let pos = percentile / 100.0 * (w.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    Some(w[lo] + (pos - lo as f64) * (w[hi] - w[lo]))
}

/// Binarize: keep edges whose weight is strictly above the given
/// percentile of the weight distribution, each with weight 1.
///
/// Percentile 0 keeps every edge and percentile 100 keeps none. The node
/// set and labels are unchanged.
pub fn threshold(g: &Graph, percentile: f64) -> Result<Graph> {
    if !(0.0..=100.0).contains(&percentile) {
        return Err(Error::InvalidParameter(format!(
            "percentile {percentile} outside [0, 100]"
        )));
    }
    let cut = if percentile == 0.0 {
        f64::NEG_INFINITY
    } else {
        match weight_percentile(g, percentile) {
            Some(c) => c,
            None => return Ok(g.with_edges(std::iter::empty())),
        }
    };
    let kept: Vec<_> = g
        .edges()
        .filter(|&(_, _, w)| w > cut)
        .map(|(u, v, _)| (u, v, 1.0))
        .collect();
    Ok(g.with_edges(kept))
}

/// Connect every pair within `hops` steps of each other.
pub fn power_graph(g: &Graph, hops: usize) -> Result<Graph> {
    if hops == 0 {
        return Err(Error::InvalidParameter("hop count must be at least 1".into()));
    }
    g.require_binary()?;
    let mut edges = Vec::new();
    for u in 0..g.n() {
        for (v, d) in g.hop_distances(u, Some(hops)).into_iter().enumerate() {
            if v > u && d.is_some() {
                edges.push((u, v, 1.0));
            }
        }
    }
    Ok(g.with_edges(edges))
}
