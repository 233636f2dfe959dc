//! Single-node local search on the penalized cut.
//!
//! Moving node `v` from cluster `a` to `b` changes
//! `bias_frac + (xi/n^2) sum_k W_k^2` by
//!
//! ```text
//! (g_v(a) - g_v(b)) / n + 2 xi w_v (W_b - W_a + w_v) / n^2
//! ```
//!
//! where `g_v(c)` sums `alpha_v/d_v + alpha_u/d_u` over neighbors `u` of
//! `v` in `c`, and `W_c` is the total penalty weight of `c`. Merging
//! clusters `a` and `b` changes it by `-g(a, b) / n + 2 xi W_a W_b / n^2`
//! with `g(a, b)` the same edge weight summed over edges between them.

use crate::error::Result;
use crate::graph::Graph;
use crate::metrics::Heterogeneity;
use crate::partition::Clustering;

const MIN_DECREASE: f64 = 1e-12;

/// Alternate improving single-node moves (including moves to a fresh
/// cluster) and improving pairwise merges until neither helps or
/// `max_passes` rounds are done.
pub fn refine(g: &Graph, c: &Clustering, xi: f64, het: &Heterogeneity, max_passes: usize) -> Result<Clustering> {
    g.require_binary()?;
    het.validate(g.n())?;
    let n = g.n();
    let w = het.penalty_weights(n);
    let share: Vec<f64> = (0..n)
        .map(|i| match g.degree(i) {
            0 => 0.0,
            d => het.alpha(i) / d as f64,
        })
        .collect();
    let mut label = c.assignment().to_vec();
    for _ in 0..max_passes {
        move_nodes(g, &mut label, xi, &w, &share, max_passes);
        if !merge_clusters(g, &mut label, xi, &w, &share) {
            break;
        }
    }
    Ok(Clustering::from_assignment(&label))
}

fn merge_clusters(g: &Graph, label: &mut [usize], xi: f64, w: &[f64], share: &[f64]) -> bool {
    let n = label.len();
    let nf = n as f64;
    let dense = Clustering::from_assignment(label);
    label.copy_from_slice(dense.assignment());
    let k = dense.k();
    let mut weight = vec![0.0; k];
    for i in 0..n {
        weight[label[i]] += w[i];
    }
    let mut between: Vec<std::collections::HashMap<usize, f64>> = vec![Default::default(); k];
    for (u, v, _) in g.edges() {
        let (a, b) = (label[u], label[v]);
        if a != b {
            let x = share[u] + share[v];
            *between[a].entry(b).or_insert(0.0) += x;
            *between[b].entry(a).or_insert(0.0) += x;
        }
    }
    let mut alive = vec![true; k];
    let mut parent: Vec<usize> = (0..k).collect();
    let mut any = false;
    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for a in 0..k {
            if !alive[a] {
                continue;
            }
            for (&b, &x) in &between[a] {
                if b <= a {
                    continue;
                }
                let d = -x / nf + 2.0 * xi * weight[a] * weight[b] / (nf * nf);
                let better = best.is_none_or(|(ba, bb, bd)| d < bd || (d == bd && (a, b) < (ba, bb)));
                if d < -MIN_DECREASE && better {
                    best = Some((a, b, d));
                }
            }
        }
        let Some((a, b, _)) = best else { break };
        any = true;
        alive[b] = false;
        parent[b] = a;
        weight[a] += weight[b];
        let gone = std::mem::take(&mut between[b]);
        between[a].remove(&b);
        for (c, x) in gone {
            if c == a {
                continue;
            }
            between[c].remove(&b);
            *between[c].entry(a).or_insert(0.0) += x;
            *between[a].entry(c).or_insert(0.0) += x;
        }
    }
    if any {
        let root = |mut c: usize| {
            while parent[c] != c {
                c = parent[c];
            }
            c
        };
        for l in label.iter_mut() {
            *l = root(*l);
        }
    }
    any
}

fn move_nodes(g: &Graph, label: &mut [usize], xi: f64, w: &[f64], share: &[f64], max_passes: usize) {
    let n = label.len();
    let nf = n as f64;
    let dense = Clustering::from_assignment(label);
    label.copy_from_slice(dense.assignment());
    let c = &dense;
    // One spare slot per node so a fresh cluster is always available.
    let mut weight = vec![0.0; n + c.k()];
    let mut count = vec![0usize; n + c.k()];
    for i in 0..n {
        weight[label[i]] += w[i];
        count[label[i]] += 1;
    }
    let mut free: Vec<usize> = (0..weight.len()).filter(|&k| count[k] == 0).rev().collect();

    let mut link = vec![0.0; weight.len()];
    let mut touched = Vec::new();
    for _ in 0..max_passes {
        let mut moved = false;
        for v in 0..n {
            let a = label[v];
            for u in g.neighbor_ids(v) {
                let cu = label[u];
                if link[cu] == 0.0 {
                    touched.push(cu);
                }
                link[cu] += share[v] + share[u];
            }
            let delta = |gb: f64, wb: f64| (link[a] - gb) / nf + 2.0 * xi * w[v] * (wb - weight[a] + w[v]) / (nf * nf);
            let mut best: Option<(usize, f64)> = None;
            for &b in &touched {
                if b != a {
                    let d = delta(link[b], weight[b]);
                    if d < -MIN_DECREASE && best.is_none_or(|(_, bd)| d < bd) {
                        best = Some((b, d));
                    }
                }
            }
            if count[a] > 1 {
                if let Some(&fresh) = free.last() {
                    let d = delta(0.0, 0.0);
                    if d < -MIN_DECREASE && best.is_none_or(|(_, bd)| d < bd) {
                        best = Some((fresh, d));
                    }
                }
            }
            for &k in &touched {
                link[k] = 0.0;
            }
            touched.clear();
            if let Some((b, _)) = best {
                if count[b] == 0 {
                    free.pop();
                }
                weight[a] -= w[v];
                weight[b] += w[v];
                count[a] -= 1;
                count[b] += 1;
                if count[a] == 0 {
                    free.push(a);
                }
                label[v] = b;
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
}
