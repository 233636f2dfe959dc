//! Median objective of the causal design against the reference clusterers
//! over a handful of random graphs.

use causal_cluster::baselines::{epsilon_net, louvain, random_balanced, spectral_fixed};
use causal_cluster::graph::erdos_renyi;
use causal_cluster::metrics::{objective_abs, Heterogeneity};
use causal_cluster::optimizer::{causal_cluster, SolverConfig};
use causal_cluster::partition::Clustering;

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    v[v.len() / 2]
}

fn main() -> causal_cluster::Result<()> {
    let n = 50;
    let reps = 9;
    let het = Heterogeneity::default();
    let cfg = SolverConfig {
        tol_primal: 1e-3,
        tol_dual: 1e-3,
        kmeans_restarts: 3,
        ..SolverConfig::default()
    };
    let names = ["causal", "eps-net", "spectral", "louvain", "random"];
    for xi in [1.0, 5.0, 15.0] {
        let mut scores = vec![Vec::new(); names.len()];
        for s in 0..reps {
            let g = erdos_renyi(n, 2.0 / n as f64, s)?;
            let designs: [Clustering; 5] = [
                causal_cluster(&g, xi, 1, n, &het, &cfg.clone().with_seed(s))?.clustering,
                epsilon_net(&g, 3, s)?,
                spectral_fixed(&g, None, s)?,
                louvain(&g, s),
                random_balanced(&g, n / 3, s)?,
            ];
            for (i, c) in designs.iter().enumerate() {
                scores[i].push(objective_abs(&g, c, xi, &het)?);
            }
        }
        let line: Vec<String> = names.iter().zip(scores).map(|(n, s)| format!("{n} {:.3}", median(s))).collect();
        println!("xi={xi:<4} {}", line.join("  "));
    }
    Ok(())
}
