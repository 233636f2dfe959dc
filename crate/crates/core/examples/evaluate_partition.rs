//! Score a hand-made clustering: bias, variance proxy and both objectives.

use causal_cluster::graph::Graph;
use causal_cluster::metrics::{cross_fractions, report, Heterogeneity};
use causal_cluster::partition::Clustering;

fn main() -> causal_cluster::Result<()> {
    // two triangles joined by a bridge
    let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]);
    let het = Heterogeneity::default();
    let designs = [
        ("triangles", Clustering::from_assignment(&[0, 0, 0, 1, 1, 1])),
        ("singletons", Clustering::singletons(6)),
        ("one block", Clustering::single(6)),
    ];
    for (name, c) in &designs {
        let r = report(&g, c, 1.0, &het)?;
        println!(
            "{name:<10} K={} bias_frac={:.4} variance={:.4} abs={:.4} sq={:.4} threshold={:.3} -> {:?}",
            r.k, r.bias_frac, r.variance_proxy, r.objective_abs, r.objective_sq, r.xi_threshold, r.decision
        );
    }
    let cross = cross_fractions(&g, &designs[0].1)?;
    println!("\ncut share per node under 'triangles': {cross:?}");
    Ok(())
}
