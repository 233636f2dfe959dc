//! Cluster or Bernoulli? The minimal spillover size that makes clustering
//! worthwhile, for a few bias levels and outcome scales.

use causal_cluster::graph::Graph;
use causal_cluster::metrics::{rule_of_thumb, Heterogeneity};
use causal_cluster::partition::Clustering;

fn main() -> causal_cluster::Result<()> {
    // a ring cut into equal arcs; longer arcs cut a smaller share of links
    let n = 120;
    let g = Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)));
    println!("{:>6} {:>6} {:>9} {:>9} {:>14}", "arc", "K", "bias", "psi_bar", "min phi*sqrtK");
    for arc in [2, 4, 10] {
        let c = Clustering::from_assignment(&(0..n).map(|i| i / arc).collect::<Vec<_>>());
        for psi_bar in [3.0, 4.0] {
            let r = rule_of_thumb(&g, &c, &Heterogeneity::homogeneous(psi_bar, 0.3, 1.0))?;
            println!(
                "{arc:>6} {:>6} {:>9.3} {psi_bar:>9} {:>14.3}  at phi_bar=0.3: {:?}",
                r.k, r.bias_frac, r.min_phi_bar_sqrt_k, r.decision
            );
        }
    }
    Ok(())
}
