//! Bias/variance frontier of several designs across a grid of xi, written
//! as CSV for plotting.

use causal_cluster::baselines::{epsilon_net, louvain};
use causal_cluster::graph::barabasi_albert;
use causal_cluster::graph::BarabasiParams;
use causal_cluster::metrics::{frontier, write_frontier_csv, Heterogeneity};
use causal_cluster::partition::Clustering;

fn main() -> causal_cluster::Result<()> {
    let g = barabasi_albert(&BarabasiParams::new(80), 2)?;
    let designs = vec![
        ("louvain".to_string(), louvain(&g, 2)),
        ("enet2".to_string(), epsilon_net(&g, 2, 2)?),
        ("enet4".to_string(), epsilon_net(&g, 4, 2)?),
        ("bernoulli".to_string(), Clustering::singletons(g.n())),
    ];
    let rows = frontier(&g, &designs, &[0.5, 1.0, 5.0, 15.0], &Heterogeneity::default())?;
    write_frontier_csv(&rows, std::io::stdout().lock())
}
