//! Draw the three synthetic network families and threshold a weighted graph.
//!
//! ```text
//! cargo run --example generate_networks
//! ```

use causal_cluster::graph::{
    barabasi_albert, erdos_renyi, geometric, power_graph, threshold, write_edge_list, BarabasiParams, Graph,
};

fn summary(name: &str, g: &Graph) {
    let isolated = (0..g.n()).filter(|&i| g.degree(i) == 0).count();
    let components = g.components().iter().max().map_or(0, |m| m + 1);
    println!(
        "{name:<12} n={:<4} edges={:<5} max degree={:<3} isolated={isolated:<3} components={components}",
        g.n(),
        g.edge_count(),
        g.max_degree()
    );
}

fn main() -> causal_cluster::Result<()> {
    let n = 100;
    summary("erdos-renyi", &erdos_renyi(n, 2.0 / n as f64, 1)?);
    let geo = geometric(n, 1)?;
    summary("geometric", &geo);
    summary("geometric^2", &power_graph(&geo, 2)?);
    summary("barabasi", &barabasi_albert(&BarabasiParams::new(n), 1)?);

    let weighted = Graph::from_weighted_edges(6, [(0, 1, 5.0), (1, 2, 0.5), (2, 3, 4.0), (3, 4, 0.2), (4, 5, 3.0), (5, 0, 1.0)]);
    let strong = threshold(&weighted, 50.0)?;
    summary("top half", &strong);

    println!("\nthresholded edge list:");
    write_edge_list(&strong, std::io::stdout().lock())
}
