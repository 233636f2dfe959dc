//! Enumerate every cluster assignment of a small design to get the exact
//! mean and variance of the estimator, and compare with the closed forms.

use causal_cluster::graph::Graph;
use causal_cluster::metrics::{worst_case_bias, Heterogeneity};
use causal_cluster::partition::Clustering;
use causal_cluster::sim::{dependency_clusters, exact_design_moments, exact_unit_covariance, worst_case_mu, Sign};

fn main() -> causal_cluster::Result<()> {
    let g = Graph::from_edges(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0), (0, 4)]);
    let c = Clustering::from_assignment(&[0, 0, 1, 1, 2, 2, 3, 3]);
    let het = Heterogeneity::homogeneous(1.0, 0.5, 1.0);

    let w = worst_case_mu(&g, &het, vec![1.0; 8], vec![0.0; 8], Sign::Positive)?;
    let m = exact_design_moments(&g, &c, |d| w.evaluate(d))?;
    let formula = worst_case_bias(&g, &c, &het)?.worst_case_bias;
    println!("{} assignments: bias {:.6} (closed form {formula:.6}), variance {:.6}", m.assignments, m.mean - w.tau(), m.variance);

    let constant = exact_design_moments(&g, &c, |_| vec![2.0; 8])?;
    let identity = 4.0 * 4.0 / 64.0 * c.sum_squared_sizes();
    println!("constant outcomes: variance {:.6} (identity {identity:.6})", constant.variance);

    for (i, j) in [(0, 5), (1, 2), (2, 6)] {
        let cov = exact_unit_covariance(&c, |d| w.evaluate(d), i, j)?;
        println!(
            "cov(unit {i}, unit {j}) = {cov:+.6}   clusters {:?} vs {:?}",
            dependency_clusters(&g, &c, i),
            dependency_clusters(&g, &c, j)
        );
    }
    Ok(())
}
