//! Simulated mean squared error of the difference-in-means estimator under
//! the exogenous and endogenous peer-effect models.

use causal_cluster::baselines::louvain;
use causal_cluster::graph::geometric;
use causal_cluster::partition::Clustering;
use causal_cluster::sim::{monte_carlo_mse, OutcomeModel, PRESET_NOISE_VARIANCES};

fn main() -> causal_cluster::Result<()> {
    let g = geometric(100, 4)?;
    let designs = [("louvain", louvain(&g, 4)), ("bernoulli", Clustering::singletons(g.n()))];
    for sigma2 in PRESET_NOISE_VARIANCES {
        for gamma in [None, Some(0.4)] {
            let mut model = OutcomeModel::preset(0.0, 1.0, sigma2);
            if let Some(gm) = gamma {
                model = model.endogenous(gm);
            }
            let tau = model.prepare(&g)?.tau()?;
            let cells: Vec<String> = designs
                .iter()
                .map(|(name, c)| {
                    let mc = monte_carlo_mse(&g, c, &model, tau, 2000, 4)?;
                    Ok(format!("{name} {:.4} +- {:.4}", mc.mse, mc.se))
                })
                .collect::<causal_cluster::Result<_>>()?;
            let kind = gamma.map_or("exogenous".to_string(), |gm| format!("gamma={gm}"));
            println!("sigma2={sigma2:<4} {kind:<10} tau={tau:.3}  {}", cells.join("   "));
        }
    }
    Ok(())
}
