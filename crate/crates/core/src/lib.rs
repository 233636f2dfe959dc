//! Cluster-randomized experiment design on networks.
//!
//! Units live on a [`graph::Graph`]. A [`partition::Clustering`] assigns
//! them to clusters that are treated as blocks. [`metrics`] scores a
//! clustering by the spillover bias it leaves and the variance it costs,
//! [`optimizer::causal_cluster`] searches for a clustering that balances
//! the two, and [`baselines`] provides the usual comparison methods.
//! [`sim`] draws experiments and measures estimator error, [`tuning`]
//! calibrates the trade-off from baseline data, and [`cli`] wraps it all in
//! a command-line tool.
//!
//! ```
//! use causal_cluster::graph::erdos_renyi;
//! use causal_cluster::metrics::{report, Heterogeneity};
//! use causal_cluster::optimizer::{causal_cluster, SolverConfig};
//!
//! let g = erdos_renyi(30, 0.1, 7).unwrap();
//! let het = Heterogeneity::default();
//! let cfg = SolverConfig { tol_primal: 1e-3, tol_dual: 1e-3, ..SolverConfig::default() };
//! let best = causal_cluster(&g, 2.0, 1, 30, &het, &cfg).unwrap();
//! let r = report(&g, &best.clustering, 2.0, &het).unwrap();
//! assert!((r.objective_abs - best.report.objective_abs).abs() < 1e-12);
//! ```

pub mod baselines;
pub mod cli;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod optimizer;
pub mod partition;
pub mod rng;
pub mod sim;
pub mod tuning;

pub use error::{Error, Result};
