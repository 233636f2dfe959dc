//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use causal_cluster::baselines::{epsilon_net, louvain, random_balanced, spectral_fixed};
use causal_cluster::graph::{barabasi_albert, erdos_renyi, geometric, BarabasiParams, Graph};
use causal_cluster::metrics::{rule_of_thumb, weighted_objective, worst_case_bias, Heterogeneity};
use causal_cluster::optimizer::{build_trace_matrix, causal_cluster, integral_trace_value, solve_sdp, SolverConfig};
use causal_cluster::partition::Clustering;
use causal_cluster::sim::{exact_design_moments, monte_carlo_mse, worst_case_mu, OutcomeModel, Sign};
use causal_cluster::tuning::xi_from_psi_phi;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Even cycle cut into adjacent pairs: every node has one of its two
/// neighbors outside its cluster.
fn half_cut_cycle(n: usize) -> (Graph, Clustering) {
    let g = Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)));
    let labels: Vec<usize> = (0..n).map(|i| i / 2).collect();
    (g, Clustering::from_assignment(&labels))
}

fn rule_of_thumb_constants() -> Outcome {
    let (g, c) = half_cut_cycle(16);
    let mut lines = Vec::new();
    let mut pass = true;
    for (psi_bar, expected, printed) in [(4.0, 2.309, 2.30), (3.0, 2.000, 2.0)] {
        let het = Heterogeneity::homogeneous(psi_bar, 1.0, 1.0);
        let r = rule_of_thumb(&g, &c, &het).unwrap();
        let v = r.min_phi_bar_sqrt_k;
        pass &= r.bias_frac == 0.5 && (v - expected).abs() < 5e-4 && (v - printed).abs() <= 0.01;
        lines.push(format!("psi_bar={psi_bar}: {v:.4}"));
    }
    outcome(pass, lines.join(", "))
}

fn calibration_arithmetic() -> Outcome {
    let xi = xi_from_psi_phi(0.24, 0.27, 1.0).unwrap();
    outcome((xi - 3.29).abs() <= 0.01, format!("xi = {xi:.4}"))
}

fn worst_case_attainment() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut worst: f64 = 0.0;
    let instances = 250;
    for s in 0..instances {
        let n = rng.random_range(2..=12);
        let g = erdos_renyi(n, rng.random_range(0.15..0.7), s).unwrap();
        let k = rng.random_range(1..=n.min(10));
        let labels: Vec<usize> = (0..n).map(|i| if i < k { i } else { rng.random_range(0..k) }).collect();
        let c = Clustering::from_assignment(&labels);
        let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..=1.0)).collect();
        let top = raw.iter().copied().fold(0.0, f64::max);
        let alpha = raw.iter().map(|a| a / top).collect();
        let het = Heterogeneity::homogeneous(1.0, rng.random_range(0.01..3.0), 1.0).with_alpha(alpha);
        let mu1: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let mu0: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let sign = if rng.random_bool(0.5) { Sign::Positive } else { Sign::Negative };
        let w = worst_case_mu(&g, &het, mu1, mu0, sign).unwrap();
        let m = exact_design_moments(&g, &c, |d| w.evaluate(d)).unwrap();
        let formula = worst_case_bias(&g, &c, &het).unwrap().worst_case_bias;
        worst = worst.max(((m.mean - w.tau()).abs() - formula).abs());
    }
    outcome(worst <= 1e-12, format!("{instances} instances, max |diff| = {worst:.2e}"))
}

fn constant_outcome_variance() -> Outcome {
    let g = geometric(12, 3).unwrap();
    let c = Clustering::from_assignment(&[0, 0, 0, 1, 1, 2, 2, 2, 2, 3, 4, 4]);
    let cst = 1.5;
    let n = 12.0;
    let identity = 4.0 * cst * cst / (n * n) * c.sum_squared_sizes();
    let exact = exact_design_moments(&g, &c, |_| vec![cst; 12]).unwrap();
    let exact_ok = (exact.variance - identity).abs() <= 1e-12 * identity && exact.mean.abs() <= 1e-12;
    let mc = monte_carlo_mse(&g, &c, &OutcomeModel::constant(cst), 0.0, 10_000, 4).unwrap();
    let mc_ok = (mc.mse - identity).abs() <= 3.0 * mc.se;
    outcome(
        exact_ok && mc_ok,
        format!(
            "identity {identity:.6}, enumerated {:.6}, MC {:.6} +- {:.6}",
            exact.variance, mc.mse, mc.se
        ),
    )
}

fn sdp_sandwich() -> Outcome {
    let cfg = SolverConfig {
        tol_primal: 1e-9,
        tol_dual: 1e-9,
        max_iter: 50_000,
        ..SolverConfig::default()
    };
    let het = Heterogeneity::default();
    let mut checked = 0;
    let mut min_gap = f64::INFINITY;
    let mut max_diag: f64 = 0.0;
    let mut min_eig = f64::INFINITY;
    for (_, g) in common::corpus().into_iter().filter(|(_, g)| g.n() <= 10) {
        let parts = common::all_partitions(g.n());
        for xi in [0.5, 1.0, 2.0, 5.0] {
            let c = build_trace_matrix(&g, xi, &het).unwrap();
            let best = parts
                .iter()
                .map(|p| integral_trace_value(&c, p).unwrap())
                .fold(f64::NEG_INFINITY, f64::max);
            let sol = solve_sdp(&c.matrix, &cfg).unwrap();
            min_gap = min_gap.min(sol.objective - best);
            max_diag = sol.x.diagonal().iter().fold(max_diag, |m, d| m.max((d - 1.0).abs()));
            min_eig = min_eig.min(sol.x.clone().symmetric_eigenvalues().min());
            checked += 1;
        }
    }
    outcome(
        min_gap >= -1e-6 && max_diag <= 1e-6 && min_eig >= -1e-6,
        format!(
            "{checked} (graph, xi) pairs, min(sdp - best) = {min_gap:.3e}, max|X_ii - 1| = {max_diag:.1e}, min eig = {min_eig:.1e}"
        ),
    )
}

fn small_graph_optimality() -> Outcome {
    let het = Heterogeneity::default();
    let grid = [0.5, 1.0, 2.0, 5.0];
    let runs = 50;
    let mut near = 0;
    let mut beaten_by_trivial = 0;
    let mut worst_ratio: f64 = 0.0;
    for s in 0..runs {
        let n = 5 + (s as usize) % 4;
        let g = match s % 3 {
            0 => erdos_renyi(n, 0.4, s).unwrap(),
            1 => geometric(n, s).unwrap(),
            _ => barabasi_albert(&BarabasiParams::new(n), s).unwrap(),
        };
        let xi = grid[(s as usize / 3) % grid.len()];
        let optimum = common::all_partitions(n)
            .iter()
            .map(|p| weighted_objective(&g, p, xi, &het).unwrap())
            .fold(f64::INFINITY, f64::min);
        let got = causal_cluster(&g, xi, 1, n, &het, &SolverConfig::default().with_seed(s)).unwrap();
        let obj = weighted_objective(&g, &got.clustering, xi, &het).unwrap();
        let ratio = obj / optimum;
        worst_ratio = worst_ratio.max(ratio);
        if ratio <= 1.02 {
            near += 1;
        }
        let (single, whole) = Clustering::trivial_partitions(n);
        let trivial = weighted_objective(&g, &single, xi, &het)
            .unwrap()
            .min(weighted_objective(&g, &whole, xi, &het).unwrap());
        if obj > trivial + 1e-12 {
            beaten_by_trivial += 1;
        }
    }
    outcome(
        near * 10 >= runs * 9 && beaten_by_trivial == 0,
        format!("{near}/{runs} within 2% of optimum, worst ratio {worst_ratio:.4}, {beaten_by_trivial} worse than a trivial design"),
    )
}

fn desk_scale_replication() -> Outcome {
    let cfg = SolverConfig {
        tol_primal: 1e-3,
        tol_dual: 1e-3,
        kmeans_restarts: 3,
        ..SolverConfig::default()
    };
    let het = Heterogeneity::default();
    let reps = 100u64;
    let mut failures = Vec::new();
    let mut cells = 0;
    let mut tightest = (f64::INFINITY, String::new());
    for kind in ["er", "geometric", "ba"] {
        for n in [50usize, 100] {
            let graphs: Vec<Graph> = (0..reps)
                .map(|s| match kind {
                    "er" => erdos_renyi(n, 2.0 / n as f64, s).unwrap(),
                    "geometric" => geometric(n, s).unwrap(),
                    _ => barabasi_albert(&BarabasiParams::new(n), s).unwrap(),
                })
                .collect();
            for xi in [1.0, 5.0, 15.0] {
                let mut scores = vec![Vec::with_capacity(reps as usize); 5];
                for (s, g) in graphs.iter().enumerate() {
                    let s = s as u64;
                    let ours = causal_cluster(g, xi, 1, n, &het, &cfg.clone().with_seed(s)).unwrap();
                    scores[0].push(weighted_objective(g, &ours.clustering, xi, &het).unwrap());
                    let others = [
                        epsilon_net(g, 3, s).unwrap(),
                        spectral_fixed(g, None, s).unwrap(),
                        louvain(g, s),
                        random_balanced(g, n / 3, s).unwrap(),
                    ];
                    for (j, c) in others.iter().enumerate() {
                        scores[j + 1].push(weighted_objective(g, c, xi, &het).unwrap());
                    }
                }
                let m: Vec<f64> = scores.into_iter().map(common::median).collect();
                let best_other = m[1..].iter().copied().fold(f64::INFINITY, f64::min);
                let cell = format!("{kind} n={n} xi={xi}");
                if m[0] > best_other {
                    failures.push(format!("{cell}: {:.4} > {best_other:.4}", m[0]));
                }
                if best_other - m[0] < tightest.0 {
                    tightest = (best_other - m[0], cell);
                }
                cells += 1;
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{cells} cells, tightest margin {:.4} at {}", tightest.0, tightest.1)
    } else {
        failures.join("; ")
    };
    outcome(failures.is_empty(), detail)
}

fn xi_k_monotonicity() -> Outcome {
    let cfg = SolverConfig {
        tol_primal: 1e-3,
        tol_dual: 1e-3,
        kmeans_restarts: 3,
        ..SolverConfig::default()
    };
    let het = Heterogeneity::default();
    let grid = [1.0, 3.0, 5.0, 10.0, 15.0];
    let n = 50;
    let seeds = 20u64;
    let mut pass = true;
    let mut parts = Vec::new();
    for kind in ["er", "geometric", "ba"] {
        let mut total = 0.0;
        for s in 0..seeds {
            let g = match kind {
                "er" => erdos_renyi(n, 2.0 / n as f64, s).unwrap(),
                "geometric" => geometric(n, s).unwrap(),
                _ => barabasi_albert(&BarabasiParams::new(n), s).unwrap(),
            };
            let ks: Vec<f64> = grid
                .iter()
                .map(|&xi| causal_cluster(&g, xi, 1, n, &het, &cfg.clone().with_seed(s)).unwrap().clustering.k() as f64)
                .collect();
            total += common::spearman(&grid, &ks);
        }
        let rho = total / seeds as f64;
        pass &= rho >= 0.8;
        parts.push(format!("{kind} {rho:.3}"));
    }
    outcome(pass, format!("mean Spearman(xi, K): {}", parts.join(", ")))
}

fn documentation_note() -> Outcome {
    let readme = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../README.md");
    let text = std::fs::read_to_string(readme).unwrap_or_default();
    let section = text
        .split("## ")
        .find(|s| s.starts_with("Not reproduced"))
        .unwrap_or_default();
    let ok = ["xi_from_psi_phi", "xi_threshold", "873", "3600"].iter().all(|k| section.contains(k));
    outcome(ok, "README states which results rest on unavailable data")
}

fn main() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, Duration); 9] = [
        ("1 rule-of-thumb constants", rule_of_thumb_constants, Duration::from_secs(1)),
        ("2 calibrated xi", calibration_arithmetic, Duration::from_secs(1)),
        ("3 worst-case bias attained", worst_case_attainment, Duration::from_secs(30)),
        ("4 constant-outcome variance", constant_outcome_variance, Duration::from_secs(10)),
        ("5 SDP feasibility and sandwich", sdp_sandwich, Duration::from_secs(120)),
        ("6 small-graph near-optimality", small_graph_optimality, Duration::from_secs(300)),
        ("7 beats baselines at desk scale", desk_scale_replication, Duration::from_secs(900)),
        ("8 K grows with xi", xi_k_monotonicity, Duration::MAX),
        ("9 unavailable-data note", documentation_note, Duration::MAX),
    ];
    let mut failed = 0;
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let pass = result.pass && elapsed <= budget;
        if !pass {
            failed += 1;
        }
        let over = if elapsed > budget { " [over time budget]" } else { "" };
        println!(
            "{} criterion {name}: {} ({:.2?}){over}",
            if pass { "PASS" } else { "FAIL" },
            result.detail,
            elapsed
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
