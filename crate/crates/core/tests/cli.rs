use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use causal_cluster::metrics::read_frontier_csv;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_causal-cluster"));
    c.env_remove("CC_SEED");
    c
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn setup() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_path_buf();
    let o = run(&path, &["generate", "--model", "geometric", "--n", "40", "--seed", "3", "--out", "g.tsv"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    (dir, path)
}

fn json(bytes: &[u8]) -> serde_json::Value {
    serde_json::from_slice(bytes).unwrap()
}

#[test]
fn cluster_writes_csv_and_report() {
    let (_tmp, dir) = setup();
    let o = run(
        &dir,
        &[
            "cluster", "--method", "causal", "--graph", "g.tsv", "--xi", "3.29", "--kmin", "2", "--kmax", "20", "--seed",
            "7", "--tol", "1e-3", "--out", "c.csv", "--trace-log", "trace.csv",
        ],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report = json(&o.stdout);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["method"], "causal");
    assert_eq!(report["xi"], 3.29);
    assert!(report["K"].as_u64().unwrap() >= 1);
    assert!(report["sdp"]["dual_bound"].as_f64().unwrap() >= report["sdp"]["objective"].as_f64().unwrap());
    let csv = std::fs::read_to_string(dir.join("c.csv")).unwrap();
    assert!(csv.starts_with("node,cluster\n"));
    assert_eq!(csv.lines().count(), 41);
    let trace = std::fs::read_to_string(dir.join("trace.csv")).unwrap();
    assert!(trace.starts_with("iteration,primal_residual,dual_residual,objective\n"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let (_tmp, dir) = setup();
    for (method, out) in [("causal", "a"), ("causal", "b"), ("louvain", "la"), ("louvain", "lb"), ("enet", "ea"), ("enet", "eb")] {
        let o = run(
            &dir,
            &["cluster", "--method", method, "--graph", "g.tsv", "--xi", "2", "--seed", "5", "--tol", "1e-3", "--out", out],
        );
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    for (a, b) in [("a", "b"), ("la", "lb"), ("ea", "eb")] {
        assert_eq!(std::fs::read(dir.join(a)).unwrap(), std::fs::read(dir.join(b)).unwrap());
    }
    let again = run(&dir, &["generate", "--model", "geometric", "--n", "40", "--seed", "3"]);
    assert_eq!(again.stdout, std::fs::read(dir.join("g.tsv")).unwrap());
    let sims: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            let o = run(&dir, &["simulate", "--graph", "g.tsv", "--clusters", "a", "--beta", "1", "--kappa0", "-0.27", "--reps", "30", "--seed", "9"]);
            assert_eq!(code(&o), 0, "{}", stderr(&o));
            o.stdout
        })
        .collect();
    assert_eq!(sims[0], sims[1]);
}

#[test]
fn decide_reports_rule_of_thumb() {
    let (_tmp, dir) = setup();
    run(&dir, &["cluster", "--method", "louvain", "--graph", "g.tsv", "--seed", "1", "--out", "c.csv"]);
    let o = run(
        &dir,
        &["decide", "--graph", "g.tsv", "--clusters", "c.csv", "--psi-bar", "4", "--phi-bar", "0.25", "--lambda", "1"],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o.stdout);
    assert_eq!(r["schema"], 1);
    assert_eq!(r["xi"], 64.0);
    assert!(["cluster", "bernoulli"].contains(&r["decision"].as_str().unwrap()));
    let k = r["K"].as_f64().unwrap();
    let scaled = r["min_phi_bar"].as_f64().unwrap() * k.sqrt();
    assert!((r["min_phi_bar_sqrt_k"].as_f64().unwrap() - scaled).abs() < 1e-12);
}

#[test]
fn unknown_node_is_a_computation_error() {
    let (_tmp, dir) = setup();
    std::fs::write(dir.join("bad.csv"), "node,cluster\n0,0\nnot-a-node,1\n").unwrap();
    let o = run(&dir, &["evaluate", "--graph", "g.tsv", "--clusters", "bad.csv", "--xi", "1"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).starts_with("error: UnknownNode:"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_one() {
    let (_tmp, dir) = setup();
    let missing_seed = run(&dir, &["cluster", "--graph", "g.tsv"]);
    assert_eq!(code(&missing_seed), 1);
    assert!(stderr(&missing_seed).contains("--seed"));
    let bad_flag = run(&dir, &["evaluate", "--graph", "g.tsv", "--bogus"]);
    assert_eq!(code(&bad_flag), 1);
    assert!(stderr(&bad_flag).contains("--bogus"));
    assert_eq!(code(&run(&dir, &["--help"])), 0);
}

#[test]
fn seed_from_environment_and_config_overrides() {
    let (_tmp, dir) = setup();
    let o = bin()
        .current_dir(&dir)
        .env("CC_SEED", "4")
        .args(["cluster", "--method", "random", "--graph", "g.tsv", "--k", "4", "--out", "r.csv"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o.stdout)["seed"], 4);

    std::fs::write(dir.join("run.cfg"), "# overrides\nxi = 9\nmethod = louvain\n").unwrap();
    let o = run(&dir, &["cluster", "--graph", "g.tsv", "--xi", "1", "--seed", "1", "--out", "l.csv", "--config", "run.cfg"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o.stdout);
    assert_eq!(r["xi"], 9.0);
    assert_eq!(r["method"], "louvain");
}

#[test]
fn frontier_round_trips() {
    let (_tmp, dir) = setup();
    for (m, f) in [("louvain", "louvain.csv"), ("enet", "enet.csv")] {
        run(&dir, &["cluster", "--method", m, "--graph", "g.tsv", "--seed", "2", "--out", f]);
    }
    let o = run(
        &dir,
        &["frontier", "--graph", "g.tsv", "--clusters", "louvain.csv", "--clusters", "enet.csv", "--xi-grid", "0.5,1,5", "--out", "f.csv"],
    );
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let rows = read_frontier_csv(std::fs::File::open(dir.join("f.csv")).unwrap()).unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0].clustering_id, "louvain");
    assert_eq!(rows[5].clustering_id, "enet");
    for r in &rows {
        let o = run(&dir, &["evaluate", "--graph", "g.tsv", "--clusters", &format!("{}.csv", r.clustering_id), "--xi", &r.xi.to_string()]);
        let e = json(&o.stdout);
        assert_eq!(e["objective_abs"].as_f64().unwrap(), r.objective_abs);
        assert_eq!(e["bias_frac"].as_f64().unwrap(), r.bias_frac);
        assert_eq!(e["variance_proxy"].as_f64().unwrap(), r.variance_proxy);
    }
}

#[test]
fn threshold_and_tune() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("w.tsv"), "a\tb\t0.1\nb\tc\t0.9\nc\td\t0.5\nd\ta\t0.7\n").unwrap();
    let o = run(d, &["threshold", "--graph", "w.tsv", "--percentile", "50"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let kept = String::from_utf8(o.stdout).unwrap();
    assert!(kept.contains("b\tc") && !kept.contains("a\tb"));

    let mut base = String::from("node,outcome,x1\n");
    for (i, node) in ["a", "b", "c", "d"].iter().enumerate() {
        base.push_str(&format!("{node},{},{}\n", [0.3, 1.1, 0.9, 2.0][i], [1.0, 0.0, 2.0, 1.5][i]));
    }
    std::fs::write(d.join("base.csv"), base).unwrap();
    std::fs::write(d.join("ring.tsv"), "a\tb\nb\tc\nc\td\nd\ta\na\tc\n").unwrap();
    let o = run(d, &["tune", "--graph", "ring.tsv", "--baseline", "base.csv", "--phi-bar", "0.5,1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o.stdout);
    let sigma2 = r["sigma2"].as_f64().unwrap();
    let iv = r["xi_intervals"].as_array().unwrap();
    assert_eq!(iv.len(), 2);
    assert!((iv[0]["lower"].as_f64().unwrap() - 4.0 * sigma2).abs() < 1e-12);
    assert_eq!(iv[1]["upper"].as_f64().unwrap(), 4.0 * iv[1]["lower"].as_f64().unwrap());
}
