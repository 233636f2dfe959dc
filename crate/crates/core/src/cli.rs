//! The `causal-cluster` command-line tool.
//!
//! Exit status is 0 on success, 1 on a usage error and 2 when a computation
//! fails; failures print `error: <ErrorName>: <message>` to stderr.

use std::collections::HashMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use serde::Serialize;

use crate::baselines;
use crate::error::{Error, Result};
use crate::graph::{self, BarabasiParams, Delimiter, EdgeListFormat, Graph};
use crate::metrics::{self, DesignReport, Heterogeneity, RuleOfThumb};
use crate::optimizer::{self, SolverConfig};
use crate::partition::Clustering;
use crate::sim::{self, OutcomeModel};
use crate::tuning::{self, PhiRange, XiInterval};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "causal-cluster", version, about = "Cluster designs for experiments on networks")]
#[command(args_override_self = true)]
pub struct Cli {
    /// Worker threads for sweeps and simulations (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// File of `key=value` lines that override command-line flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a synthetic network.
    Generate(GenerateArgs),
    /// Binarize a weighted graph at a weight percentile.
    Threshold(ThresholdArgs),
    /// Partition a graph.
    Cluster(ClusterArgs),
    /// Score a clustering.
    Evaluate(EvaluateArgs),
    /// Score clusterings across a grid of xi values.
    Frontier(FrontierArgs),
    /// Cluster or Bernoulli randomization?
    Decide(DecideArgs),
    /// Monte Carlo error of the difference-in-means estimator.
    Simulate(SimulateArgs),
    /// Calibrate xi and the spillover range from baseline data.
    Tune(TuneArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DelimiterArg {
    Whitespace,
    Tab,
    Comma,
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Edge list: `u v [w]` per line, `#` comments, `node u` for isolated nodes.
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value = "whitespace")]
    pub delimiter: DelimiterArg,
}

impl GraphInput {
    fn load(&self) -> Result<Graph> {
        let delimiter = match self.delimiter {
            DelimiterArg::Whitespace => Delimiter::Whitespace,
            DelimiterArg::Tab => Delimiter::Tab,
            DelimiterArg::Comma => Delimiter::Comma,
        };
        graph::read_edge_list_file(&self.graph, &EdgeListFormat { delimiter })
    }
}

#[derive(Debug, Args)]
pub struct HetArgs {
    #[arg(long, default_value_t = 1.0)]
    pub psi_bar: f64,
    #[arg(long, default_value_t = 1.0)]
    pub phi_bar: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    /// CSV `node,value` of per-unit spillover scales in (0, 1].
    #[arg(long)]
    pub alpha: Option<PathBuf>,
    /// CSV `node,value` of per-unit outcome scales.
    #[arg(long)]
    pub psi: Option<PathBuf>,
}

impl HetArgs {
    fn build(&self, g: &Graph) -> Result<Heterogeneity> {
        let mut het = Heterogeneity::homogeneous(self.psi_bar, self.phi_bar, self.lambda);
        if let Some(p) = &self.alpha {
            het = het.with_alpha(read_node_values(p, g)?);
        }
        if let Some(p) = &self.psi {
            het = het.with_psi(read_node_values(p, g)?);
        }
        het.validate(g.n())?;
        Ok(het)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GraphModel {
    Er,
    Geometric,
    Ba,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub model: GraphModel,
    #[arg(long)]
    pub n: usize,
    /// Edge probability for `er` (default 2/n).
    #[arg(long)]
    pub p: Option<f64>,
    /// Seed-block size for `ba` (default n/5).
    #[arg(long)]
    pub seed_block: Option<usize>,
    /// Edge probability inside the `ba` seed block (default 10/n).
    #[arg(long)]
    pub seed_p: Option<f64>,
    #[arg(long, env = "CC_SEED")]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[command(flatten)]
    pub input: GraphInput,
    /// Keep edges whose weight is above this percentile (0 keeps all).
    #[arg(long)]
    pub percentile: f64,
    /// Then connect nodes within this many hops.
    #[arg(long)]
    pub power: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Causal,
    EqualSize,
    Enet,
    Spectral,
    Louvain,
    Random,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Skip the local-move polish of candidate partitions.
    #[arg(long)]
    pub no_refine: bool,
    /// Solve the relaxation again for every K.
    #[arg(long)]
    pub resolve_per_k: bool,
    /// CSV log of SDP iterations.
    #[arg(long)]
    pub trace_log: Option<PathBuf>,
}

impl SolverArgs {
    fn config(&self, seed: u64) -> SolverConfig {
        let mut cfg = SolverConfig::default().with_seed(seed);
        if let Some(t) = self.tol {
            cfg.tol_primal = t;
            cfg.tol_dual = t;
        }
        if let Some(m) = self.max_iter {
            cfg.max_iter = m;
        }
        if let Some(r) = self.restarts {
            cfg.kmeans_restarts = r;
        }
        cfg.refine = !self.no_refine;
        cfg.resolve_per_k = self.resolve_per_k;
        cfg.record_trace = self.trace_log.is_some();
        cfg
    }
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long, value_enum, default_value = "causal")]
    pub method: Method,
    /// Variance weight (default psi_bar / (lambda phi_bar^2), or 1 / phi_bar^2 with --psi).
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long, default_value_t = 1)]
    pub kmin: usize,
    /// Largest K tried by `causal` (default n).
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Cluster count for `equal-size`, `spectral` and `random`.
    #[arg(long)]
    pub k: Option<usize>,
    /// Hop radius for `enet`.
    #[arg(long, default_value_t = 3)]
    pub eps: usize,
    #[arg(long, env = "CC_SEED")]
    pub seed: u64,
    #[command(flatten)]
    pub het: HetArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Clustering CSV destination; the report goes to stdout when set.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long)]
    pub clusters: PathBuf,
    #[arg(long)]
    pub xi: Option<f64>,
    #[command(flatten)]
    pub het: HetArgs,
}

#[derive(Debug, Args)]
pub struct FrontierArgs {
    #[command(flatten)]
    pub input: GraphInput,
    /// Clustering CSV; repeat for several. The file stem is the id.
    #[arg(long, required = true)]
    pub clusters: Vec<PathBuf>,
    /// Comma-separated xi values.
    #[arg(long, value_delimiter = ',', required = true)]
    pub xi_grid: Vec<f64>,
    #[command(flatten)]
    pub het: HetArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long)]
    pub clusters: PathBuf,
    #[command(flatten)]
    pub het: HetArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModelArg {
    Exogenous,
    Endogenous,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub input: GraphInput,
    #[arg(long)]
    pub clusters: PathBuf,
    #[arg(long, value_enum, default_value = "exogenous")]
    pub model: ModelArg,
    #[arg(long, default_value_t = 0.0)]
    pub intercept: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0.0)]
    pub kappa0: f64,
    #[arg(long, default_value_t = 0.0)]
    pub kappa1: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0, conflicts_with = "sigma2")]
    pub noise_sd: f64,
    /// Noise variance; alternative to --noise-sd.
    #[arg(long)]
    pub sigma2: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub reps: usize,
    #[arg(long, env = "CC_SEED")]
    pub seed: u64,
    /// Per-replication CSV destination; the summary goes to stdout when set.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TuneArgs {
    #[command(flatten)]
    pub input: GraphInput,
    /// CSV `node,outcome,cov1,...` of pre-treatment data.
    #[arg(long)]
    pub baseline: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub beta_bar: f64,
    /// Spillover bounds to map to xi intervals (default: the estimated range).
    #[arg(long, value_delimiter = ',')]
    pub phi_bar: Vec<f64>,
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    match config_path(&argv) {
        Ok(Some(path)) => match read_config(&path) {
            Ok(extra) => argv.extend(extra),
            Err(e) => return fail(&e),
        },
        Ok(None) => {}
        Err(msg) => {
            eprintln!("error: {msg}");
            return 1;
        }
    }
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            Ok(pool) => pool.install(|| execute(cli.command)),
            Err(e) => Err(Error::InvalidParameter(e.to_string())),
        },
        None => execute(cli.command),
    };
    match result {
        Ok(()) => 0,
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> i32 {
    eprintln!("error: {}: {e}", e.name());
    2
}

fn config_path(argv: &[OsString]) -> std::result::Result<Option<PathBuf>, String> {
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--" {
            break;
        }
        if s == "--config" {
            return it
                .next()
                .map(|p| Some(PathBuf::from(p)))
                .ok_or_else(|| "--config needs a file".to_string());
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Ok(Some(PathBuf::from(p)));
        }
    }
    Ok(None)
}

/// `key=value` lines become trailing `--key=value` flags; `key=true`
/// becomes a bare `--key`, `key=false` is dropped.
fn read_config(path: &Path) -> Result<Vec<OsString>> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::MalformedLine {
            line: no + 1,
            reason: "expected key=value".into(),
        })?;
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        match v.trim() {
            "true" => out.push(format!("--{key}").into()),
            "false" => {}
            v => out.push(format!("--{key}={v}").into()),
        }
    }
    Ok(out)
}

fn execute(cmd: Command) -> Result<()> {
    match cmd {
        Command::Generate(a) => generate(a),
        Command::Threshold(a) => threshold(a),
        Command::Cluster(a) => cluster(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Frontier(a) => frontier(a),
        Command::Decide(a) => decide(a),
        Command::Simulate(a) => simulate(a),
        Command::Tune(a) => tune(a),
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

#[derive(Serialize)]
struct Versioned<T: Serialize> {
    schema: u32,
    #[serde(flatten)]
    body: T,
}

fn write_json<T: Serialize, W: Write>(body: T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(
        &mut out,
        &Versioned {
            schema: SCHEMA_VERSION,
            body,
        },
    )?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

fn print_json<T: Serialize>(body: T) -> Result<()> {
    write_json(body, io::stdout().lock())
}

fn read_clustering(path: &Path, g: &Graph) -> Result<Clustering> {
    Clustering::read_csv(BufReader::new(File::open(path)?), g)
}

/// CSV `node,value` with a header row, one row per graph node.
fn read_node_values(path: &Path, g: &Graph) -> Result<Vec<f64>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
    let mut vals: Vec<Option<f64>> = vec![None; g.n()];
    for rec in r.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != 2 {
            return Err(Error::MalformedLine {
                line,
                reason: format!("expected 2 fields, found {}", rec.len()),
            });
        }
        let i = g.index_of(&rec[0]).ok_or_else(|| Error::UnknownNode(rec[0].to_string()))?;
        let v: f64 = rec[1].parse().map_err(|_| Error::MalformedLine {
            line,
            reason: format!("bad number '{}'", &rec[1]),
        })?;
        if vals[i].replace(v).is_some() {
            return Err(Error::DuplicateNode(rec[0].to_string()));
        }
    }
    vals.into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or_else(|| Error::MissingNode(g.label(i).to_string())))
        .collect()
}

fn resolve_xi(xi: Option<f64>, het: &Heterogeneity) -> Result<f64> {
    match xi {
        Some(x) => Ok(x),
        None if het.psi.is_some() => {
            if !(het.phi_bar > 0.0) {
                return Err(Error::NonpositivePhi(het.phi_bar));
            }
            Ok(het.objective_xi())
        }
        None => tuning::xi_from_psi_phi(het.psi_bar, het.phi_bar, het.lambda),
    }
}

fn generate(a: GenerateArgs) -> Result<()> {
    let g = match a.model {
        GraphModel::Er => graph::erdos_renyi(a.n, a.p.unwrap_or(2.0 / a.n.max(1) as f64), a.seed)?,
        GraphModel::Geometric => graph::geometric(a.n, a.seed)?,
        GraphModel::Ba => {
            let mut p = BarabasiParams::new(a.n);
            p.seed_block = a.seed_block.or(p.seed_block);
            p.seed_p = a.seed_p.or(p.seed_p);
            graph::barabasi_albert(&p, a.seed)?
        }
    };
    let mut out = output(a.out.as_deref())?;
    graph::write_edge_list(&g, &mut out)?;
    out.flush()?;
    Ok(())
}

fn threshold(a: ThresholdArgs) -> Result<()> {
    let g = a.input.load()?;
    let mut t = graph::threshold(&g, a.percentile)?;
    if let Some(h) = a.power {
        t = graph::power_graph(&t, h)?;
    }
    let mut out = output(a.out.as_deref())?;
    graph::write_edge_list(&t, &mut out)?;
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SdpSummary {
    objective: f64,
    dual_bound: f64,
    converged: bool,
}

#[derive(Serialize)]
struct ClusterOutput {
    method: Method,
    seed: u64,
    #[serde(flatten)]
    report: DesignReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    sdp: Option<SdpSummary>,
}

fn cluster(a: ClusterArgs) -> Result<()> {
    let g = a.input.load()?;
    let het = a.het.build(&g)?;
    let xi = resolve_xi(a.xi, &het)?;
    let n = g.n();
    let cfg = a.solver.config(a.seed);
    let k_or = |default: usize| a.k.unwrap_or(default);
    let mut sdp = None;
    let clustering = match a.method {
        Method::Causal => {
            let r = optimizer::causal_cluster(&g, xi, a.kmin, a.kmax.unwrap_or(n), &het, &cfg)?;
            if let Some(path) = &a.solver.trace_log {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_path(path)?;
                for rec in &r.sdp_trace {
                    w.serialize(rec)?;
                }
                w.flush()?;
            }
            sdp = Some(SdpSummary {
                objective: r.sdp_objective,
                dual_bound: r.sdp_dual_bound,
                converged: r.sdp_converged,
            });
            r.clustering
        }
        Method::EqualSize => optimizer::spectral_equal_size(&g, xi, k_or(baselines::default_spectral_k(n)), &cfg)?,
        Method::Enet => baselines::epsilon_net(&g, a.eps, a.seed)?,
        Method::Spectral => baselines::spectral_fixed(&g, a.k, a.seed)?,
        Method::Louvain => baselines::louvain(&g, a.seed),
        Method::Random => baselines::random_balanced(&g, k_or(baselines::default_spectral_k(n)), a.seed)?,
    };
    let report = metrics::report(&g, &clustering, xi, &het)?;
    let body = ClusterOutput {
        method: a.method,
        seed: a.seed,
        report,
        sdp,
    };
    match &a.out {
        Some(p) => {
            let mut out = output(Some(p))?;
            clustering.write_csv(&g, &mut out)?;
            out.flush()?;
            print_json(body)
        }
        None => {
            clustering.write_csv(&g, io::stdout().lock())?;
            write_json(body, io::stderr().lock())
        }
    }
}

fn evaluate(a: EvaluateArgs) -> Result<()> {
    let g = a.input.load()?;
    let het = a.het.build(&g)?;
    let c = read_clustering(&a.clusters, &g)?;
    let xi = resolve_xi(a.xi, &het)?;
    print_json(metrics::report(&g, &c, xi, &het)?)
}

fn frontier(a: FrontierArgs) -> Result<()> {
    let g = a.input.load()?;
    let het = a.het.build(&g)?;
    let mut named = Vec::new();
    for p in &a.clusters {
        let id = p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned());
        named.push((id, read_clustering(p, &g)?));
    }
    let rows = metrics::frontier(&g, &named, &a.xi_grid, &het)?;
    let mut out = output(a.out.as_deref())?;
    metrics::write_frontier_csv(&rows, &mut out)?;
    out.flush()?;
    Ok(())
}

fn decide(a: DecideArgs) -> Result<()> {
    let g = a.input.load()?;
    let het = a.het.build(&g)?;
    let c = read_clustering(&a.clusters, &g)?;
    let r: RuleOfThumb = metrics::rule_of_thumb(&g, &c, &het)?;
    print_json(r)
}

#[derive(Serialize)]
struct SimulateSummary {
    mse: f64,
    se: f64,
    #[serde(rename = "R")]
    reps: usize,
    seed: u64,
    tau: f64,
}

fn simulate(a: SimulateArgs) -> Result<()> {
    let g = a.input.load()?;
    let c = read_clustering(&a.clusters, &g)?;
    let sd = a.sigma2.map_or(a.noise_sd, f64::sqrt);
    let mut model = OutcomeModel::exogenous(a.intercept, a.beta, a.kappa0, a.kappa1).with_noise_sd(sd);
    if let ModelArg::Endogenous = a.model {
        model = model.endogenous(a.gamma);
    }
    let tau = model.prepare(&g)?.tau()?;
    let mc = sim::monte_carlo_mse(&g, &c, &model, tau, a.reps, a.seed)?;
    let write_rows = |out: &mut dyn Write| -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        for r in &mc.replications {
            w.serialize(r)?;
        }
        w.flush()?;
        Ok(())
    };
    let summary = SimulateSummary {
        mse: mc.mse,
        se: mc.se,
        reps: a.reps,
        seed: a.seed,
        tau,
    };
    match &a.out {
        Some(p) => {
            let mut out = output(Some(p))?;
            write_rows(&mut out)?;
            out.flush()?;
            print_json(summary)
        }
        None => {
            let mut out = output(None)?;
            write_rows(&mut out)?;
            out.flush()?;
            write_json(summary, io::stderr().lock())
        }
    }
}

#[derive(Serialize)]
struct TuneOutput {
    sigma2: f64,
    gamma_hat: f64,
    phi_range: [f64; 2],
    phi_range_degenerate: bool,
    xi_intervals: Vec<XiInterval>,
}

/// Baseline CSV `node,outcome,cov1,...` as `(outcome, [1, covariates])`.
fn read_baseline(path: &Path, g: &Graph) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_path(path)?;
    let width = r.headers()?.len();
    if width < 2 {
        return Err(Error::MalformedLine {
            line: 1,
            reason: "expected node,outcome[,covariates...]".into(),
        });
    }
    let mut rows: HashMap<usize, Vec<f64>> = HashMap::new();
    for rec in r.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let i = g.index_of(&rec[0]).ok_or_else(|| Error::UnknownNode(rec[0].to_string()))?;
        let vals = rec
            .iter()
            .skip(1)
            .map(|s| {
                s.parse::<f64>().map_err(|_| Error::MalformedLine {
                    line,
                    reason: format!("bad number '{s}'"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.insert(i, vals).is_some() {
            return Err(Error::DuplicateNode(rec[0].to_string()));
        }
    }
    let n = g.n();
    let mut y = Vec::with_capacity(n);
    let mut x = DMatrix::from_element(n, width - 1, 1.0);
    for i in 0..n {
        let v = rows.get(&i).ok_or_else(|| Error::MissingNode(g.label(i).to_string()))?;
        y.push(v[0]);
        for (c, &cov) in v.iter().enumerate().skip(1) {
            x[(i, c)] = cov;
        }
    }
    Ok((y, x))
}

fn tune(a: TuneArgs) -> Result<()> {
    let g = a.input.load()?;
    let (y, x) = read_baseline(&a.baseline, &g)?;
    let sigma2 = tuning::residual_variance(&x, &y)?;
    let range: PhiRange = tuning::phi_range_from_endogenous(&g, &y, &x, a.beta_bar)?;
    let phis: Vec<f64> = if a.phi_bar.is_empty() {
        let mut v: Vec<f64> = [range.lower, range.upper].into_iter().filter(|&p| p > 0.0).collect();
        v.dedup();
        v
    } else {
        a.phi_bar.clone()
    };
    print_json(TuneOutput {
        sigma2,
        gamma_hat: range.gamma_hat,
        phi_range: [range.lower, range.upper],
        phi_range_degenerate: range.degenerate,
        xi_intervals: tuning::xi_range(sigma2, &phis)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn config_lines_become_flags() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("run.cfg");
        std::fs::write(&p, "# comment\nxi = 3.5\nno_refine=true\nresolve-per-k=false\n").unwrap();
        let flags: Vec<String> = read_config(&p).unwrap().into_iter().map(|s| s.into_string().unwrap()).collect();
        assert_eq!(flags, vec!["--xi=3.5", "--no-refine"]);
    }

    #[test]
    fn config_path_detection() {
        let args: Vec<OsString> = ["x", "cluster", "--config", "a.cfg"].iter().map(Into::into).collect();
        assert_eq!(config_path(&args).unwrap(), Some(PathBuf::from("a.cfg")));
        let args: Vec<OsString> = ["x", "--config=b.cfg"].iter().map(Into::into).collect();
        assert_eq!(config_path(&args).unwrap(), Some(PathBuf::from("b.cfg")));
    }
}
