//! `graphprod` command-line frontend.
//!
//! Exit status: 0 on success, 2 on usage errors, 1 on domain errors and 3
//! when an experiment misses its acceptance tolerance.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphprod::cliques::{count_k_cliques_with, CensusOptions, DEFAULT_NODE_BUDGET};
use graphprod::generators::{density_calibrated_spec, generate, GeneratorSpec, ModelTag, SMALL_WORLD_REWIRE};
use graphprod::io::{read_edge_list_file, write_atomic, write_edge_list, write_vertex_map};
use graphprod::mcs::{mcs_brute_force, mcs_via_modular_clique, McsResult};
use graphprod::metrics::{vertex_metrics, write_vertex_metrics_csv};
use graphprod::montecarlo::{acceptance_check, run_experiment, write_plot_data, ExperimentConfig, ExperimentKind};
use graphprod::products::{product_with_cap, DEFAULT_VERTEX_CAP};
use graphprod::theory::{predict, PredictionKind, Probability, DEFAULT_LOWER_M};
use graphprod::{Error, ProductKind, RngSeed};

#[derive(Parser)]
#[command(name = "graphprod", version, about = "Tensor and modular products of random graphs")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Build the tensor or modular product of two edge-list graphs.
    Product(ProductArgs),
    /// Count k-cliques for every k up to --kmax.
    Census(CensusArgs),
    /// Per-vertex degree, A_k, C_k and local efficiency.
    Metrics(MetricsArgs),
    /// Evaluate closed-form predictions.
    Theory(TheoryArgs),
    /// Maximum common induced subgraph of two graphs.
    Mcs(McsArgs),
    /// Run a replicated Monte Carlo experiment.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Args)]
struct GenerateArgs {
    /// erdos-renyi (er), random-regular, watts-strogatz, barabasi-albert, complete, path, empty.
    #[arg(long)]
    model: String,
    #[arg(long)]
    n: usize,
    /// Edge probability (erdos-renyi).
    #[arg(long)]
    p: Option<f64>,
    /// Degree (random-regular).
    #[arg(long)]
    d: Option<usize>,
    /// Ring degree (watts-strogatz).
    #[arg(long)]
    k: Option<usize>,
    /// Rewiring probability (watts-strogatz).
    #[arg(long)]
    beta: Option<f64>,
    /// Attachment count (barabasi-albert).
    #[arg(long)]
    m: Option<usize>,
    /// Pick model parameters for this edge density instead.
    #[arg(long)]
    density: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// Output edge list (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ProductArgs {
    #[arg(long, value_parser = parse_product_kind)]
    kind: ProductKind,
    #[arg(short = 'a', long = "left")]
    a: PathBuf,
    #[arg(short = 'b', long = "right")]
    b: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    /// Vertex map sidecar (default: OUTPUT.map).
    #[arg(long)]
    map: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_VERTEX_CAP)]
    cap: usize,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    kmax: usize,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Also write per-vertex counts as CSV `v,k,a_k`.
    #[arg(long)]
    per_vertex: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MetricsArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TheoryArgs {
    /// Comma-separated prediction kinds, or `all`.
    #[arg(long)]
    kind: String,
    /// Comma-separated factor sizes.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Edge probability, as a decimal or a fraction `a/b`.
    #[arg(long)]
    p: String,
    #[arg(long)]
    k: Option<usize>,
    /// M for the lower clique-number threshold.
    #[arg(long = "lower-m", default_value_t = DEFAULT_LOWER_M)]
    lower_m: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum McsMethodArg {
    ModularClique,
    BruteForce,
}

#[derive(Args)]
struct McsArgs {
    #[arg(short = 'a', long = "left")]
    a: PathBuf,
    #[arg(short = 'b', long = "right")]
    b: PathBuf,
    #[arg(long, value_enum, default_value = "modular-clique")]
    method: McsMethodArg,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Largest size tried by the brute-force method.
    #[arg(long, default_value_t = 8)]
    size_cap: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Experiment name, e.g. clique-count-mean or isolated-mean.
    #[arg(long, required_unless_present = "config")]
    name: Option<String>,
    /// JSON experiment config; flags given alongside override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated factor sizes.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    /// Edge probability (c for isolated-wlln, density for model-comparison).
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    replicas: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    stream: Option<u64>,
    /// Comma-separated model tags for model-comparison.
    #[arg(long, value_delimiter = ',')]
    models: Vec<String>,
    #[arg(long)]
    probes: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Report output (JSON, or CSV rows with --format csv).
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Plot-ready CSV `series,n,mean,std_error,theory`.
    #[arg(long)]
    plot: Option<PathBuf>,
}

fn parse_product_kind(s: &str) -> std::result::Result<ProductKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Domain(Error),
    Acceptance(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Product(a) => cmd_product(a),
        Command::Census(a) => cmd_census(a),
        Command::Metrics(a) => cmd_metrics(a),
        Command::Theory(a) => cmd_theory(a),
        Command::Mcs(a) => cmd_mcs(a),
        Command::Experiment(a) => cmd_experiment(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Acceptance(msg)) => {
            eprintln!("acceptance failure: {msg}");
            ExitCode::from(3)
        }
    }
}

/// Writes to `path` atomically, or to stdout when no path is given.
fn emit<F>(path: Option<&Path>, write: F) -> graphprod::Result<()>
where
    F: FnOnce(&mut dyn Write) -> graphprod::Result<()>,
{
    match path {
        Some(p) => write_atomic(p, write),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)?;
            lock.flush()?;
            Ok(())
        }
    }
}

/// One-line summary: stdout when the payload went to a file, stderr otherwise.
fn summary(to_file: bool, line: String) {
    if to_file {
        println!("{line}");
    } else {
        eprintln!("{line}");
    }
}

fn require<T>(v: Option<T>, flag: &str, model: &str) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for model {model}")))
}

fn cmd_generate(a: GenerateArgs) -> CliResult {
    let model: ModelTag = a.model.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let name = model.as_str();
    let spec = if let Some(density) = a.density {
        density_calibrated_spec(model, a.n, density)?
    } else {
        match model {
            ModelTag::ErdosRenyi => GeneratorSpec::ErdosRenyi { n: a.n, p: require(a.p, "p", name)? },
            ModelTag::RandomRegular => GeneratorSpec::RandomRegular { n: a.n, d: require(a.d, "d", name)? },
            ModelTag::WattsStrogatz => GeneratorSpec::WattsStrogatz {
                n: a.n,
                k: require(a.k, "k", name)?,
                beta: a.beta.unwrap_or(SMALL_WORLD_REWIRE),
            },
            ModelTag::BarabasiAlbert => GeneratorSpec::BarabasiAlbert { n: a.n, m: require(a.m, "m", name)? },
            ModelTag::Complete => GeneratorSpec::Complete { n: a.n },
            ModelTag::Path => GeneratorSpec::Path { n: a.n },
            ModelTag::Empty => GeneratorSpec::Empty { n: a.n },
        }
    };
    let g = generate(&spec, RngSeed::new(a.seed).with_stream(a.stream))?;
    emit(a.output.as_deref(), |w| write_edge_list(&g, w))?;
    summary(
        a.output.is_some(),
        format!("generate: {name} n={} m={} seed={} stream={}", g.n(), g.edge_count(), a.seed, a.stream),
    );
    Ok(())
}

fn cmd_product(a: ProductArgs) -> CliResult {
    let g = read_edge_list_file(&a.a)?;
    let h = read_edge_list_file(&a.b)?;
    let (t, map) = product_with_cap(a.kind, &g, &h, a.cap)?;
    let map_path = a.map.unwrap_or_else(|| {
        let mut s = a.output.clone().into_os_string();
        s.push(".map");
        PathBuf::from(s)
    });
    write_atomic(&a.output, |w| write_edge_list(&t, w))?;
    write_atomic(&map_path, |w| write_vertex_map(&map, w))?;
    println!(
        "product: {} n={} m={} -> {} (map {})",
        a.kind,
        t.n(),
        t.edge_count(),
        a.output.display(),
        map_path.display()
    );
    Ok(())
}

fn cmd_census(a: CensusArgs) -> CliResult {
    if a.kmax == 0 {
        return Err(Failure::Usage("--kmax must be at least 1".into()));
    }
    let g = read_edge_list_file(&a.input)?;
    let opts = CensusOptions { budget: a.budget, per_vertex: a.per_vertex.is_some() };
    let census = count_k_cliques_with(&g, a.kmax, &opts)?;
    let map = census.to_json_map();
    emit(a.output.as_deref(), |w| {
        match a.format {
            Format::Csv => {
                writeln!(w, "k,count")?;
                for (k, c) in &map {
                    writeln!(w, "{k},{c}")?;
                }
            }
            _ => writeln!(w, "{}", serde_json::to_string(&map)?)?,
        }
        Ok(())
    })?;
    if let Some(path) = &a.per_vertex {
        write_atomic(path, |w| census.write_per_vertex_csv(w))?;
    }
    let top = map.iter().next_back().map(|(k, c)| format!("X_{k}={c}")).unwrap_or_default();
    summary(
        a.output.is_some(),
        format!("census: n={} kmax={} {top} nodes={}", g.n(), a.kmax, census.nodes_explored()),
    );
    Ok(())
}

fn cmd_metrics(a: MetricsArgs) -> CliResult {
    if a.k == 0 {
        return Err(Failure::Usage("--k must be at least 1".into()));
    }
    let g = read_edge_list_file(&a.input)?;
    let rows = vertex_metrics(&g, a.k)?;
    emit(a.output.as_deref(), |w| match a.format {
        Format::Json => {
            let out: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "v": r.v,
                        "degree": r.degree,
                        "a_k": r.a_k,
                        "c_k": r.c_k.to_string(),
                        "eff": r.eff.to_string(),
                    })
                })
                .collect();
            writeln!(w, "{}", serde_json::to_string_pretty(&out)?)?;
            Ok(())
        }
        _ => write_vertex_metrics_csv(&rows, w),
    })?;
    summary(a.output.is_some(), format!("metrics: n={} k={}", g.n(), a.k));
    Ok(())
}

fn cmd_theory(a: TheoryArgs) -> CliResult {
    let kinds: Vec<PredictionKind> = if a.kind == "all" {
        PredictionKind::ALL.to_vec()
    } else {
        a.kind
            .split(',')
            .map(|s| s.trim().parse())
            .collect::<graphprod::Result<_>>()
            .map_err(|e| Failure::Usage(e.to_string()))?
    };
    if a.n.is_empty() {
        return Err(Failure::Usage("--n is required".into()));
    }
    let p: Probability = a.p.parse()?;
    let mut preds = Vec::new();
    for &kind in &kinds {
        for &n in &a.n {
            if kind.needs_k() && a.k.is_none() {
                if a.kind == "all" {
                    continue;
                }
                return Err(Failure::Usage(format!("--k is required for {kind}")));
            }
            preds.push(predict(kind, n, &p, a.k, a.lower_m)?);
        }
    }
    emit(a.output.as_deref(), |w| {
        match a.format {
            Format::Json => {
                let out: Vec<serde_json::Value> = preds
                    .iter()
                    .map(|t| {
                        serde_json::json!({
                            "kind": t.kind.as_str(),
                            "n": t.n,
                            "p": a.p,
                            "k": t.k,
                            "value": t.value.to_string(),
                        })
                    })
                    .collect();
                writeln!(w, "{}", serde_json::to_string_pretty(&out)?)?;
            }
            Format::Text => {
                for t in &preds {
                    writeln!(w, "{}", t.value)?;
                }
            }
            Format::Csv => {
                writeln!(w, "kind,n,p,k,value")?;
                for t in &preds {
                    let k = t.k.map(|k| k.to_string()).unwrap_or_default();
                    writeln!(w, "{},{},{},{},{}", t.kind, t.n, a.p, k, t.value)?;
                }
            }
        }
        Ok(())
    })?;
    if a.output.is_some() {
        println!("theory: {} predictions", preds.len());
    }
    Ok(())
}

fn mcs_json(r: &McsResult) -> serde_json::Value {
    serde_json::json!({
        "size": r.size,
        "mapping": r.mapping.iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
        "method": r.method,
    })
}

fn cmd_mcs(a: McsArgs) -> CliResult {
    let g = read_edge_list_file(&a.a)?;
    let h = read_edge_list_file(&a.b)?;
    let r = match a.method {
        McsMethodArg::ModularClique => mcs_via_modular_clique(&g, &h, a.budget)?,
        McsMethodArg::BruteForce => mcs_brute_force(&g, &h, a.size_cap)?,
    };
    emit(a.output.as_deref(), |w| {
        writeln!(w, "{}", serde_json::to_string(&mcs_json(&r))?)?;
        Ok(())
    })?;
    summary(a.output.is_some(), format!("mcs: size={} ({} and {} vertices)", r.size, g.n(), h.n()));
    Ok(())
}

fn experiment_config(a: &ExperimentArgs) -> std::result::Result<ExperimentConfig, Failure> {
    let usage = |e: Error| Failure::Usage(e.to_string());
    let mut cfg = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(Error::from)?;
            serde_json::from_str::<ExperimentConfig>(&text).map_err(|e| usage(Error::from(e)))?
        }
        None => {
            let name = a.name.as_deref().expect("clap enforces --name or --config");
            let kind: ExperimentKind = name.parse().map_err(usage)?;
            if a.n.is_empty() {
                return Err(Failure::Usage("--n is required".into()));
            }
            let p = a.p.ok_or_else(|| Failure::Usage("--p is required".into()))?;
            let replicas = a.replicas.ok_or_else(|| Failure::Usage("--replicas is required".into()))?;
            ExperimentConfig::new(kind, a.n.clone(), p, replicas, 0)
        }
    };
    if let Some(name) = &a.name {
        cfg.experiment = name.parse().map_err(usage)?;
    }
    if !a.n.is_empty() {
        cfg.n_grid = a.n.clone();
    }
    if let Some(p) = a.p {
        cfg.p = p;
    }
    if a.k.is_some() {
        cfg.k = a.k;
    }
    if let Some(r) = a.replicas {
        cfg.replicas = r;
    }
    if let Some(s) = a.seed {
        cfg.seed.seed = s;
    }
    if let Some(s) = a.stream {
        cfg.seed.stream = s;
    }
    if !a.models.is_empty() {
        cfg.models = a
            .models
            .iter()
            .map(|m| m.parse())
            .collect::<graphprod::Result<_>>()
            .map_err(usage)?;
    }
    if let Some(v) = a.probes {
        cfg.probes = v;
    }
    if let Some(v) = a.budget {
        cfg.budget = v;
    }
    if let Some(v) = a.tolerance {
        cfg.tolerance = v;
    }
    cfg.validate().map_err(usage)?;
    Ok(cfg)
}

fn cmd_experiment(a: ExperimentArgs) -> CliResult {
    let cfg = experiment_config(&a)?;
    let report = run_experiment(&cfg)?;
    let write_report = |w: &mut dyn Write| -> graphprod::Result<()> {
        match a.format {
            Format::Csv | Format::Text => {
                writeln!(w, "n,statistic,mean,variance,std_error,theory,z_score,replicas")?;
                for r in &report.rows {
                    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
                    writeln!(
                        w,
                        "{},{},{},{},{},{},{},{}",
                        r.n,
                        r.statistic,
                        r.mean,
                        r.variance,
                        r.std_error,
                        opt(r.theory),
                        opt(r.z_score),
                        r.replicas
                    )?;
                }
            }
            Format::Json => writeln!(w, "{}", report.to_json()?)?,
        }
        Ok(())
    };
    match &a.output {
        Some(path) => write_atomic(path, write_report)?,
        None if a.plot.is_none() => emit(None, write_report)?,
        None => {}
    }
    if let Some(path) = &a.plot {
        write_atomic(path, |w| write_plot_data(&report, w))?;
    }
    let verdict = acceptance_check(&report)?;
    for d in &verdict.details {
        eprintln!("{d}");
    }
    let zs: Vec<String> = report
        .rows
        .iter()
        .filter_map(|r| r.z_score.map(|z| format!("{}@{}: z={z:.3}", r.statistic, r.n)))
        .collect();
    summary(
        a.output.is_some() || a.plot.is_some(),
        format!(
            "experiment: {} rows={} {} {}",
            cfg.experiment,
            report.rows.len(),
            zs.join(" "),
            if verdict.passed { "PASS" } else { "FAIL" }
        ),
    );
    if verdict.passed {
        Ok(())
    } else {
        let failed: Vec<&String> = verdict.details.iter().filter(|d| d.starts_with("FAIL")).collect();
        Err(Failure::Acceptance(format!("{failed:?}")))
    }
}
