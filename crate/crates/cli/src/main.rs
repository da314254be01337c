//! Command-line front end: generate, ingest, match, rewire and run
//! experiments with deterministic seeds and machine-readable output.
//!
//! Every subcommand prints a one-line JSON summary to stdout and writes its
//! artifacts to the paths given by --out. All randomness flows from --seed
//! (drawn once and reported if omitted), and per-trial seeds are derived
//! from the master seed by index, so results do not depend on --jobs.

#![forbid(unsafe_code)]

use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use netcontrol::analysis::{
    concentration_experiment, convergence_experiment, er_limit, estimate_limit_ratio,
    neighborhood_histogram, ExperimentReport, ModelSpec,
};
use netcontrol::generators::{gen_er_directed, gen_pa, gen_regular_directed, RegularVariant};
use netcontrol::graph::io::{
    parse_graph_json_str, parse_inout_degrees, parse_total_degrees, write_edge_list_tsv,
    write_graph_json, write_labels_tsv,
};
use netcontrol::graph::{BallMode, DirectedMultigraph, DEFAULT_BALL_CAP};
use netcontrol::matching::{ratio, MatchMethod};
use netcontrol::rewiring::{rewire, RewireVariant};

#[derive(Parser)]
#[command(
    name = "netcontrol",
    version,
    about = "Directed matching ratio and controllability of random networks"
)]
struct Cli {
    /// Worker threads for experiment trials (default: all cores). Outputs
    /// are identical for any value.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random graph model and write its edge list.
    Generate(GenerateArgs),
    /// Compute a matching, the matching ratio m and the controllability
    /// parameter n_D of an ingested graph.
    Match(MatchArgs),
    /// Degree-preserving randomization of an ingested graph.
    Rewire(RewireArgs),
    /// Rewire a graph many times and compare the spread of m against the
    /// Azuma bound.
    Concentration(ConcentrationArgs),
    /// Track the mean of m across graph sizes for a model.
    Convergence(ConvergenceArgs),
    /// Closed-form Erdős–Rényi limit of m, optionally cross-estimated by
    /// Monte Carlo on random trees.
    Limit(LimitArgs),
    /// Empirical distribution of rooted neighborhood classes.
    Nbhd(NbhdArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Er,
    ConfigInout,
    ConfigTotal,
    Regular,
    Pa,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Inout,
    Total,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    TsvEdges,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Exact,
    Ks,
    Bounded,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Minus,
    Full,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Vertex count (er, regular, pa).
    #[arg(long)]
    n: Option<usize>,
    /// Erdős–Rényi parameter c: pair probability 2c/n, mean total degree 2c.
    #[arg(long)]
    c: Option<f64>,
    /// Edges per new vertex (pa) or per-vertex degree (regular).
    #[arg(long)]
    r: Option<usize>,
    /// Uniform-attachment probability (pa).
    #[arg(long)]
    alpha: Option<f64>,
    /// Degree file for the configuration models.
    #[arg(long)]
    degrees: Option<PathBuf>,
    /// Regular sub-model: inout = exact in/out degrees, total = oriented.
    #[arg(long, value_enum, default_value = "inout")]
    variant: VariantArg,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "tsv-edges")]
    format: GraphFormat,
}

#[derive(Args)]
struct MatchArgs {
    /// Edge-list TSV (arbitrary labels) or JSON graph file.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    method: MethodArg,
    /// Augmenting-path length bound for --method bounded (odd).
    #[arg(long = "T")]
    max_aug_len: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Where to write the driver vertices, one label per line.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RewireArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "tsv-edges")]
    format: GraphFormat,
}

#[derive(Args)]
struct ConcentrationArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    variant: VariantArg,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Report path prefix: writes PREFIX.csv and/or PREFIX.json.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "both")]
    format: ReportFormat,
}

#[derive(Args)]
struct ConvergenceArgs {
    /// er, regular, pa or empty (config models have no size parameter).
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Comma-separated ascending graph sizes, e.g. 1000,10000,100000.
    #[arg(long, value_delimiter = ',')]
    n: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    seeds_per_n: usize,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_enum, default_value = "inout")]
    variant: VariantArg,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "both")]
    format: ReportFormat,
}

#[derive(Args)]
struct LimitArgs {
    /// The limit is for the directed Erdős–Rényi model with mean total
    /// degree 2c.
    #[arg(long)]
    c: f64,
    /// Monte-Carlo cross-estimate sample count (enables the estimator).
    #[arg(long)]
    samples: Option<usize>,
    /// Augmenting-path bound for the estimator (odd).
    #[arg(long = "T", default_value_t = 9)]
    max_aug_len: usize,
    /// Tree truncation depth for the estimator (must exceed T).
    #[arg(long, default_value_t = 12)]
    depth: usize,
    /// Estimate on randomly oriented trees instead of undirected ones.
    #[arg(long, default_value_t = false)]
    directed: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NbhdArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    radius: usize,
    #[arg(long, value_enum, default_value = "minus")]
    mode: ModeArg,
    /// Root sample count; 0 or >= n means exhaustive.
    #[arg(long, default_value_t = 0)]
    samples: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Runtime(netcontrol::Error),
}

impl From<netcontrol::Error> for CliError {
    fn from(e: netcontrol::Error) -> Self {
        CliError::Runtime(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // Ignore the error if something already initialized the pool.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(cli.command) {
        Ok(summary) => println!("{summary}"),
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

/// Master seed: taken from the flag or drawn once and reported.
fn resolve_seed(seed: Option<u64>) -> (u64, bool) {
    match seed {
        Some(s) => (s, false),
        None => (rand::random::<u64>(), true),
    }
}

fn run(command: Command) -> Result<String, CliError> {
    match command {
        Command::Generate(args) => generate(args),
        Command::Match(args) => do_match(args),
        Command::Rewire(args) => do_rewire(args),
        Command::Concentration(args) => concentration(args),
        Command::Convergence(args) => convergence(args),
        Command::Limit(args) => limit(args),
        Command::Nbhd(args) => nbhd(args),
    }
}

fn write_graph(g: &DirectedMultigraph, path: &Path, format: GraphFormat) -> Result<(), CliError> {
    let file = std::fs::File::create(path).map_err(netcontrol::Error::from)?;
    let mut w = BufWriter::new(file);
    match format {
        GraphFormat::TsvEdges => write_edge_list_tsv(g, &mut w)?,
        GraphFormat::Json => write_graph_json(g, &mut w)?,
    }
    w.flush().map_err(netcontrol::Error::from)?;
    Ok(())
}

/// Reads a graph file; JSON when the content starts with '{', TSV otherwise.
/// Returns the graph and the per-id labels (identity for JSON input).
fn read_graph(path: &Path) -> Result<(DirectedMultigraph, Vec<String>, bool), CliError> {
    let text = std::fs::read_to_string(path).map_err(netcontrol::Error::from)?;
    if text.trim_start().starts_with('{') {
        let g = parse_graph_json_str(&text)?;
        let labels = (0..g.vertex_count()).map(|v| v.to_string()).collect();
        Ok((g, labels, true))
    } else {
        let parsed = netcontrol::graph::io::parse_edge_list_str(&text)?;
        let identity = parsed.labels_are_identity();
        Ok((parsed.graph, parsed.labels, identity))
    }
}

/// Label mapping goes next to the primary artifact (or the input when the
/// command writes none), only when the labels are not already 0..n-1.
fn emit_labels(
    labels: &[String],
    identity: bool,
    anchor: &Path,
) -> Result<Option<String>, CliError> {
    if identity {
        return Ok(None);
    }
    let path = anchor.with_extension("labels.tsv");
    let file = std::fs::File::create(&path).map_err(netcontrol::Error::from)?;
    let mut w = BufWriter::new(file);
    write_labels_tsv(labels, &mut w)?;
    w.flush().map_err(netcontrol::Error::from)?;
    Ok(Some(path.display().to_string()))
}

fn generate(args: GenerateArgs) -> Result<String, CliError> {
    let (seed, seed_drawn) = resolve_seed(args.seed);
    let need_n = || {
        args.n
            .ok_or_else(|| usage("--n is required for this model"))
    };
    let g = match args.model {
        ModelArg::Er => {
            let c = args
                .c
                .ok_or_else(|| usage("--c is required for --model er"))?;
            gen_er_directed(need_n()?, 2.0 * c, seed)?
        }
        ModelArg::Regular => {
            let d = args
                .r
                .ok_or_else(|| usage("--r (the degree) is required for --model regular"))?;
            let variant = match args.variant {
                VariantArg::Inout => RegularVariant::ExactInOut,
                VariantArg::Total => RegularVariant::Oriented,
            };
            gen_regular_directed(need_n()?, d, variant, seed)?
        }
        ModelArg::Pa => {
            let r = args
                .r
                .ok_or_else(|| usage("--r is required for --model pa"))?;
            let alpha = args
                .alpha
                .ok_or_else(|| usage("--alpha is required for --model pa"))?;
            gen_pa(need_n()?, r, alpha, seed)?
        }
        ModelArg::ConfigInout | ModelArg::ConfigTotal => {
            let path = args
                .degrees
                .as_ref()
                .ok_or_else(|| usage("--degrees FILE is required for the configuration models"))?;
            let text = std::fs::read_to_string(path).map_err(netcontrol::Error::from)?;
            let ds = if args.model == ModelArg::ConfigInout {
                parse_inout_degrees(&text)?
            } else {
                parse_total_degrees(&text)?
            };
            ds.sample(seed)?
        }
    };
    write_graph(&g, &args.out, args.format)?;
    Ok(json!({
        "command": "generate",
        "n": g.vertex_count(),
        "edges": g.edge_count(),
        "seed": seed,
        "seed_drawn": seed_drawn,
        "out": args.out.display().to_string(),
    })
    .to_string())
}

fn do_match(args: MatchArgs) -> Result<String, CliError> {
    let (seed, seed_drawn) = resolve_seed(args.seed);
    let (g, labels, identity) = read_graph(&args.input)?;
    let method = match args.method {
        MethodArg::Exact => MatchMethod::Exact,
        MethodArg::Ks => MatchMethod::KarpSipser { seed },
        MethodArg::Bounded => MatchMethod::Bounded {
            max_aug_len: args
                .max_aug_len
                .ok_or_else(|| usage("--T is required for --method bounded"))?,
            seed,
        },
    };
    let report = ratio(&g, method)?;
    let drivers_path = match &args.out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(netcontrol::Error::from)?;
            let mut w = BufWriter::new(file);
            for &v in &report.drivers {
                writeln!(w, "{}", labels[v]).map_err(netcontrol::Error::from)?;
            }
            w.flush().map_err(netcontrol::Error::from)?;
            Some(path.display().to_string())
        }
        None => None,
    };
    let labels_path = emit_labels(
        &labels,
        identity,
        args.out.as_deref().unwrap_or(&args.input),
    )?;
    Ok(json!({
        "command": "match",
        "n": report.n,
        "m": report.m,
        "n_D": report.n_d,
        "matching_size": report.matching_size,
        "drivers_path": drivers_path,
        "labels_path": labels_path,
        "seed": seed,
        "seed_drawn": seed_drawn,
    })
    .to_string())
}

fn do_rewire(args: RewireArgs) -> Result<String, CliError> {
    let (seed, seed_drawn) = resolve_seed(args.seed);
    let (g, labels, identity) = read_graph(&args.input)?;
    let variant = match args.variant {
        VariantArg::Inout => RewireVariant::PreserveInOut,
        VariantArg::Total => RewireVariant::PreserveTotal,
    };
    let rewired = rewire(&g, variant, seed);
    write_graph(&rewired, &args.out, args.format)?;
    let labels_path = emit_labels(&labels, identity, &args.out)?;
    Ok(json!({
        "command": "rewire",
        "variant": variant.to_string(),
        "n": rewired.vertex_count(),
        "edges": rewired.edge_count(),
        "seed": seed,
        "seed_drawn": seed_drawn,
        "out": args.out.display().to_string(),
        "labels_path": labels_path,
    })
    .to_string())
}

fn write_report(
    report: &ExperimentReport,
    out: Option<&Path>,
    format: ReportFormat,
) -> Result<(Option<String>, Option<String>), CliError> {
    let Some(prefix) = out else {
        return Ok((None, None));
    };
    let mut csv_path = None;
    let mut json_path = None;
    if format != ReportFormat::Json {
        let path = prefix.with_extension("csv");
        let file = std::fs::File::create(&path).map_err(netcontrol::Error::from)?;
        report.write_csv(BufWriter::new(file))?;
        csv_path = Some(path.display().to_string());
    }
    if format != ReportFormat::Csv {
        let path = prefix.with_extension("json");
        std::fs::write(&path, report.to_json_string()?).map_err(netcontrol::Error::from)?;
        json_path = Some(path.display().to_string());
    }
    Ok((csv_path, json_path))
}

fn concentration(args: ConcentrationArgs) -> Result<String, CliError> {
    let (seed, seed_drawn) = resolve_seed(args.seed);
    let (g, _, _) = read_graph(&args.input)?;
    let variant = match args.variant {
        VariantArg::Inout => RewireVariant::PreserveInOut,
        VariantArg::Total => RewireVariant::PreserveTotal,
    };
    let report = concentration_experiment(&g, variant, args.trials, seed)?;
    let (csv_path, json_path) = write_report(&report, args.out.as_deref(), args.format)?;
    let worst = report
        .bound_table
        .as_ref()
        .and_then(|t| {
            t.iter()
                .map(|r| r.empirical_tail - r.azuma_bound)
                .max_by(f64::total_cmp)
        })
        .unwrap_or(f64::NAN);
    Ok(json!({
        "command": "concentration",
        "variant": variant.to_string(),
        "trials": args.trials,
        "mean_m": report.mean_m,
        "sd_m": report.sd_m,
        "worst_tail_minus_bound": worst,
        "seed": seed,
        "seed_drawn": seed_drawn,
        "csv": csv_path,
        "json": json_path,
    })
    .to_string())
}

fn convergence(args: ConvergenceArgs) -> Result<String, CliError> {
    let (seed, seed_drawn) = resolve_seed(args.seed);
    let model = match args.model {
        ModelArg::Er => ModelSpec::ErDirected {
            mean_total_degree: 2.0
                * args
                    .c
                    .ok_or_else(|| usage("--c is required for --model er"))?,
        },
        ModelArg::Pa => ModelSpec::PreferentialAttachment {
            r: args
                .r
                .ok_or_else(|| usage("--r is required for --model pa"))?,
            alpha: args
                .alpha
                .ok_or_else(|| usage("--alpha is required for --model pa"))?,
        },
        ModelArg::Regular => ModelSpec::Regular {
            d: args
                .r
                .ok_or_else(|| usage("--r (the degree) is required for --model regular"))?,
            variant: match args.variant {
                VariantArg::Inout => RegularVariant::ExactInOut,
                VariantArg::Total => RegularVariant::Oriented,
            },
        },
        ModelArg::ConfigInout | ModelArg::ConfigTotal => {
            return Err(usage(
                "convergence needs a size-parameterized model (er, regular or pa); \
                 the configuration models take their size from the degree file",
            ))
        }
    };
    let report = convergence_experiment(&model, &args.n, args.seeds_per_n, seed)?;
    let (csv_path, json_path) = write_report(&report, args.out.as_deref(), args.format)?;
    let groups: Vec<_> = report
        .groups
        .iter()
        .map(|g| {
            json!({
                "n": g.n,
                "mean_m": g.mean_m,
                "sd_m": g.sd_m,
                "reference_m": g.reference_m,
                "abs_err": g.abs_err,
            })
        })
        .collect();
    Ok(json!({
        "command": "convergence",
        "model": report.model,
        "groups": groups,
        "seed": seed,
        "seed_drawn": seed_drawn,
        "csv": csv_path,
        "json": json_path,
    })
    .to_string())
}

fn limit(args: LimitArgs) -> Result<String, CliError> {
    let sol = er_limit(args.c)?;
    let mut doc = json!({
        "command": "limit",
        "c": sol.c,
        "t_c": sol.t_c,
        "m_limit": sol.m_limit,
        "residual": sol.residual,
        "all_roots": sol.all_roots,
        "multi_root": sol.all_roots.len() > 1,
    });
    if let Some(samples) = args.samples {
        let (seed, seed_drawn) = resolve_seed(args.seed);
        let off = netcontrol::generators::OffspringDistribution::poisson(args.c)?;
        let est = estimate_limit_ratio(
            &off,
            args.directed,
            args.depth,
            args.max_aug_len,
            samples,
            seed,
        )?;
        doc["estimate"] = json!({
            "point": est.point,
            "ci_low": est.ci_low,
            "ci_high": est.ci_high,
            "samples": est.samples,
            "T": est.max_aug_len,
            "depth": est.depth,
            "directed": est.directed,
            "seed": seed,
            "seed_drawn": seed_drawn,
        });
    }
    if let Some(out) = &args.out {
        std::fs::write(
            out,
            serde_json::to_string_pretty(&doc).map_err(netcontrol::Error::from)?,
        )
        .map_err(netcontrol::Error::from)?;
    }
    Ok(doc.to_string())
}

fn nbhd(args: NbhdArgs) -> Result<String, CliError> {
    let (seed, seed_drawn) = resolve_seed(args.seed);
    let (g, _, _) = read_graph(&args.input)?;
    let mode = match args.mode {
        ModeArg::Minus => BallMode::Minus,
        ModeArg::Full => BallMode::Full,
    };
    let cap = ball_cap_from_env()?;
    let samples = if args.samples == 0 {
        g.vertex_count()
    } else {
        args.samples
    };
    let hist = neighborhood_histogram(&g, args.radius, mode, samples, seed, cap)?;
    if let Some(out) = &args.out {
        std::fs::write(
            out,
            serde_json::to_string_pretty(&hist).map_err(netcontrol::Error::from)?,
        )
        .map_err(netcontrol::Error::from)?;
    }
    Ok(json!({
        "command": "nbhd",
        "radius": hist.radius,
        "classes": hist.class_count(),
        "samples": hist.samples,
        "overflow": hist.overflow,
        "seed": seed,
        "seed_drawn": seed_drawn,
        "out": args.out.as_ref().map(|p| p.display().to_string()),
    })
    .to_string())
}

fn ball_cap_from_env() -> Result<usize, CliError> {
    match std::env::var("NETCONTROL_BALL_CAP") {
        Ok(v) => v
            .parse()
            .map_err(|_| usage(format!("NETCONTROL_BALL_CAP must be an integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BALL_CAP),
    }
}
