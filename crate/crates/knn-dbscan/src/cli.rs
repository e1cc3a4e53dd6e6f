//! Command-line surface: dataset generation, clustering runs, label
//! comparison, and eps sweeps over one prebuilt graph.
//!
//! Exit codes: 0 success, 2 invalid argument, 3 io error, 4 internal
//! error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bsp::RankExecution;
use crate::datasets;
use crate::error::{Error, Result};
use crate::eval;
use crate::io;
use crate::knng::{build_exact_knng, neighbor_stats};
use crate::parallel::Workers;
use crate::partition::PartitionStrategy;
use crate::pipeline::{cluster_auto, ClusterConfig};

#[derive(Parser)]
#[command(
    name = "knn-dbscan",
    version,
    about = "Density-based clustering over k-nearest-neighbor graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic point file with ground-truth labels.
    Generate(GenerateArgs),
    /// Cluster a point file and write per-point labels.
    Cluster(ClusterArgs),
    /// Compare two label files.
    Compare(CompareArgs),
    /// Cluster one point file over a grid of eps values, reusing the
    /// neighbor graph.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Sphere,
    TwoSpheres,
    Blobs,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Points for `sphere`.
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sphere radius.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Inner/outer sphere sizes for `two-spheres` (defaults mirror the
    /// desk-scale two-sphere benchmark).
    #[arg(long, default_value_t = 4000)]
    n_inner: usize,
    #[arg(long, default_value_t = 12000)]
    n_outer: usize,
    #[arg(long, default_value_t = 0.1)]
    r_inner: f64,
    #[arg(long, default_value_t = 1.0)]
    r_outer: f64,
    /// Blob count and per-blob size for `blobs`.
    #[arg(long, default_value_t = 3)]
    blobs: usize,
    #[arg(long, default_value_t = 200)]
    n_per: usize,
    #[arg(long, default_value_t = 1.0)]
    spread: f64,
    #[arg(long, default_value_t = 10.0)]
    separation: f64,
    /// Output point file.
    #[arg(long)]
    points: PathBuf,
    /// Output ground-truth label file.
    #[arg(long)]
    labels: PathBuf,
}

#[derive(Args)]
struct ClusterArgs {
    /// Input point file.
    points: PathBuf,
    /// Absolute neighborhood radius.
    #[arg(long, conflicts_with = "eps_rel")]
    eps: Option<f64>,
    /// Radius as a multiple of the median distance to the second
    /// nearest neighbor of the loaded graph.
    #[arg(long)]
    eps_rel: Option<f64>,
    /// Minimum neighborhood size of a core point (self-inclusive).
    #[arg(long)]
    minpts: usize,
    /// Neighbor list length for the graph.
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    parts: usize,
    /// block, geometric, random, or random:SEED.
    #[arg(long, default_value = "block")]
    strategy: String,
    /// Worker threads (default: all hardware threads).
    #[arg(long)]
    threads: Option<usize>,
    /// Emit per-round cut-phase records to stderr.
    #[arg(long)]
    trace: bool,
    /// Output label file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CompareArgs {
    labels_a: PathBuf,
    labels_b: PathBuf,
}

#[derive(Args)]
struct SweepArgs {
    points: PathBuf,
    /// Ground-truth label file.
    #[arg(long)]
    truth: PathBuf,
    /// Comma-separated absolute eps values.
    #[arg(long)]
    eps_list: String,
    #[arg(long)]
    minpts: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    parts: usize,
    #[arg(long, default_value = "block")]
    strategy: String,
    #[arg(long)]
    threads: Option<usize>,
}

/// Parses arguments, runs the command, and returns the process exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Cluster(args) => cmd_cluster(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<()> {
    let (points, labels) = match args.kind {
        Kind::Sphere => datasets::gen_sphere(args.n, args.d, args.radius, args.seed)?,
        Kind::TwoSpheres => {
            let d = if args.d >= 2 { args.d } else { 10 };
            datasets::gen_two_spheres(
                args.n_inner,
                args.n_outer,
                d,
                args.r_inner,
                args.r_outer,
                args.seed,
            )?
        }
        Kind::Blobs => datasets::gen_gaussian_blobs(
            args.blobs,
            args.n_per,
            args.d,
            args.spread,
            args.separation,
            args.seed,
        )?,
    };
    io::write_points(&args.points, &points)?;
    io::write_labels(&args.labels, &labels)?;
    Ok(())
}

fn parse_strategy(text: &str) -> Result<PartitionStrategy> {
    match text {
        "block" => Ok(PartitionStrategy::Block),
        "geometric" => Ok(PartitionStrategy::Geometric),
        "random" => Ok(PartitionStrategy::Random { seed: 0 }),
        other => {
            if let Some(seed) = other.strip_prefix("random:") {
                let seed = seed.parse().map_err(|_| {
                    Error::invalid_argument(format!("bad random strategy seed in {other:?}"))
                })?;
                Ok(PartitionStrategy::Random { seed })
            } else {
                Err(Error::invalid_argument(format!(
                    "unknown strategy {other:?}; expected block, geometric, random, or random:SEED"
                )))
            }
        }
    }
}

fn effective_workers(threads: Option<usize>) -> Result<usize> {
    match threads {
        None => Ok(Workers::available().count()),
        Some(0) => Err(Error::invalid_argument("--threads must be at least 1")),
        Some(t) => Ok(t),
    }
}

struct PreparedRun {
    points: crate::points::PointSet,
    graph: crate::knng::NeighborGraph,
    knng_seconds: f64,
    workers: usize,
}

fn prepare_run(points_path: &Path, k: usize, minpts: usize, threads: Option<usize>) -> Result<PreparedRun> {
    // Flag validation happens before any file is touched.
    if minpts < 2 {
        return Err(Error::invalid_argument(
            "--minpts must be at least 2 (the count includes the point itself)",
        ));
    }
    if minpts > k {
        return Err(Error::invalid_argument(format!(
            "--minpts {minpts} exceeds --k {k}"
        )));
    }
    let workers = effective_workers(threads)?;
    let points = io::read_points(points_path)?;
    let k_eff = k.min(points.n_points()).max(1);
    let started = Instant::now();
    let graph = build_exact_knng(&points, k_eff, &Workers::new(workers))?;
    let knng_seconds = started.elapsed().as_secs_f64();
    Ok(PreparedRun {
        points,
        graph,
        knng_seconds,
        workers,
    })
}

fn resolve_eps(eps: Option<f64>, eps_rel: Option<f64>, graph: &crate::knng::NeighborGraph) -> Result<f64> {
    match (eps, eps_rel) {
        (Some(e), None) => Ok(e),
        (None, Some(rel)) => {
            if graph.k_max() < 2 {
                return Err(Error::invalid_argument(
                    "--eps-rel needs at least two points to measure neighbor distances",
                ));
            }
            Ok(rel * neighbor_stats(graph, 2)?.median_dist)
        }
        (None, None) => Err(Error::invalid_argument("one of --eps or --eps-rel is required")),
        (Some(_), Some(_)) => unreachable!("clap rejects the conflict"),
    }
}

fn cmd_cluster(args: ClusterArgs) -> Result<()> {
    let strategy = parse_strategy(&args.strategy)?;
    let prepared = prepare_run(&args.points, args.k, args.minpts, args.threads)?;
    let eps = resolve_eps(args.eps, args.eps_rel, &prepared.graph)?;
    let cfg = ClusterConfig {
        eps,
        min_pts: args.minpts,
        parts: args.parts,
        strategy,
        workers: prepared.workers,
        rank_execution: if prepared.workers > 1 {
            RankExecution::Concurrent
        } else {
            RankExecution::Sequential
        },
    };
    let out = cluster_auto(&prepared.points, &prepared.graph, Some(prepared.knng_seconds), &cfg)?;
    io::write_labels(&args.out, &out.labels)?;
    if args.trace {
        for t in &out.traces {
            eprintln!("{}", t.to_json());
        }
    }
    println!("{}", out.metrics.to_json());
    Ok(())
}

#[derive(Serialize)]
struct CompareReport {
    nmi: f64,
    clusters_a: usize,
    clusters_b: usize,
    identical_up_to_renaming: bool,
}

fn cmd_compare(args: CompareArgs) -> Result<()> {
    let a = io::read_labels(&args.labels_a)?;
    let b = io::read_labels(&args.labels_b)?;
    let report = CompareReport {
        nmi: eval::nmi(&a, &b)?,
        clusters_a: eval::cluster_count(&a),
        clusters_b: eval::cluster_count(&b),
        identical_up_to_renaming: eval::same_partition(&a, &b)?,
    };
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    Ok(())
}

/// The cluster count rides along in the flattened metrics.
#[derive(Serialize)]
struct SweepRow {
    eps: f64,
    nmi: f64,
    #[serde(flatten)]
    metrics: io::MetricsRecord,
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let strategy = parse_strategy(&args.strategy)?;
    let eps_values: Vec<f64> = args
        .eps_list
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid_argument(format!("bad eps value {t:?} in --eps-list")))
        })
        .collect::<Result<Vec<_>>>()?;
    if eps_values.is_empty() {
        return Err(Error::invalid_argument("--eps-list is empty"));
    }
    let prepared = prepare_run(&args.points, args.k, args.minpts, args.threads)?;
    let truth = io::read_labels(&args.truth)?;
    if truth.len() != prepared.points.n_points() {
        return Err(Error::invalid_argument(format!(
            "ground truth has {} labels for {} points",
            truth.len(),
            prepared.points.n_points()
        )));
    }
    for (row, &eps) in eps_values.iter().enumerate() {
        let cfg = ClusterConfig {
            eps,
            min_pts: args.minpts,
            parts: args.parts,
            strategy,
            workers: prepared.workers,
            rank_execution: if prepared.workers > 1 {
                RankExecution::Concurrent
            } else {
                RankExecution::Sequential
            },
        };
        // The graph is built once; only the first row carries its cost.
        let knng_seconds = (row == 0).then_some(prepared.knng_seconds);
        let out = cluster_auto(&prepared.points, &prepared.graph, knng_seconds, &cfg)?;
        let row = SweepRow {
            eps,
            nmi: eval::nmi(&out.labels, &truth)?,
            metrics: out.metrics,
        };
        println!("{}", serde_json::to_string(&row).expect("row serializes"));
    }
    Ok(())
}
