use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use cechsnap::harness::{
    generate_random, load_points, make_three_on_circle, make_two_triangles, run_corollary_check,
    run_split_experiment, run_theorem_check, write_points, CheckConfig, ExperimentReport, Model,
    SplitConfig, SplitReport,
};
use cechsnap::persistence::{reduce, PersistenceDiagram};
use cechsnap::simplicial::{build_filtration, BuildOptions};
use cechsnap::{Flavor, PointCloud, DEFAULT_SIMPLEX_BUDGET};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "cechsnap", version, about = "Čech/Rips persistence and snap-complex experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Persistence diagram of a point cloud.
    Compute {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        /// Largest simplex dimension to build.
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        /// Largest filtration radius.
        #[arg(long, default_value_t = 1.5)]
        r_max: f64,
    },
    /// Check β_p(K_1, K_{1+ε}) ≤ β_p(Q_1) for p ≤ p_max.
    CorollaryCheck {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Check β_p(K_1, K_{1+ε}) ≤ binom(C(ε,d), p)·n for p < d.
    TheoremCheck {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
    },
    /// Compare a cloud's persistent Betti number with the sum over two halves.
    Split {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        common: Common,
        /// Homology dimension.
        #[arg(long, short, default_value_t = 1)]
        p: usize,
        /// Position of the hyperplane x_0 = value.
        #[arg(long)]
        axis_value: f64,
    },
    /// Emit a named construction as CSV.
    Construct {
        #[arg(long, value_enum)]
        name: Construction,
        /// Circle radius for three-on-circle.
        #[arg(long, default_value_t = 1.05)]
        radius: f64,
        #[arg(long, default_value_t = 0.2)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a seeded random cloud as CSV.
    Generate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    ThreeOnCircle,
    TwoTriangles,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    UniformCube,
    Annulus,
}

#[derive(Args, Clone)]
struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ModelKind::UniformCube)]
    model: ModelKind,
    #[arg(long, default_value_t = 4.0)]
    side: f64,
    #[arg(long, default_value_t = 1.5)]
    r_in: f64,
    #[arg(long, default_value_t = 2.5)]
    r_out: f64,
}

impl ModelArgs {
    fn model(&self) -> Model {
        match self.model {
            ModelKind::UniformCube => Model::UniformCube { side: self.side },
            ModelKind::Annulus => Model::Annulus {
                r_in: self.r_in,
                r_out: self.r_out,
            },
        }
    }
}

/// Where the point cloud comes from: a CSV file, a named construction, or a random model.
#[derive(Args)]
struct Source {
    /// CSV file, one point per row.
    #[arg(long, conflicts_with_all = ["construct", "n"])]
    input: Option<PathBuf>,
    /// Ambient dimension of the points.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Use a named construction instead of a file.
    #[arg(long, value_enum, conflicts_with = "n")]
    construct: Option<Construction>,
    /// Circle radius for --construct three-on-circle.
    #[arg(long, default_value_t = 1.05)]
    radius: f64,
    /// Generate this many random points instead of reading a file.
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    model: ModelArgs,
    /// Multiply all coordinates by this factor (normalise to unit radius).
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0.2)]
    epsilon: f64,
    #[arg(long, default_value_t = 1)]
    p_max: usize,
    #[arg(long, default_value = "cech")]
    flavor: Flavor,
    /// Seed for random clouds and random grid offsets.
    #[arg(long)]
    seed: Option<u64>,
    /// Maximum number of simplices per filtration.
    #[arg(long, default_value_t = DEFAULT_SIMPLEX_BUDGET)]
    budget: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a summary table to stderr.
    #[arg(long, short)]
    verbose: bool,
    /// Include wall-clock durations in the report (makes it non-reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct GridArgs {
    /// Grid origin offset, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    grid_offset: Option<Vec<f64>>,
    /// Number of additional grids with seeded random offsets.
    #[arg(long, default_value_t = 0)]
    random_offsets: usize,
}

#[derive(Serialize)]
struct ComputeParams {
    n: usize,
    d: usize,
    flavor: Flavor,
    max_dim: usize,
    r_max: f64,
    budget: usize,
}

#[derive(Serialize)]
struct ComputeMetrics {
    f_vector: Vec<usize>,
    simplices: usize,
}

#[derive(Serialize)]
struct ComputeReport<'a> {
    name: &'static str,
    params: ComputeParams,
    metrics: ComputeMetrics,
    diagram: &'a PersistenceDiagram,
    #[serde(skip_serializing_if = "Option::is_none")]
    durations: Option<BTreeMap<String, f64>>,
}

/// Loaded cloud plus the grid offset a construction asks for.
struct Loaded {
    cloud: PointCloud,
    grid_offset: Option<Vec<f64>>,
}

fn load(source: &Source, common: &Common) -> Result<Loaded> {
    let (cloud, grid_offset) = if let Some(path) = &source.input {
        let cloud = load_points(path, source.dim).with_context(|| format!("reading {}", path.display()))?;
        (cloud, None)
    } else if let Some(c) = source.construct {
        match c {
            Construction::ThreeOnCircle => (make_three_on_circle(source.radius)?, None),
            Construction::TwoTriangles => {
                let (cloud, grid) = make_two_triangles(common.epsilon)?;
                (cloud, Some(grid.offset().to_vec()))
            }
        }
    } else if let Some(n) = source.n {
        let cloud = generate_random(source.model.model(), n, source.dim, common.seed.unwrap_or(0))?;
        (cloud, None)
    } else {
        bail!("no input: pass --input FILE, --construct NAME, or --n COUNT");
    };
    let cloud = if source.scale != 1.0 {
        cloud.scaled(source.scale)?
    } else {
        cloud
    };
    Ok(Loaded { cloud, grid_offset })
}

fn check_config(common: &Common) -> CheckConfig {
    let mut cfg = CheckConfig::new(common.epsilon, common.p_max, common.flavor);
    cfg.budget = common.budget;
    cfg.seed = common.seed;
    cfg
}

fn emit(json: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{json}\n")).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{json}")?;
            Ok(())
        }
    }
}

fn timings(enabled: bool, phases: &[(&str, f64)]) -> Option<BTreeMap<String, f64>> {
    enabled.then(|| phases.iter().map(|(k, v)| (k.to_string(), *v)).collect())
}

fn print_table(report: &ExperimentReport) {
    eprintln!("{} (n = {}, d = {}, ε = {})", report.name, report.params.n, report.params.d, report.params.epsilon);
    eprintln!("{:<36} {:>3} {:>10} {:>10}  outcome", "assertion", "p", "lhs", "rhs");
    for a in &report.assertions {
        let p = a.p.map_or("-".into(), |p| p.to_string());
        let rhs = a.rhs.map_or("-".into(), |r| r.to_string());
        let detail = a.detail.as_deref().unwrap_or("");
        eprintln!("{:<36} {:>3} {:>10} {:>10}  {:?} {detail}", a.name, p, a.lhs, rhs, a.outcome);
    }
}

fn print_split(report: &SplitReport) {
    eprintln!(
        "split at x0 = {:?}: |L| = {}, |R| = {}, |M| = {}",
        report.params.axis_value, report.n_left, report.n_right, report.strip_size
    );
    eprintln!(
        "β(A) = {}, β(L) = {}, β(R) = {}, difference = {}, naive bound = {}, crude bound = {}",
        report.beta_all, report.beta_left, report.beta_right, report.difference, report.naive_bound, report.crude_bound
    );
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Compute {
            source,
            common,
            max_dim,
            r_max,
        } => {
            let loaded = load(&source, &common)?;
            let start = Instant::now();
            let f = build_filtration(&loaded.cloud, common.flavor, max_dim, r_max, &BuildOptions { budget: common.budget })?;
            let build = start.elapsed().as_secs_f64();
            let dgm = reduce(&f);
            let total = start.elapsed().as_secs_f64();
            let report = ComputeReport {
                name: "compute",
                params: ComputeParams {
                    n: loaded.cloud.len(),
                    d: loaded.cloud.dim(),
                    flavor: common.flavor,
                    max_dim,
                    r_max,
                    budget: common.budget,
                },
                metrics: ComputeMetrics {
                    f_vector: f.f_vector(r_max),
                    simplices: f.len(),
                },
                diagram: &dgm,
                durations: timings(common.timings, &[("build", build), ("total", total)]),
            };
            if common.verbose {
                eprintln!("{} simplices, {} pairs", f.len(), dgm.pairs.len());
                for pair in &dgm.pairs {
                    eprintln!("  dim {} [{:.6}, {:.6})", pair.dim, pair.birth, pair.death);
                }
            }
            emit(&serde_json::to_string_pretty(&report)?, &common.out)?;
            Ok(true)
        }
        Command::CorollaryCheck { source, common, grid } => {
            let loaded = load(&source, &common)?;
            let mut cfg = check_config(&common);
            cfg.grid_offset = grid.grid_offset.or(loaded.grid_offset);
            cfg.random_offsets = grid.random_offsets;
            let start = Instant::now();
            let mut report = run_corollary_check(&loaded.cloud, &cfg)?;
            report.durations = timings(common.timings, &[("total", start.elapsed().as_secs_f64())]);
            if common.verbose {
                print_table(&report);
            }
            emit(&report.to_json(), &common.out)?;
            Ok(report.passed())
        }
        Command::TheoremCheck { source, common } => {
            let loaded = load(&source, &common)?;
            let start = Instant::now();
            let mut report = run_theorem_check(&loaded.cloud, &check_config(&common))?;
            report.durations = timings(common.timings, &[("total", start.elapsed().as_secs_f64())]);
            if common.verbose {
                print_table(&report);
            }
            emit(&report.to_json(), &common.out)?;
            Ok(report.passed())
        }
        Command::Split {
            source,
            common,
            p,
            axis_value,
        } => {
            let loaded = load(&source, &common)?;
            let mut cfg = SplitConfig::new(common.epsilon, p, axis_value);
            cfg.flavor = common.flavor;
            cfg.budget = common.budget;
            cfg.seed = common.seed;
            let start = Instant::now();
            let mut report = run_split_experiment(&loaded.cloud, &cfg)?;
            report.durations = timings(common.timings, &[("total", start.elapsed().as_secs_f64())]);
            if common.verbose {
                print_split(&report);
            }
            emit(&report.to_json(), &common.out)?;
            Ok(report.passed())
        }
        Command::Construct {
            name,
            radius,
            epsilon,
            out,
        } => {
            let cloud = match name {
                Construction::ThreeOnCircle => make_three_on_circle(radius)?,
                Construction::TwoTriangles => {
                    let (cloud, grid) = make_two_triangles(epsilon)?;
                    let offset: Vec<String> = grid.offset().iter().map(|x| format!("{x:?}")).collect();
                    eprintln!("grid-offset: {}", offset.join(","));
                    cloud
                }
            };
            emit(write_points(&cloud).trim_end(), &out)?;
            Ok(true)
        }
        Command::Generate {
            model,
            n,
            dim,
            seed,
            out,
        } => {
            let cloud = generate_random(model.model(), n, dim, seed)?;
            emit(write_points(&cloud).trim_end(), &out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("one or more assertions failed");
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
