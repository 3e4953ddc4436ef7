//! Command-line driver. `run` returns the process exit status:
//! 0 success/feasible, 1 infeasible, 2 usage or input error,
//! 3 timeout without an incumbent.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::config::{ConfigError, SolverConfig};
use crate::graph::{apply_pullan_weights, apply_unit_weights, parse_auto, GraphError, WeightedGraph};
use crate::model::{add_capacity_bounds, add_component_limit, build_f1c, build_f1s, build_fks, export_lp, ModelError};
use crate::partition::{Partition, PartitionError};
use crate::report::{format_value, stats_row, RunReport, TABLE_HEADER};
use crate::semantics::{partition_stats, validate_partition};
use crate::solver::{brute_force_optimum, solve_exact, SolveError, SolveResult, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TIMEOUT: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Graph { path: PathBuf, source: GraphError },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("{path}: {source}")]
    Partition { path: PathBuf, source: PartitionError },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
}

#[derive(Debug, Parser)]
#[command(name = "kplex", version, about = "Maximum edge-weight k-plex partitioning")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print n, |E| and density.
    Stats { file: PathBuf },
    /// Solve exactly by branch-and-bound.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        problem: ProblemArgs,
        /// Seconds before the search stops with its incumbent.
        #[arg(long, value_parser = parse_seconds)]
        time_limit: Option<f64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the partition in text form here.
        #[arg(long)]
        partition: Option<PathBuf>,
        /// Print a progress line to stderr every this many search nodes.
        #[arg(long)]
        progress: Option<u64>,
    },
    /// Solve by enumerating every partition (at most 12 nodes).
    Oracle {
        file: PathBuf,
        #[command(flatten)]
        problem: ProblemArgs,
    },
    /// Write an ILP model in LP format.
    ExportModel {
        file: PathBuf,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[command(flatten)]
        problem: ProblemArgs,
        /// Keep the rows that are redundant for k = 2.
        #[arg(long)]
        no_reduce: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a partition (text or JSON report) against the constraints.
    Validate {
        file: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[command(flatten)]
        problem: ProblemArgs,
    },
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    #[arg(long, value_enum, default_value_t = Weights::File)]
    pub weights: Weights,
    /// Minimum node weight per component.
    #[arg(long)]
    pub lb: Option<f64>,
    /// Maximum node weight per component.
    #[arg(long)]
    pub ub: Option<f64>,
    #[arg(long)]
    pub max_components: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Weights {
    /// w_ij = ((i + j) mod 200) + 1
    Pullan,
    Unit,
    /// As given in the file (DIMACS edges weigh 1).
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    F1c,
    F1s,
    Fks,
}

impl ProblemArgs {
    fn config(&self) -> Result<SolverConfig, ConfigError> {
        let mut cfg = SolverConfig::new(self.k as usize);
        cfg.lb = self.lb;
        cfg.ub = self.ub;
        cfg.max_components = self.max_components;
        cfg.validate()?;
        Ok(cfg)
    }

    fn load(&self, path: &Path) -> Result<WeightedGraph, CliError> {
        let g = read_graph(path)?;
        Ok(match self.weights {
            Weights::Pullan => apply_pullan_weights(&g),
            Weights::Unit => apply_unit_weights(&g),
            Weights::File => g,
        })
    }
}

fn parse_seconds(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
        _ => Err(format!("`{s}` is not a nonnegative number of seconds")),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn read_graph(path: &Path) -> Result<WeightedGraph, CliError> {
    parse_auto(&read(path)?).map_err(|source| CliError::Graph { path: path.to_owned(), source })
}

fn instance_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

/// Reads a partition from text ("node label" lines) or from a JSON report.
fn read_partition(path: &Path, n: usize) -> Result<Partition, CliError> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let rep: RunReport =
            serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_owned(), source })?;
        Partition::from_components(n, &rep.components)
    } else {
        Partition::parse_text(&text, n)
    }
    .map_err(|source| CliError::Partition { path: path.to_owned(), source })
}

fn status_code(res: &SolveResult) -> i32 {
    match res.status {
        Status::Optimal | Status::Feasible => EXIT_OK,
        Status::Infeasible => EXIT_INFEASIBLE,
        Status::Timeout => EXIT_TIMEOUT,
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Stats { file } => {
            let g = read_graph(&file)?;
            println!("instance n |E| d");
            println!("{}", stats_row(&instance_name(&file), &g));
            Ok(EXIT_OK)
        }
        Command::Solve { file, problem, time_limit, workers, json, partition, progress } => {
            let g = problem.load(&file)?;
            let mut cfg = problem.config()?;
            cfg.workers = workers;
            cfg.progress_every = progress;
            cfg.time_limit = time_limit.map(Duration::from_secs_f64);
            let res = solve_exact(&g, &cfg)?;
            let report = RunReport::new(&instance_name(&file), &g, &cfg, &res);
            println!("{TABLE_HEADER} status");
            println!("{} {}", report.table_row(), res.status);
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report).expect("report serializes");
                write(&path, &(text + "\n"))?;
            }
            if let (Some(path), Some(p)) = (partition, res.partition.as_ref()) {
                write(&path, &p.to_text())?;
            }
            Ok(status_code(&res))
        }
        Command::Oracle { file, problem } => {
            let g = problem.load(&file)?;
            let cfg = problem.config()?;
            let res = brute_force_optimum(&g, &cfg)?;
            let report = RunReport::new(&instance_name(&file), &g, &cfg, &res);
            println!("{TABLE_HEADER} status");
            println!("{} {}", report.table_row(), res.status);
            Ok(status_code(&res))
        }
        Command::ExportModel { file, family, problem, no_reduce, output } => {
            let g = problem.load(&file)?;
            let cfg = problem.config()?;
            let mut m = match family {
                FamilyArg::F1c => build_f1c(&g)?,
                FamilyArg::F1s => build_f1s(&g),
                FamilyArg::Fks => build_fks(&g, cfg.k, !no_reduce)?,
            };
            if cfg.lb.is_some() || cfg.ub.is_some() {
                m = add_capacity_bounds(&m, &g, cfg.lb, cfg.ub)?;
            }
            if let Some(p) = cfg.max_components {
                m = add_component_limit(&m, &g, p)?;
            }
            write(&output, &export_lp(&m))?;
            let dims = m.dimensions();
            println!("variables={} constraints={}", dims.variables, dims.constraints);
            Ok(EXIT_OK)
        }
        Command::Validate { file, partition, problem } => {
            let g = problem.load(&file)?;
            let cfg = problem.config()?;
            let pt = read_partition(&partition, g.node_count())?;
            let violations = validate_partition(&g, &pt, &cfg);
            let stats = partition_stats(&g, &pt);
            println!(
                "weight={} comp={} largest={} singlt={:.2}",
                format_value(stats.weight),
                stats.comp,
                stats.largest,
                stats.singlt
            );
            for v in &violations {
                println!("violation: {v}");
            }
            if violations.is_empty() {
                println!("feasible");
                Ok(EXIT_OK)
            } else {
                println!("infeasible ({} violations)", violations.len());
                Ok(EXIT_INFEASIBLE)
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
