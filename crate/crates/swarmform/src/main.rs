//! Command-line front end: run one scenario, sweep seeds × sensing ranges,
//! or validate a config file.
//!
//! Exit codes: 0 success, 1 config error, 2 numerical divergence, 3 I/O
//! error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use swarmform::config::{parse_config, ScenarioConfig};
use swarmform::output::{metrics_json, write_metrics, write_trajectory, OutputError};
use swarmform::runner::{run, RunError, RunResult};

#[derive(Parser)]
#[command(name = "swarmform", version, about = "Deterministic 2-D swarm formation simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its trajectory/metrics files.
    Run {
        /// Scenario JSON file.
        #[arg(long)]
        config: PathBuf,
        /// Override the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the config's max_steps.
        #[arg(long)]
        steps: Option<u64>,
        /// Override the config's output directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run a seed × sensing-range grid, one metrics file per cell plus an
    /// aggregate CSV.
    Sweep {
        /// Scenario JSON file (its seed and sensing_range are overridden).
        #[arg(long)]
        config: PathBuf,
        /// Inclusive seed range, e.g. 1..20, or a single seed.
        #[arg(long)]
        seeds: String,
        /// Comma-separated sensing ranges, e.g. 30,40,50,60.
        #[arg(long)]
        range: String,
        /// Override the config's output directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Parse a config and check its invariants.
    Validate {
        /// Scenario JSON file.
        #[arg(long)]
        config: PathBuf,
    },
}

/// Failure modes mapped onto the documented exit codes.
enum Failure {
    Config(String),
    Divergence(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 1,
            Failure::Divergence(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Divergence(m) | Failure::Io(m) => m,
        }
    }
}

impl From<RunError> for Failure {
    fn from(err: RunError) -> Self {
        match err {
            RunError::Config(e) => Failure::Config(e.to_string()),
            RunError::Divergence { .. } => Failure::Divergence(err.to_string()),
        }
    }
}

impl From<OutputError> for Failure {
    fn from(err: OutputError) -> Self {
        Failure::Io(err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; everything else is a
            // malformed invocation and lands on the config exit code.
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Run { config, seed, steps, out_dir } => cmd_run(&config, seed, steps, out_dir),
        Command::Sweep { config, seeds, range, out_dir } => {
            cmd_sweep(&config, &seeds, &range, out_dir)
        }
        Command::Validate { config } => cmd_validate(&config),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn load_config(path: &Path) -> Result<ScenarioConfig, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Config(format!("cannot read config {}: {e}", path.display())))?;
    let config = parse_config(&text).map_err(|e| Failure::Config(e.to_string()))?;
    config.validate().map_err(|e| Failure::Config(e.to_string()))?;
    Ok(config)
}

fn ensure_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir)
        .map_err(|e| Failure::Io(format!("cannot create output directory {}: {e}", dir.display())))
}

fn cmd_run(
    config_path: &Path,
    seed: Option<u64>,
    steps: Option<u64>,
    out_dir: Option<PathBuf>,
) -> Result<(), Failure> {
    let mut config = load_config(config_path)?;
    if let Some(seed) = seed {
        config.seed = seed;
    }
    if let Some(steps) = steps {
        config.max_steps = steps;
    }
    if let Some(dir) = out_dir {
        config.output.dir = dir.display().to_string();
    }
    config.validate().map_err(|e| Failure::Config(e.to_string()))?;

    let result = run(&config)?;
    let dir = PathBuf::from(&config.output.dir);
    ensure_dir(&dir)?;
    let mut written = Vec::new();
    if config.output.trajectory {
        let path = dir.join("trajectory.csv");
        write_trajectory(&result, &path)?;
        written.push(path.display().to_string());
    }
    if config.output.metrics {
        let path = dir.join("metrics.json");
        write_metrics(&result, &path)?;
        written.push(path.display().to_string());
    }
    println!("{}", run_summary_line(&result));
    if !written.is_empty() {
        println!("wrote {}", written.join(", "));
    }
    Ok(())
}

fn run_summary_line(result: &RunResult) -> String {
    let mae = match result.summary.final_mean_abs_error {
        Some(v) => format!("{v:.4}"),
        None => "n/a".to_string(),
    };
    let phase = result
        .series
        .last()
        .map(|r| r.phase_label.as_str())
        .unwrap_or("n/a");
    format!(
        "behavior={} seed={} steps={} converged={} phase={} mean_abs_error={} eigen_ratio={:.4} components={}",
        result.config.behavior,
        result.config.seed,
        result.steps_executed,
        result.converged,
        phase,
        mae,
        result.summary.final_eigen_ratio,
        result.summary.final_component_count,
    )
}

/// Parses "A..B" (inclusive) or a single "N" into a seed list.
fn parse_seeds(text: &str) -> Result<Vec<u64>, Failure> {
    let bad = || Failure::Config(format!("cannot parse --seeds '{text}': expected N or A..B"));
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(Failure::Config(format!("--seeds range '{text}' is empty")));
        }
        Ok((a..=b).collect())
    } else {
        Ok(vec![text.trim().parse().map_err(|_| bad())?])
    }
}

/// Parses "R1,R2,..." into positive sensing ranges.
fn parse_ranges(text: &str) -> Result<Vec<f64>, Failure> {
    let ranges: Result<Vec<f64>, _> = text.split(',').map(|s| s.trim().parse::<f64>()).collect();
    let ranges =
        ranges.map_err(|_| Failure::Config(format!("cannot parse --range '{text}'")))?;
    if ranges.is_empty() || ranges.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
        return Err(Failure::Config("--range values must be positive and finite".into()));
    }
    Ok(ranges)
}

/// File-name-friendly range formatting: integral values drop the ".0".
fn format_range(range: f64) -> String {
    if range == range.trunc() && range.abs() < 1e15 {
        format!("{}", range as i64)
    } else {
        format!("{range}")
    }
}

fn cmd_sweep(
    config_path: &Path,
    seeds_text: &str,
    range_text: &str,
    out_dir: Option<PathBuf>,
) -> Result<(), Failure> {
    let base = load_config(config_path)?;
    let seeds = parse_seeds(seeds_text)?;
    let ranges = parse_ranges(range_text)?;
    let dir = out_dir.unwrap_or_else(|| PathBuf::from(&base.output.dir));
    ensure_dir(&dir)?;

    let mut csv = String::from("seed,range,component_count,converged,steps\n");
    for &seed in &seeds {
        for &range in &ranges {
            let mut config = base.clone();
            config.seed = seed;
            config.sensing_range = Some(range);
            config.validate().map_err(|e| Failure::Config(e.to_string()))?;
            let result = run(&config)?;
            let name = format!("metrics_seed{}_range{}.json", seed, format_range(range));
            let path = dir.join(&name);
            fs::write(&path, metrics_json(&config, &result.summary, &result.series))
                .map_err(|e| Failure::Io(format!("failed to write {}: {e}", path.display())))?;
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                seed,
                format_range(range),
                result.summary.final_component_count,
                result.converged,
                result.steps_executed,
            ));
        }
    }
    let csv_path = dir.join("sweep.csv");
    fs::write(&csv_path, csv)
        .map_err(|e| Failure::Io(format!("failed to write {}: {e}", csv_path.display())))?;
    println!(
        "swept {} seeds x {} ranges; wrote {}",
        seeds.len(),
        ranges.len(),
        csv_path.display()
    );
    Ok(())
}

fn cmd_validate(config_path: &Path) -> Result<(), Failure> {
    let config = load_config(config_path)?;
    println!(
        "config ok: behavior={} n_agents={} seed={}",
        config.behavior, config.n_agents, config.seed
    );
    Ok(())
}
