//! Batch front door: scenario configs in, verification reports and metric
//! grids out.
//!
//! Exit codes: 0 all checks passed, 1 at least one check failed or errored,
//! 2 configuration or fatal error.

mod config;
mod runner;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use crate::config::{load_config, Task};
use toda_core::verify::Tolerances;

#[derive(Parser)]
#[command(
    name = "toda",
    about = "Construct cone metrics of the SU(n+1) Toda system from seed data and verify their identities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Scenario configuration (JSON).
    #[arg(long, global = true, env = "TODA_CONFIG", value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory for reports and tables.
    #[arg(long, global = true, env = "TODA_OUT", value_name = "DIR", default_value = ".")]
    out: PathBuf,

    /// Worker threads for grid sweeps (default: all cores).
    #[arg(long, global = true, env = "TODA_THREADS", value_name = "N")]
    threads: Option<usize>,

    /// Tolerance override, repeatable (e.g. --tolerance pde=1e-7).
    #[arg(
        long = "tolerance",
        global = true,
        env = "TODA_TOLERANCE",
        value_name = "NAME=VALUE",
        value_delimiter = ','
    )]
    tolerance: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenario's configured task list.
    Check,
    /// Normalize the seed and emit the normalized seed config.
    Normalize,
    /// Reconstruct the Fuchsian operator and emit its coefficients.
    Fuchsian,
    /// Evaluate the metric grid only.
    Grid,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("toda: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("thread pool")?;
    }
    let config_path = cli
        .config
        .ok_or_else(|| anyhow!("--config PATH (or TODA_CONFIG) is required"))?;
    let config = load_config(&config_path)?;

    let mut tolerances = Tolerances::default();
    for (name, value) in &config.tolerances {
        if !tolerances.set(name, *value) {
            bail!("unknown tolerance {name:?} in config");
        }
    }
    for spec in &cli.tolerance {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| anyhow!("tolerance override {spec:?} is not NAME=VALUE"))?;
        let value: f64 = value
            .parse()
            .with_context(|| format!("tolerance value in {spec:?}"))?;
        if !tolerances.set(name, value) {
            bail!("unknown tolerance {name:?}");
        }
    }

    let tasks: Vec<Task> = match cli.command {
        Command::Check => config.tasks.clone(),
        Command::Normalize => vec![Task::Normalize],
        Command::Fuchsian => vec![Task::Fuchsian],
        Command::Grid => vec![Task::MetricGrid],
    };

    let products = runner::run_scenario(&config, &tasks, &tolerances)?;

    std::fs::create_dir_all(&cli.out)
        .with_context(|| format!("cannot create output directory {}", cli.out.display()))?;
    let report_path = cli.out.join(&config.output.report);
    let report_json = serde_json::to_string_pretty(&products.run_report)?;
    std::fs::write(&report_path, report_json.as_bytes())
        .with_context(|| format!("cannot write report {}", report_path.display()))?;

    if let Some(csv) = &products.grid_csv {
        let path = cli.out.join(&config.output.grid);
        std::fs::write(&path, csv.as_bytes())
            .with_context(|| format!("cannot write grid {}", path.display()))?;
    }
    if let Some(normalized) = &products.normalized_config {
        let path = cli.out.join(&config.output.normalized);
        std::fs::write(&path, serde_json::to_string_pretty(normalized)?.as_bytes())
            .with_context(|| format!("cannot write normalized config {}", path.display()))?;
    }
    if let Some(operator) = &products.operator_json {
        let path = cli.out.join(&config.output.fuchsian);
        std::fs::write(&path, serde_json::to_string_pretty(operator)?.as_bytes())
            .with_context(|| format!("cannot write operator {}", path.display()))?;
    }

    for check in &products.run_report.report.checks {
        let status = serde_json::to_string(&check.status)?;
        match check.max_residual {
            Some(res) => println!("{}: {} (max residual {res:.3e})", check.name, status.trim_matches('"')),
            None => println!("{}: {}", check.name, status.trim_matches('"')),
        }
    }
    Ok(products.all_passed())
}
