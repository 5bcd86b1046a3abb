//! Thin command-line front end; all logic lives in the library.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crest::bpdn::SolverOptions;
use crest::experiments::{self, BoundsSweepArgs, OutputFormat, RecoveryPhaseArgs, SimConfig};

#[derive(Parser)]
#[command(
    name = "crest",
    version,
    about = "Compressive rate estimation: pilot sensing, sparse gain recovery, discovery and pairing experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the discovery-and-pairing sum-rate experiment from a TOML config.
    Simulate {
        /// Configuration file (schema documented in the README).
        #[arg(long)]
        config: PathBuf,
        /// Output path; with several powers configured, `-p<power>` is
        /// inserted before the extension.
        #[arg(long)]
        out: PathBuf,
        /// `csv` or `json`.
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Sweep the pilot-count bound over a grid of system sizes.
    Bounds {
        #[arg(long, default_value_t = 10)]
        k: u64,
        /// Failure probability of the bound.
        #[arg(long, default_value_t = 0.9)]
        eps: f64,
        /// Target restricted-isometry constant.
        #[arg(long, default_value_t = 1.0 / 3.0)]
        delta: f64,
        #[arg(long = "n-min", default_value_t = 16)]
        n_min: u64,
        #[arg(long = "n-max", default_value_t = 1 << 20)]
        n_max: u64,
        /// Log-spaced grid points.
        #[arg(long, default_value_t = 60)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Empirical exact-recovery fractions over a (sparsity, pilots) grid.
    Recover {
        /// Vector length N.
        #[arg(long)]
        n: usize,
        /// Comma-separated sparsity levels, e.g. `1,3,5,8`.
        #[arg(long = "k-grid", value_delimiter = ',', required = true)]
        k_grid: Vec<usize>,
        /// Comma-separated pilot counts, e.g. `10,20,40`.
        #[arg(long = "m-grid", value_delimiter = ',', required = true)]
        m_grid: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Run the condensed invariant suite and print one line per check.
    Selftest,
}

enum AppError {
    /// Bad configuration or arguments (exit code 1).
    Config(String),
    /// Failure while running (exit code 2).
    Runtime(String),
}

impl From<AppError> for ExitCode {
    fn from(err: AppError) -> Self {
        match err {
            AppError::Config(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
            AppError::Runtime(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => err.into(),
    }
}

fn run(cli: Cli) -> Result<ExitCode, AppError> {
    match cli.command {
        Command::Simulate {
            config,
            out,
            format,
        } => {
            let format = parse_format(&format)?;
            let cfg =
                SimConfig::from_file(&config).map_err(|e| AppError::Config(e.to_string()))?;
            let outcome = experiments::run_sumrate_experiment(&cfg)
                .map_err(|e| AppError::Runtime(e.to_string()))?;
            let multi = outcome.runs.len() > 1;
            for run in &outcome.runs {
                let path = if multi {
                    suffixed(&out, &format!("-p{}", run.power))
                } else {
                    out.clone()
                };
                let text = match format {
                    OutputFormat::Csv => experiments::rows_to_csv(&run.rows),
                    OutputFormat::Json => experiments::sumrate_rows_to_json(&run.rows),
                }
                .map_err(|e| AppError::Runtime(e.to_string()))?;
                std::fs::write(&path, text).map_err(|e| AppError::Runtime(e.to_string()))?;
                eprintln!(
                    "P = {}: {} rows -> {} ({}/{} solver failures, {} feasibility audits failed, \
                     {} greedy pairings)",
                    run.power,
                    run.rows.len(),
                    path.display(),
                    run.solver_failures,
                    run.total_solves,
                    run.feasibility_violations,
                    run.greedy_pairings,
                );
            }
            let fraction = outcome.solver_failure_fraction();
            if fraction > cfg.solver_failure_budget {
                eprintln!(
                    "error: solver failure fraction {:.4} exceeds budget {:.4}",
                    fraction, cfg.solver_failure_budget
                );
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds {
            k,
            eps,
            delta,
            n_min,
            n_max,
            points,
            out,
            format,
        } => {
            let format = parse_format(&format)?;
            let rows = experiments::run_bounds_sweep(&BoundsSweepArgs {
                k,
                eps_fail: eps,
                delta,
                n_min,
                n_max,
                points,
            })
            .map_err(|e| AppError::Config(e.to_string()))?;
            write_rows(&out, format, &rows)?;
            eprintln!("{} rows -> {}", rows.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Recover {
            n,
            k_grid,
            m_grid,
            trials,
            seed,
            out,
            format,
        } => {
            let format = parse_format(&format)?;
            let rows = experiments::run_recovery_phase(&RecoveryPhaseArgs {
                n,
                k_grid,
                m_grid,
                trials,
                seed,
                solver: SolverOptions::default(),
            })
            .map_err(|e| AppError::Config(e.to_string()))?;
            write_rows(&out, format, &rows)?;
            eprintln!("{} rows -> {}", rows.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest => {
            let report = experiments::selftest();
            for check in &report.checks {
                println!(
                    "{} {} ({})",
                    if check.passed { "PASS" } else { "FAIL" },
                    check.name,
                    check.detail
                );
            }
            if report.all_passed() {
                println!("selftest: all {} checks passed", report.checks.len());
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
    }
}

fn parse_format(s: &str) -> Result<OutputFormat, AppError> {
    s.parse()
        .map_err(|e: crest::Error| AppError::Config(e.to_string()))
}

fn suffixed(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let name = match path.extension().and_then(|s| s.to_str()) {
        Some(ext) => format!("{stem}{suffix}.{ext}"),
        None => format!("{stem}{suffix}"),
    };
    path.with_file_name(name)
}

fn write_rows<T: serde::Serialize>(
    path: &Path,
    format: OutputFormat,
    rows: &[T],
) -> Result<(), AppError> {
    let text = match format {
        OutputFormat::Csv => experiments::rows_to_csv(rows),
        OutputFormat::Json => experiments::rows_to_json(rows),
    }
    .map_err(|e| AppError::Runtime(e.to_string()))?;
    std::fs::write(path, text).map_err(|e| AppError::Runtime(e.to_string()))?;
    Ok(())
}
