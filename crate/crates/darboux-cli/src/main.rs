//! Scenario-driven command line: run invariance checks, export sample
//! tables, and verify the jet pipeline against finite differences.
//!
//! Exit codes: 0 all verdicts pass, 1 at least one verdict failed,
//! 2 configuration or parse error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use darboux_cli::runner::{run_scenario, RunError, RunOptions, Runner};
use darboux_cli::{demos, export, fdoracle, load_scenario};

#[derive(Debug, Parser)]
#[command(name = "darboux", version)]
#[command(about = "Darboux-frame invariance checks for curves on parametric surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a scenario's checks (a path or demo:<name>)
    Run {
        scenario: String,

        /// Write the JSON run report here.
        #[arg(long)]
        out: Option<PathBuf>,

        /// Write one sample table per curve into this directory.
        #[arg(long)]
        csv_dir: Option<PathBuf>,

        /// Replace the default residual tolerance of checks that do not
        /// set their own.
        #[arg(long)]
        tol: Option<f64>,

        /// Replace the scenario seed for random tangent draws.
        #[arg(long)]
        seed: Option<u64>,
    },

    /// Export the sample table of one curve
    Export {
        scenario: String,
        curve: String,
        path: PathBuf,
    },

    /// Recompute metric data and curvatures by finite differences and
    /// report the worst deviation from the jet pipeline
    Oracle {
        scenario: String,

        /// Finite-difference step; repeat for a convergence sweep.
        #[arg(long = "fd-step")]
        fd_step: Vec<f64>,

        /// Fail (exit 1) if any deviation exceeds this.
        #[arg(long)]
        max_dev: Option<f64>,

        /// Write the JSON oracle report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Built-in demo scenarios
    Demo {
        /// List the demo catalog.
        #[arg(long)]
        list: bool,
    },
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn write_or_fail(path: &PathBuf, contents: &str) -> anyhow::Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| anyhow::anyhow!("cannot write `{}`: {e}", path.display()))
}

fn dispatch() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            scenario,
            out,
            csv_dir,
            tol,
            seed,
        } => {
            let sc = load_scenario(&scenario)?;
            let options = RunOptions {
                tolerance: tol,
                seed,
            };
            let report = match run_scenario(&sc, options) {
                Ok(r) => r,
                Err(RunError::Config(e)) => return Err(e.into()),
                Err(RunError::Geom { context, source }) => {
                    return Err(anyhow::anyhow!("{context}: {source}"))
                }
            };
            println!(
                "# scenario {} digest {} seed {}",
                report.scenario, report.scenario_digest, report.seed
            );
            for check in &report.checks {
                println!("{}", check.line());
            }
            println!("# {} passed, {} failed", report.passed, report.failed);
            let out = out.or_else(|| {
                sc.output
                    .as_ref()
                    .and_then(|o| o.report.as_ref())
                    .map(PathBuf::from)
            });
            if let Some(path) = out {
                write_or_fail(&path, &serde_json::to_string_pretty(&report)?)?;
            }
            let csv_dir = csv_dir.or_else(|| {
                sc.output
                    .as_ref()
                    .and_then(|o| o.csv_dir.as_ref())
                    .map(PathBuf::from)
            });
            if let Some(dir) = csv_dir {
                std::fs::create_dir_all(&dir)?;
                let mut runner = Runner::new(&sc, options);
                for name in sc.curves.keys() {
                    let samples = runner.curve_samples(name).map_err(flatten_run_error)?;
                    let decomp = runner.decomposition(name).map_err(flatten_run_error)?;
                    let mut buf = Vec::new();
                    export::write_table(&samples, &decomp, &mut buf)?;
                    let path = dir.join(format!("{name}.csv"));
                    std::fs::write(&path, buf)?;
                }
            }
            Ok(if report.failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Export {
            scenario,
            curve,
            path,
        } => {
            let sc = load_scenario(&scenario)?;
            if !sc.curves.contains_key(&curve) {
                anyhow::bail!("unknown curve `{curve}` in scenario `{}`", sc.name);
            }
            let mut runner = Runner::new(&sc, RunOptions::default());
            let samples = runner.curve_samples(&curve).map_err(flatten_run_error)?;
            let decomp = runner.decomposition(&curve).map_err(flatten_run_error)?;
            let mut buf = Vec::new();
            export::write_table(&samples, &decomp, &mut buf)?;
            std::fs::write(&path, buf)
                .map_err(|e| anyhow::anyhow!("cannot write `{}`: {e}", path.display()))?;
            println!("wrote {} samples to {}", samples.len(), path.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle {
            scenario,
            fd_step,
            max_dev,
            out,
        } => {
            let sc = load_scenario(&scenario)?;
            let steps = if fd_step.is_empty() {
                vec![1e-5]
            } else {
                fd_step
            };
            let report = fdoracle::run_oracle(&sc, &steps).map_err(flatten_run_error)?;
            for row in &report.rows {
                println!(
                    "step {:.1e}: worst deviation {:.3e} ({})",
                    row.step, row.worst, row.worst_quantity
                );
            }
            for note in &report.notes {
                println!("note: {note}");
            }
            if let Some(path) = out {
                write_or_fail(&path, &serde_json::to_string_pretty(&report)?)?;
            }
            let worst = report.rows.iter().map(|r| r.worst).fold(0.0, f64::max);
            match max_dev {
                Some(limit) if worst > limit => {
                    println!("worst deviation {worst:.3e} exceeds --max-dev {limit:.1e}");
                    Ok(ExitCode::from(1))
                }
                _ => Ok(ExitCode::SUCCESS),
            }
        }
        Command::Demo { list } => {
            if list {
                let mut stdout = std::io::stdout().lock();
                for demo in &demos::DEMOS {
                    writeln!(stdout, "{:<28} {}", demo.name, demo.summary)?;
                }
            } else {
                println!("use `darboux demo --list`, then `darboux run demo:<name>`");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn flatten_run_error(err: RunError) -> anyhow::Error {
    match err {
        RunError::Config(e) => e.into(),
        RunError::Geom { context, source } => anyhow::anyhow!("{context}: {source}"),
    }
}
