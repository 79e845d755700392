//! Command-line front end. All the work happens in the library; this binary
//! parses arguments, loads the JSON config and reports structured errors.
//!
//!   wgwalk run <config.json> [--set key=value]... [--out dir]
//!   wgwalk sweep <config.json> --grid key=start:stop:n [--set key=value]... [--out dir]

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wgwalk::config::ExperimentConfig;
use wgwalk::runner::{self, GridAxis};

#[derive(Parser)]
#[command(name = "wgwalk", about = "Waveguide-array and quantum-walk simulations", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment from a JSON config.
    Run {
        /// Path to the experiment config.
        config: PathBuf,
        /// Override a config key by dotted path, e.g. geometry.tube_radius=10.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Output directory (overrides the config's output.dir).
        #[arg(long = "out", value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Run a parameter grid, one subdirectory per point. Multiple --grid
    /// axes form a cartesian product; WGWALK_THREADS caps the parallelism.
    Sweep {
        config: PathBuf,
        /// Grid axis key=start:stop:n.
        #[arg(long = "grid", value_name = "KEY=START:STOP:N", required = true)]
        grid: Vec<String>,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long = "out", value_name = "DIR")]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn main_inner() -> Result<(), String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, set, out } => {
            let json = std::fs::read_to_string(&config)
                .map_err(|e| format!("cannot read {}: {e}", config.display()))?;
            let cfg = ExperimentConfig::from_json(&json, &set).map_err(|e| e.to_string())?;
            let written =
                runner::run(&cfg, out.as_deref()).map_err(|e| e.to_string())?;
            for path in written {
                println!("wrote {}", path.display());
            }
            Ok(())
        }
        Command::Sweep { config, grid, set, out } => {
            let json = std::fs::read_to_string(&config)
                .map_err(|e| format!("cannot read {}: {e}", config.display()))?;
            let axes: Vec<GridAxis> = grid
                .iter()
                .map(|g| GridAxis::parse(g).map_err(|e| e.to_string()))
                .collect::<Result<_, _>>()?;
            let out_dir = out.unwrap_or_else(|| PathBuf::from("sweep"));
            let runs =
                runner::sweep(&json, &set, &axes, &out_dir).map_err(|e| e.to_string())?;
            let mut failures = 0usize;
            for r in &runs {
                match &r.result {
                    Ok(files) => {
                        println!("ok   {} ({} files)", r.dir.display(), files.len());
                    }
                    Err(e) => {
                        failures += 1;
                        eprintln!("fail {}: {e}", r.dir.display());
                    }
                }
            }
            if failures > 0 {
                Err(format!("{failures} of {} sweep points failed", runs.len()))
            } else {
                Ok(())
            }
        }
    }
}
