use clap::{Parser, Subcommand};
use rbl::commands;
use std::path::PathBuf;
use std::process::ExitCode;

/// Headless multi-robot flocking simulator.
///
/// Set RBL_LOG (off, error, info, debug) for progress logging.
#[derive(Parser)]
#[command(name = "rbl", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one scenario and write trace, verdicts, metrics, and plot.
    Run {
        /// Scenario JSON file.
        scenario: PathBuf,
        /// Output directory (created if missing).
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Replace the scenario's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Skip the trajectory SVG.
        #[arg(long)]
        no_svg: bool,
    },
    /// Simulate one scenario under a range of seeds and write a summary.
    Batch {
        /// Scenario JSON file.
        scenario: PathBuf,
        /// Inclusive seed range, e.g. 1..50.
        #[arg(long)]
        seeds: String,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Output directory (created if missing).
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Re-check a recorded trace against a scenario's requirements.
    Check {
        /// Scenario JSON file.
        scenario: PathBuf,
        /// Trace CSV produced by `run`.
        trace: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("RBL_LOG")).init();
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run {
            scenario,
            out,
            seed,
            no_svg,
        } => commands::cmd_run(&scenario, &out, seed, !no_svg),
        Command::Batch {
            scenario,
            seeds,
            jobs,
            out,
        } => commands::cmd_batch(&scenario, &seeds, jobs, &out),
        Command::Check { scenario, trace } => commands::cmd_check(&scenario, &trace),
    };
    ExitCode::from(code as u8)
}
