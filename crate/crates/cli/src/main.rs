use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use realign_core::CRITERION_TOL;

#[derive(Parser)]
#[command(
    name = "realign",
    version,
    about = "Realignment and partial-transpose entanglement tests"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a state file and run every applicable criterion.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = CRITERION_TOL)]
        tol: f64,
        /// Emit key=value records instead of the aligned report.
        #[arg(long)]
        machine: bool,
    },
    /// Scan a one-parameter family and write a CSV.
    Sweep {
        #[arg(long)]
        family: String,
        /// Grid as from:to:step.
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = CRITERION_TOL)]
        tol: f64,
    },
    /// Write a built-in state to a state file.
    Gen {
        #[arg(long)]
        family: String,
        /// Family parameter as key=value; repeatable.
        #[arg(long = "param", allow_hyphen_values = true)]
        params: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Time the full singular spectrum against the minimum-only path.
    Bench {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { file, tol, machine } => realign_cli::cmd_check(&file, tol, machine),
        Command::Sweep {
            family,
            range,
            out,
            tol,
        } => realign_cli::cmd_sweep(&family, &range, &out, tol),
        Command::Gen {
            family,
            params,
            out,
        } => realign_cli::cmd_gen(&family, &params, &out),
        Command::Bench { d, trials, seed } => realign_cli::cmd_bench(d, trials, seed),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
