//! `izclose2`: classify m-primary monomial ideals as minors of integrally
//! closed rank-two modules, and run the underlying pipelines one at a time.
//!
//! Exit codes: 0 success or EXISTS, 1 NOT_EXISTS or a failed verification,
//! 2 parse error, 3 precondition violation.

mod report;
mod run;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use izclose::Settings;

use run::{Command, Job};

#[derive(Parser)]
#[command(name = "izclose2", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest truncation degree any certificate may use.
    #[arg(long, global = true, default_value_t = 64)]
    degree_bound: u32,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the ideal is the minors ideal of an indecomposable closed module.
    Classify { ideal: String },
    /// Construct and verify a witness module.
    Witness { ideal: String },
    /// Run the five witness checks on a module.
    VerifyModule {
        matrix: String,
        /// Target ideal; defaults to the closure of the 2x2 minors.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Integral closure of a monomial ideal.
    ClosureIdeal { ideal: String },
    /// Integral closure of a module with monomial-closure minors.
    ClosureModule { matrix: String },
    /// Factor a closed ideal into simple complete ideals.
    Factor { ideal: String },
    /// Split a module with minors (x^m, xy, y^n) into a direct sum.
    Decompose { matrix: String },
    /// Draw the staircase.
    Render { ideal: String },
}

fn read_arg(arg: &str) -> anyhow::Result<String> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
    Ok(s.trim_end().to_string())
}

fn main() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    let (command, input, ideal) = match &cli.command {
        Cmd::Classify { ideal } => (Command::Classify, ideal, None),
        Cmd::Witness { ideal } => (Command::Witness, ideal, None),
        Cmd::VerifyModule { matrix, ideal } => (Command::VerifyModule, matrix, ideal.as_ref()),
        Cmd::ClosureIdeal { ideal } => (Command::ClosureIdeal, ideal, None),
        Cmd::ClosureModule { matrix } => (Command::ClosureModule, matrix, None),
        Cmd::Factor { ideal } => (Command::Factor, ideal, None),
        Cmd::Decompose { matrix } => (Command::Decompose, matrix, None),
        Cmd::Render { ideal } => (Command::Render, ideal, None),
    };
    let input = read_arg(input)?;
    let ideal = ideal.map(|s| read_arg(s)).transpose()?;
    let job = Job {
        command,
        input: &input,
        ideal: ideal.as_deref(),
        settings: Settings {
            seed: cli.seed,
            degree_bound: cli.degree_bound,
        },
    };
    let report = run::run(&job);
    let text = if cli.json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::from(report.exit_code as u8))
}
