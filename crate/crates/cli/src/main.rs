//! `dchar`: batch front end for Witt-vector, jet-space and differential-character runs.

mod config;
mod records;
mod run;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::{Overrides, RunConfig, Task};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("certification failure: {0}")]
    Certification(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Config(_) | CliError::Io(_) => ExitCode::from(2),
            CliError::Certification(_) => ExitCode::from(3),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "dchar", version, about = "Differential characters of Drinfeld modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// JSON-lines output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print a human-readable summary.
    #[arg(long, global = true)]
    pretty: bool,
    #[arg(long, global = true)]
    max_order: Option<usize>,
    /// Reported precision N.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Extra digits carried internally.
    #[arg(long, global = true)]
    pad: Option<u32>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Witt-vector laws on random vectors over the configured ring.
    WittCheck,
    /// Linearization, Ψ structure and lateral Frobenius certificates for one module.
    JetCheck,
    /// Splitting data, Θ_m and its Frobenius pullbacks for one module.
    Characters,
    /// Splitting data and crystal matrices for one module.
    Crystal,
    /// Crystal records for a seeded random family, plus a CSV table.
    Sweep,
    /// The acceptance suite with a scoreboard.
    Selftest,
}

impl Command {
    fn task(self) -> Task {
        match self {
            Command::WittCheck => Task::WittCheck,
            Command::JetCheck => Task::JetCheck,
            Command::Characters => Task::Characters,
            Command::Crystal => Task::Crystal,
            Command::Sweep => Task::Sweep,
            Command::Selftest => Task::Selftest,
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn execute(cli: &Cli) -> Result<bool, CliError> {
    let task = cli.command.task();
    let (outcome, out, csv_path) = if task == Task::Selftest && cli.config.is_none() {
        (run::selftest(), cli.out.clone(), None)
    } else {
        let path = cli.config.as_ref().ok_or_else(|| CliError::Config("--config is required".into()))?;
        let mut cfg = RunConfig::load(path)?;
        cfg.apply(&Overrides {
            seed: cli.seed,
            precision: cli.precision,
            pad: cli.pad,
            max_order: cli.max_order,
            out: cli.out.clone(),
        });
        cfg.validate(task)?;
        let csv_path = cfg.csv.clone().or_else(|| cfg.output.as_ref().map(|o| o.with_extension("csv")));
        (run::run(task, &cfg)?, cfg.output.clone(), csv_path)
    };

    let mut text = outcome.records.join("\n");
    text.push('\n');
    match &out {
        Some(path) => write_file(path, text.as_bytes())?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?,
    }
    if let Some(csv) = &outcome.csv {
        match &csv_path {
            Some(path) => write_file(path, csv)?,
            None => eprintln!("no output path; CSV table not written"),
        }
    }
    if cli.pretty || task == Task::Selftest {
        let summary = outcome.summary.join("\n");
        if out.is_some() {
            println!("{summary}");
        } else {
            eprintln!("{summary}");
        }
    }
    Ok(outcome.certified)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("certification failure: see the certificates in the output records");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("dchar: {e}");
            e.exit_code()
        }
    }
}
