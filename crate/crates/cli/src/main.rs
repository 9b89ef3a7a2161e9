//! `markov-lab`: config-driven Markov factor experiments.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 configuration
//! or input error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{artifact_path, CliError, Context, Outcome};

#[derive(Parser)]
#[command(name = "markov-lab", version, about = "Markov factors and exponents of polynomial norms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct RunArgs {
    /// JSON experiment config.
    #[arg(long)]
    config: PathBuf,
    /// Overrides the config seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the config output prefix.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluates `normspec` on `poly`.
    Norm(RunArgs),
    /// Markov factors of `operator` under `normspec` at each of `degrees`.
    FactorTable(RunArgs),
    /// Fits the exponent of a factor-table CSV.
    Fit(RunArgs),
    /// Runs a named check suite.
    Verify(RunArgs),
    /// Recurrence coefficients and sup norms of an orthonormal system.
    OrthoExport(RunArgs),
}

type Handler = fn(&Context) -> Result<Outcome, CliError>;

fn run(command: Command) -> Result<bool, CliError> {
    let (args, f): (RunArgs, Handler) = match command {
        Command::Norm(a) => (a, commands::norm),
        Command::FactorTable(a) => (a, commands::factor),
        Command::Fit(a) => (a, commands::fit),
        Command::Verify(a) => (a, commands::verify),
        Command::OrthoExport(a) => (a, commands::ortho_export),
    };
    let (cfg, raw) = config::load(&args.config)?;
    let prefix = args.out.or_else(|| cfg.output.clone());
    let ctx = Context::new(cfg, &raw, args.seed);
    let outcome = f(&ctx)?;
    match prefix {
        Some(prefix) => {
            let path = artifact_path(&prefix, outcome.extension);
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
            }
            std::fs::write(&path, &outcome.artifact)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            println!("{}", outcome.summary);
            eprintln!("wrote {}", path.display());
        }
        None => {
            // the norm value leads so scripts can read the first line
            if outcome.extension == "norm.json" {
                println!("{}", outcome.summary);
            } else {
                eprintln!("{}", outcome.summary);
            }
            print!("{}", outcome.artifact);
        }
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
