//! `ptflab`: batch experiments on threshold-polynomial constructions and the
//! online and parity learners built on them.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CompareArgs, ConstructArgs, LearnDlArgs, LearnParityArgs, ProfileArgs};

#[derive(Debug, Parser)]
#[command(name = "ptflab", version, about = "Threshold-polynomial constructions and learners for decision lists and parities")]
struct Cli {
    /// Read the subcommand and its flags from a JSON object with a "command" key.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Largest n checked exhaustively (also read from PTFLAB_EXHAUSTION_LIMIT).
    #[arg(long, global = true)]
    exhaustion_limit: Option<usize>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a threshold polynomial for a concept and verify it on every input.
    Construct(ConstructArgs),
    /// Run Expanded Winnow on a decision list and report its mistakes.
    LearnDl(LearnDlArgs),
    /// Learn a sparse parity from random examples.
    LearnParity(LearnParityArgs),
    /// Degree and weight over a grid of list lengths and block lengths.
    Profile(ProfileArgs),
    /// Mistake counts of several online learners on the same list.
    Compare(CompareArgs),
}

/// What a finished command found.
pub enum Outcome {
    Success,
    /// The run completed but a check or a learner failed.
    Failure(String),
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let cli = match cli.config {
        Some(path) => {
            if cli.command.is_some() {
                anyhow::bail!("give either --config or a subcommand, not both");
            }
            let argv = config::argv_from_file(&path)?;
            let mut from_file = Cli::try_parse_from(argv)?;
            from_file.exhaustion_limit = from_file.exhaustion_limit.or(cli.exhaustion_limit);
            from_file
        }
        None => cli,
    };
    if let Some(limit) = cli.exhaustion_limit {
        std::env::set_var(ptflab::bits::EXHAUSTION_LIMIT_ENV, limit.to_string());
    }
    match cli.command {
        Some(Command::Construct(a)) => commands::construct(a),
        Some(Command::LearnDl(a)) => commands::learn_dl(a),
        Some(Command::LearnParity(a)) => commands::learn_parity(a),
        Some(Command::Profile(a)) => commands::profile(a),
        Some(Command::Compare(a)) => commands::compare(a),
        None => anyhow::bail!("no subcommand given (see --help)"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Failure(msg)) => {
            eprintln!("FAILED: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            if let Some(clap_err) = e.downcast_ref::<clap::Error>() {
                let _ = clap_err.print();
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(2)
        }
    }
}
