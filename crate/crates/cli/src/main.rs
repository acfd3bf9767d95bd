//! `patmine`: mine frequent patterns, condense them under local constraints
//! and a dominance relation, select tilings of binary matrices, and check
//! the whole pipeline against brute force on small inputs.
//!
//! Exit status: 0 success, 1 unsatisfiable tiling or oracle disagreement,
//! 2 usage error, 3 unreadable or malformed input.

mod condense;
mod error;
mod mine;
mod pipeline;
mod summary;
mod tile;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::Failure;

#[derive(Debug, Parser)]
#[command(name = "patmine", version, about = "Condensed pattern mining and tile selection")]
struct Cli {
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write every frequent pattern of a dataset.
    Mine(mine::MineArgs),
    /// Keep the valid patterns of a pattern file that no other valid pattern dominates.
    Condense(condense::CondenseArgs),
    /// Choose candidate tiles whose tiling error fits a budget.
    Tile(tile::TileArgs),
    /// Compare mining and condensation with brute-force enumeration.
    Verify(verify::VerifyArgs),
}

impl Command {
    /// Whether the summary may use standard output, which otherwise carries the results.
    fn summary_to_stdout(&self) -> bool {
        match self {
            Command::Mine(a) => a.out.is_some(),
            Command::Condense(a) => a.out.is_some(),
            Command::Tile(a) => a.out.is_some(),
            Command::Verify(_) => true,
        }
    }
}

fn run(cli: &Cli) -> Result<summary::Summary, Failure> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Failure::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Mine(a) => mine::run(a),
        Command::Condense(a) => condense::run(a),
        Command::Tile(a) => tile::run(a),
        Command::Verify(a) => verify::run(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let to_stdout = cli.command.summary_to_stdout();
    let report = |text: &str| {
        if to_stdout {
            println!("{}", text.trim_end());
        } else {
            eprintln!("{}", text.trim_end());
        }
    };
    match run(&cli) {
        Ok(summary) => {
            report(&summary.to_string());
            ExitCode::SUCCESS
        }
        Err(f) => {
            match &f {
                Failure::Negative(text) => report(text),
                other => eprintln!("patmine: {other}"),
            }
            ExitCode::from(f.code())
        }
    }
}
