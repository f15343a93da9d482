mod bench;
mod build;
mod gen;
mod input;
mod query;
mod scan;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Approximate near-neighbor search for time series under the Fréchet distance.
#[derive(Parser)]
#[command(name = "tsfrechet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index over a curve file.
    Build(build::Args),
    /// Answer queries from a curve file against a saved index.
    Query(query::Args),
    /// List every input within delta of each query by exact search.
    Scan(scan::Args),
    /// Write an orthogonal-vectors gadget workload.
    Gen(gen::Args),
    /// Build several variants and time the queries.
    Bench(bench::Args),
}

/// How a command that ran to completion ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Clean,
    /// Some lines could not be processed.
    LineErrors,
    /// The oracle disagreed with an answer.
    Violations,
}

/// Threads for building and query replay.
pub const WORKERS_ENV: &str = "TSFRECHET_WORKERS";

pub fn workers() -> anyhow::Result<usize> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => {
            let n: usize = v.trim().parse().map_err(|_| anyhow::anyhow!("{WORKERS_ENV}={v:?} is not a count"))?;
            Ok(n.max(1))
        }
        Err(_) => Ok(1),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Build(a) => build::run(a),
        Command::Query(a) => query::run(a),
        Command::Scan(a) => scan::run(a),
        Command::Gen(a) => gen::run(a),
        Command::Bench(a) => bench::run(a),
    };
    match result {
        Ok(Status::Clean) => ExitCode::SUCCESS,
        Ok(Status::LineErrors) => ExitCode::from(1),
        Ok(Status::Violations) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
