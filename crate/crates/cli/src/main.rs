//! `avghac`: exact average-linkage HAC from the command line.
//!
//! Results go to standard output as JSON lines; summaries go to standard
//! error. Exit status is 0 on success, 1 when a verification or decode check
//! fails, and 2 on bad input or usage.

mod bench;
mod gen;
mod io;
mod query;
mod reduce;
mod run;
mod verify;

use std::process::ExitCode;

use avghac::HacError;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "avghac", version, about = "Exact average-linkage hierarchical agglomerative clustering")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster a graph and write its dendrogram.
    Run(run::RunArgs),
    /// Solve a problem instance through its HAC gadget.
    Reduce(reduce::ReduceArgs),
    /// Run seeded cross-checks against the brute-force oracles.
    Verify(verify::VerifyArgs),
    /// Time an engine on generated inputs of growing size.
    Bench(bench::BenchArgs),
    /// Report the step at which two leaves first share a cluster.
    Query(query::QueryArgs),
    /// Write a generated fixture.
    Gen(gen::GenArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Run(args) => run::cmd_run(args),
        Command::Reduce(args) => reduce::cmd_reduce(args),
        Command::Verify(args) => verify::cmd_verify(args),
        Command::Bench(args) => bench::cmd_bench(args),
        Command::Query(args) => query::cmd_query(args),
        Command::Gen(args) => gen::cmd_gen(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                HacError::Decode(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
