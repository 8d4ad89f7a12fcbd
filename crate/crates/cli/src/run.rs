use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use avghac::engines::run_nn_chain_with_telemetry;
use avghac::pathhac::{run_path_hac_with, PathConfig};
use avghac::{run_greedy, run_heap_based, Dendrogram, NumericMode, Rational, Result, Weight, WeightedGraph, F64};
use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use crate::io::{read_input, write_output};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    /// Brute-force greedy merging; slow, used as the reference.
    Oracle,
    /// Nearest-neighbor chain; merges are emitted in chain order.
    Chain,
    /// Global heap over per-cluster neighbor heaps.
    Heap,
    /// Parallel engine for path graphs.
    Path,
}

#[derive(Args)]
pub struct RunArgs {
    /// Graph file; standard input when omitted or `-`.
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Algo::Heap)]
    pub algo: Algo,
    /// `rational` for exact arithmetic or `float`.
    #[arg(long, default_value = "rational")]
    pub mode: NumericMode,
    /// Dendrogram destination; standard output by default.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Worker threads for the path engine; 0 uses all cores.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Emit engine counters: as a final `{"telemetry": ...}` line after the
    /// dendrogram, or into FILE when given as `--telemetry=FILE`.
    #[arg(long, num_args = 0..=1, require_equals = true, value_name = "FILE")]
    pub telemetry: Option<Option<PathBuf>>,
}

pub fn cmd_run(args: &RunArgs) -> Result<ExitCode> {
    let text = read_input(args.input.as_deref())?;
    match args.mode {
        NumericMode::Rational => run_typed::<Rational>(args, &text),
        NumericMode::Float => run_typed::<F64>(args, &text),
    }
}

/// Runs one engine and returns its dendrogram with the engine's counters.
pub fn run_engine<W: Weight>(g: &WeightedGraph<W>, algo: Algo, workers: usize) -> Result<(Dendrogram<W>, Value)> {
    Ok(match algo {
        Algo::Oracle => {
            let d = run_greedy(g);
            let merges = d.len();
            (d, json!({ "merges": merges }))
        }
        Algo::Chain => {
            let (d, t) = run_nn_chain_with_telemetry(g, false);
            (d, t.to_json())
        }
        Algo::Heap => {
            let (d, t) = run_heap_based(g);
            (d, t.to_json())
        }
        Algo::Path => {
            let (d, stats) = run_path_hac_with(g, PathConfig { workers })?;
            (d, serde_json::to_value(stats).expect("plain counters serialize"))
        }
    })
}

fn run_typed<W: Weight>(args: &RunArgs, text: &str) -> Result<ExitCode> {
    let g = WeightedGraph::<W>::parse(text)?;
    let start = Instant::now();
    let (d, telemetry) = run_engine(&g, args.algo, args.workers)?;
    let seconds = start.elapsed().as_secs_f64();
    eprintln!("{:?}: n={} m={} merges={} height={} in {seconds:.3}s", args.algo, g.n(), g.m(), d.len(), d.height());
    let mut out = d.to_jsonl();
    match &args.telemetry {
        None => {}
        Some(None) => {
            out.push_str(&json!({ "telemetry": telemetry }).to_string());
            out.push('\n');
        }
        Some(Some(path)) => write_output(Some(path), &format!("{telemetry}\n"))?,
    }
    write_output(args.output.as_deref(), &out)?;
    Ok(ExitCode::SUCCESS)
}
