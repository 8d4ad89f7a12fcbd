use std::process::ExitCode;
use std::time::Instant;

use avghac::gen::{random_poly_path, random_sparse_graph, rng, GENERATOR};
use avghac::{NumericMode, Rational, Result, Weight, WeightedGraph, F64};
use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use crate::run::{run_engine, Algo};

/// The oracle rescans every edge per merge; larger inputs take too long.
pub const ORACLE_MAX_N: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Path engine on random paths with aspect ratio at most n^3.
    Path,
    /// Heap engine on sparse random graphs with about 3n edges.
    Heap,
    /// NN-chain engine on the same sparse graphs.
    Chain,
    /// Oracle on the same sparse graphs, up to 512 vertices.
    Oracle,
}

#[derive(Args)]
pub struct BenchArgs {
    pub target: Target,
    /// Comma-separated vertex counts; each row reports its time ratio to the previous one.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value = "float")]
    pub mode: NumericMode,
    /// Runs per size; the fastest is reported.
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
}

pub fn cmd_bench(args: &BenchArgs) -> Result<ExitCode> {
    let sizes = if args.sizes.is_empty() { default_sizes(args.target) } else { args.sizes.clone() };
    let mut previous: Option<f64> = None;
    for n in sizes {
        let row = match args.mode {
            NumericMode::Rational => bench_row::<Rational>(args, n, previous)?,
            NumericMode::Float => bench_row::<F64>(args, n, previous)?,
        };
        previous = row["seconds"].as_f64();
        println!("{row}");
    }
    Ok(ExitCode::SUCCESS)
}

fn default_sizes(target: Target) -> Vec<usize> {
    match target {
        Target::Path => vec![1 << 16, 1 << 17],
        Target::Heap | Target::Chain => vec![1024, 2048, 4096],
        Target::Oracle => vec![128, 256, 512],
    }
}

fn bench_row<W: Weight>(args: &BenchArgs, n: usize, previous: Option<f64>) -> Result<Value> {
    let target = format!("{:?}", args.target).to_lowercase();
    if args.target == Target::Oracle && n > ORACLE_MAX_N {
        let note = format!("oracle refused at n = {n}; the limit is {ORACLE_MAX_N}");
        eprintln!("{note}");
        return Ok(json!({ "target": target, "n": n, "refused": note }));
    }
    let mut r = rng(args.seed.wrapping_add(n as u64));
    let g: WeightedGraph<W> = match args.target {
        Target::Path => random_poly_path(&mut r, n),
        _ => random_sparse_graph(&mut r, n),
    };
    let algo = match args.target {
        Target::Path => Algo::Path,
        Target::Heap => Algo::Heap,
        Target::Chain => Algo::Chain,
        Target::Oracle => Algo::Oracle,
    };
    let mut best = f64::INFINITY;
    let mut last = None;
    for _ in 0..args.repeat.max(1) {
        let start = Instant::now();
        let out = run_engine(&g, algo, args.workers)?;
        best = best.min(start.elapsed().as_secs_f64());
        last = Some(out);
    }
    let (d, telemetry) = last.expect("at least one run");
    let h = d.height();
    let mh_log2n = g.m() as f64 * h as f64 * (n.max(2) as f64).log2();
    let normalized = telemetry["heap_ops"].as_f64().map(|ops| ops / mh_log2n);
    eprintln!("{target}: n={n} m={} height={h} {best:.3}s", g.m());
    Ok(json!({
        "target": target,
        "n": n,
        "m": g.m(),
        "mode": format!("{:?}", args.mode).to_lowercase(),
        "workers": args.workers,
        "seed": args.seed,
        "generator": GENERATOR,
        "seconds": best,
        "ratio": previous.map(|p| best / p),
        "height": h,
        "m_h_log2n": mh_log2n,
        "heap_ops_per_m_h_log2n": normalized,
        "telemetry": telemetry,
    }))
}
