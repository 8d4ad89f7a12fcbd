use std::process::ExitCode;
use std::time::Instant;

use avghac::engines::HeapConfig;
use avghac::verify::{all_passed, verify_all, verify_engines, verify_path, verify_reductions, VerifyConfig};
use avghac::Result;
use clap::{Args, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Oracle, NN-chain and heap engines agree, ties included.
    Engines,
    /// Path engine equals the oracle and is worker-count independent.
    Path,
    /// Triangle, LFM and Adaptive Minimum gadgets decode correctly.
    Reductions,
    All,
}

#[derive(Args)]
pub struct VerifyArgs {
    pub suite: Suite,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Largest random graph or path.
    #[arg(long, default_value_t = 32)]
    pub max_n: usize,
    /// Random instances per check.
    #[arg(long, default_value_t = 200)]
    pub instances: usize,
    /// Random 3x3 unit-expanded tree instances (several seconds each).
    #[arg(long, default_value_t = 1)]
    pub expanded: usize,
    /// Audit every neighbor heap after each heap-engine merge.
    #[arg(long)]
    pub audit: bool,
    /// Break the heap engine's tie order to show the suite catches it.
    #[arg(long)]
    pub inject_tie_bug: bool,
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let cfg = VerifyConfig {
        seed: args.seed,
        max_n: args.max_n,
        instances: args.instances,
        expanded_instances: args.expanded,
        heap: HeapConfig { audit: args.audit, reverse_ties: args.inject_tie_bug },
    };
    let start = Instant::now();
    let reports = match args.suite {
        Suite::Engines => verify_engines(&cfg),
        Suite::Path => verify_path(&cfg),
        Suite::Reductions => verify_reductions(&cfg),
        Suite::All => verify_all(&cfg),
    };
    for r in &reports {
        println!("{}", r.to_json());
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        eprintln!("{verdict} {}/{}: {}", r.suite, r.check, r.detail);
        if let Some(cx) = &r.counterexample {
            match cx.step {
                Some(step) => eprintln!("  {} (step {step})", cx.message),
                None => eprintln!("  {}", cx.message),
            }
            for line in cx.input.lines() {
                eprintln!("  | {line}");
            }
        }
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    eprintln!("{} checks, {failed} failed, seed {} in {:.1}s", reports.len(), args.seed, start.elapsed().as_secs_f64());
    Ok(if all_passed(&reports) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
