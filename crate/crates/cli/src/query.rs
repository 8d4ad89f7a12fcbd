use std::path::PathBuf;
use std::process::ExitCode;

use avghac::dendrogram::infer_leaf_count;
use avghac::{Dendrogram, HacError, NumericMode, Rational, Result, Weight, F64};
use clap::Args;
use serde_json::json;

use crate::io::read_input;

#[derive(Args)]
pub struct QueryArgs {
    /// Dendrogram written by `run`; a trailing telemetry line is ignored.
    pub dendrogram: PathBuf,
    pub u: usize,
    pub v: usize,
    /// Leaf count; inferred from the first merge when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    /// Numeric mode the dendrogram was written in.
    #[arg(long, default_value = "rational")]
    pub mode: NumericMode,
}

pub fn cmd_query(args: &QueryArgs) -> Result<ExitCode> {
    let raw = read_input(Some(&args.dendrogram))?;
    // Blank out telemetry lines instead of dropping them so parse errors keep
    // their line numbers.
    let text: String = raw
        .lines()
        .map(|l| if l.trim_start().starts_with("{\"telemetry\"") { "" } else { l })
        .collect::<Vec<_>>()
        .join("\n");
    let n = match args.n.or_else(|| infer_leaf_count(&text)) {
        Some(n) => n,
        None => return Err(HacError::Usage("empty dendrogram; pass --n".into())),
    };
    let step = match args.mode {
        NumericMode::Rational => merge_index::<Rational>(n, &text, args)?,
        NumericMode::Float => merge_index::<F64>(n, &text, args)?,
    };
    println!("{}", json!({ "u": args.u, "v": args.v, "merge_index": step }));
    Ok(ExitCode::SUCCESS)
}

fn merge_index<W: Weight>(n: usize, text: &str, args: &QueryArgs) -> Result<Option<usize>> {
    Dendrogram::<W>::from_jsonl(n, text)?.merge_index(args.u, args.v)
}
