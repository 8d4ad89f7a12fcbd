use std::path::PathBuf;
use std::process::ExitCode;

use avghac::gen::{random_poly_path, random_sparse_graph, rng};
use avghac::reductions::{build_adaptive_min_tree_with, build_triangle_instance, reduce_lfm_to_adaptive_min};
use avghac::verify::{random_adaptive_min, random_lfm_instance, random_simple_graph};
use avghac::{HacError, NumericMode, Rational, Result, Weight, WeightedGraph, F64};
use clap::{Args, ValueEnum};

use crate::io::write_output;
use crate::reduce::Variant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Random path with aspect ratio at most n^3.
    Path,
    /// Sparse connected graph with about 3n edges.
    Sparse,
    /// Random unweighted graph on n vertices; `--gadget` emits its HAC gadget.
    Triangle,
    /// Random bipartite LFM instance with n vertices per side; `--gadget`
    /// emits the Adaptive Minimum instance it reduces to.
    Lfm,
    /// Random n x n Adaptive Minimum instance; `--gadget` emits its tree.
    Am,
}

#[derive(Args)]
pub struct GenArgs {
    pub kind: Kind,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Weight type for `path` and `sparse`.
    #[arg(long, default_value = "rational")]
    pub mode: NumericMode,
    /// Emit the reduction gadget instead of the source instance.
    #[arg(long)]
    pub gadget: bool,
    #[arg(long, value_enum, default_value_t = Variant::Sized)]
    pub variant: Variant,
    #[arg(long, default_value_t = avghac::reductions::DEFAULT_NODE_BUDGET)]
    pub node_budget: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

pub fn cmd_gen(args: &GenArgs) -> Result<ExitCode> {
    if args.n == 0 {
        return Err(HacError::Usage("--n must be positive".into()));
    }
    let text = match args.kind {
        Kind::Path | Kind::Sparse => match args.mode {
            NumericMode::Rational => graph::<Rational>(args),
            NumericMode::Float => graph::<F64>(args),
        },
        Kind::Triangle | Kind::Lfm | Kind::Am if args.mode != NumericMode::Rational => {
            return Err(HacError::Usage("reduction fixtures are exact; use --mode rational".into()))
        }
        Kind::Triangle => {
            let g = random_simple_graph(&mut rng(args.seed), args.n);
            if args.gadget {
                build_triangle_instance(&g)?.gadget.to_text()
            } else {
                g.to_text()
            }
        }
        Kind::Lfm => {
            let inst = random_lfm_instance(&mut rng(args.seed), args.n);
            if args.gadget {
                reduce_lfm_to_adaptive_min(&inst).to_text()
            } else {
                inst.to_text()
            }
        }
        Kind::Am => {
            let inst = random_adaptive_min(&mut rng(args.seed), args.n);
            if args.gadget {
                build_adaptive_min_tree_with(&inst, args.variant.into(), args.node_budget)?.graph().to_text()
            } else {
                inst.to_text()
            }
        }
    };
    write_output(args.output.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn graph<W: Weight>(args: &GenArgs) -> String {
    let mut r = rng(args.seed);
    let g: WeightedGraph<W> = match args.kind {
        Kind::Path => random_poly_path(&mut r, args.n),
        _ => random_sparse_graph(&mut r, args.n),
    };
    g.to_text()
}
