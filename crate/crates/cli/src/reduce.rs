use std::path::PathBuf;
use std::process::ExitCode;

use avghac::reductions::{
    build_adaptive_min_tree_with, build_triangle_instance, decode_lfm, decode_triangle, has_triangle,
    reduce_lfm_to_adaptive_min, run_tree_hac, solve_adaptive_min_via_hac, AdaptiveMinInstance, LfmInstance,
    SimpleGraph, TreeHacInstance, TreeVariant, DEFAULT_NODE_BUDGET,
};
use avghac::{run_heap_based, HacError, NumericMode, Result};
use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use crate::io::{read_input, write_output};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    /// Triangle detection in an unweighted graph.
    Triangle,
    /// Whether the query edge is in the lexicographically first maximal matching.
    Lfm,
    /// Adaptive Minimum, solved through the depth-2 tree gadget.
    AdminTree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Sized,
    UnitExpanded,
}

impl From<Variant> for TreeVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Sized => TreeVariant::Sized,
            Variant::UnitExpanded => TreeVariant::UnitExpanded,
        }
    }
}

#[derive(Args)]
pub struct ReduceArgs {
    pub problem: Problem,
    /// Instance file; standard input when omitted or `-`.
    pub input: Option<PathBuf>,
    /// Gadgets need exact arithmetic; only `rational` is accepted.
    #[arg(long, default_value = "rational")]
    pub mode: NumericMode,
    /// Target row for `admin-tree`; defaults to the one in the file.
    #[arg(long)]
    pub x: Option<usize>,
    /// How the tree gadget realizes cluster sizes.
    #[arg(long, value_enum, default_value_t = Variant::Sized)]
    pub variant: Variant,
    /// Largest vertex count allowed for unit expansion.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: usize,
    /// Write the gadget graph here.
    #[arg(long, value_name = "FILE")]
    pub gadget: Option<PathBuf>,
    /// Write the gadget's dendrogram here.
    #[arg(long, value_name = "FILE")]
    pub merges: Option<PathBuf>,
    /// Print one JSON object instead of `key: value`.
    #[arg(long)]
    pub json: bool,
}

pub fn cmd_reduce(args: &ReduceArgs) -> Result<ExitCode> {
    if args.mode != NumericMode::Rational {
        return Err(HacError::Usage("reductions need exact arithmetic; use --mode rational".into()));
    }
    let text = read_input(args.input.as_deref())?;
    let (line, report) = match args.problem {
        Problem::Triangle => triangle(args, &text)?,
        Problem::Lfm => lfm(args, &text)?,
        Problem::AdminTree => admin_tree(args, &text)?,
    };
    if args.json {
        println!("{report}");
    } else {
        println!("{line}");
    }
    Ok(ExitCode::SUCCESS)
}

fn triangle(args: &ReduceArgs, text: &str) -> Result<(String, Value)> {
    let g = SimpleGraph::parse(text)?;
    let inst = build_triangle_instance(&g)?;
    let d = run_heap_based(&inst.gadget).0;
    let found = decode_triangle(&inst, &d);
    if found != has_triangle(&g) {
        return Err(HacError::Decode(format!("gadget decoded {found}, brute force disagrees")));
    }
    dump(args, &inst.gadget.to_text(), || d.to_jsonl())?;
    let report = json!({
        "problem": "triangle",
        "triangle": found,
        "t": g.t,
        "edges": g.edges.len(),
        "gadget_vertices": inst.gadget.n(),
        "gadget_edges": inst.gadget.m(),
    });
    Ok((format!("triangle: {found}"), report))
}

fn lfm(args: &ReduceArgs, text: &str) -> Result<(String, Value)> {
    let inst = LfmInstance::parse(text)?;
    let am = reduce_lfm_to_adaptive_min(&inst);
    let tree = build_adaptive_min_tree_with(&am, args.variant.into(), args.node_budget)?;
    let k_x = solve_adaptive_min_via_hac(&tree, am.x)?;
    let matched = decode_lfm(&inst, k_x);
    dump_tree(args, &tree)?;
    let report = json!({
        "problem": "lfm",
        "in_matching": matched,
        "query": [inst.query.0, inst.query.1],
        "k_x": k_x,
        "tree_vertices": tree.graph().n(),
    });
    Ok((format!("in_matching: {matched}"), report))
}

fn admin_tree(args: &ReduceArgs, text: &str) -> Result<(String, Value)> {
    let mut inst = AdaptiveMinInstance::parse(text)?;
    if let Some(x) = args.x {
        inst = inst.with_target(x)?;
    }
    let tree = build_adaptive_min_tree_with(&inst, args.variant.into(), args.node_budget)?;
    let k_x = solve_adaptive_min_via_hac(&tree, inst.x)?;
    dump_tree(args, &tree)?;
    let report = json!({
        "problem": "admin-tree",
        "x": inst.x,
        "k_x": k_x,
        "variant": format!("{:?}", args.variant),
        "tree_vertices": tree.graph().n(),
    });
    Ok((format!("k_x = {k_x}"), report))
}

fn dump_tree(args: &ReduceArgs, tree: &TreeHacInstance) -> Result<()> {
    dump(args, &tree.graph().to_text(), || run_tree_hac(tree).to_jsonl())
}

fn dump(args: &ReduceArgs, gadget: &str, merges: impl FnOnce() -> String) -> Result<()> {
    if let Some(path) = &args.gadget {
        write_output(Some(path), gadget)?;
    }
    if let Some(path) = &args.merges {
        write_output(Some(path), &merges())?;
    }
    Ok(())
}
