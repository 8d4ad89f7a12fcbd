//! Executable hardness reductions: instance builders, brute-force oracles,
//! and decoders that read the answer back out of an exact HAC merge
//! sequence. All gadgets use exact rationals.

mod adaptive;
mod expand;
mod lfm;
mod tree;
mod triangle;

pub use adaptive::{simulate_adaptive_minimum, AdaptiveMinInstance};
pub use expand::{auxiliary_first, expand_unit_sizes, restrict_to_original, ExpandedGraph, DEFAULT_NODE_BUDGET};
pub use lfm::{decode_lfm, greedy_lfm_matching, reduce_lfm_to_adaptive_min, LfmInstance, LfmMatching};
pub use tree::{
    audit_tree_phases, build_adaptive_min_tree, build_adaptive_min_tree_with, decode_root_order, run_tree_hac,
    solve_adaptive_min_via_hac, TreeHacInstance, TreeVariant,
};
pub use triangle::{
    audit_round_order, build_triangle_instance, decode_triangle, detect_triangle_via_hac, has_triangle,
    triangle_epsilon, SimpleGraph, TriangleInstance,
};
