//! Parallel average-linkage HAC for path graphs.
//!
//! Phases walk down geometric similarity buckets `((2/3)^t w_max, (2/3)^(t-1) w_max]`.
//! Within a phase, each maximal run of in-bucket edges splits into
//! nearest-neighbor chains, chains into size-doubling subchains, and a
//! category scan decides where the run can be cut into independently
//! simulated segments. Every planned cut is then checked against the merged
//! timelines of its two segments; a cut that would have merged is dropped and
//! the joined segment re-simulated, so the output always equals the
//! sequential greedy order.

mod bucket;
mod category;
mod chains;
mod engine;
mod simulate;

pub use bucket::{bucket_floor, bucket_index};
pub use category::{arm_categories, classify_subchain, xor_category_scan, Category};
pub use chains::{build_chains, split_subchains, Chain, ChainSet};
pub use engine::{run_path_hac, run_path_hac_with, PathConfig, PathStats};
pub use simulate::{simulate_segment, EdgeKey, SegmentEvent, SegmentInput};
