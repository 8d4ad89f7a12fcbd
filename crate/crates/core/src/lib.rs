//! Exact average-linkage hierarchical agglomerative clustering on weighted
//! graphs.

pub mod cluster;
pub mod dendrogram;
pub mod engines;
pub mod error;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod pathhac;
pub mod reductions;
pub mod verify;
pub mod weight;

pub use cluster::{ClusterId, ClusterState};
pub use dendrogram::{ClusterKey, Dendrogram, DendrogramStats, MergeRecord};
pub use engines::{run_heap_based, run_nn_chain, Telemetry};
pub use error::{HacError, Result};
pub use graph::{Edge, WeightedGraph};
pub use oracle::{run_greedy, run_greedy_with_sizes};
pub use weight::{normalized_similarity, NumericMode, Rational, Weight, F64};
