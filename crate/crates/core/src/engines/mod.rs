//! Fast sequential engines built on per-cluster neighbor heaps.

mod heap_based;
mod neighbor_heap;
mod nn_chain;
mod state;

pub use heap_based::{run_heap_based, run_heap_based_with, HeapConfig};
pub use neighbor_heap::{NeighborEntry, NeighborHeap};
pub use nn_chain::{run_nn_chain, run_nn_chain_with_telemetry};
pub use state::{BestEdge, HeapState, Telemetry};
