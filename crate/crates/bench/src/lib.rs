//! Seeded inputs shared by the benchmarks.

use avghac::gen::{random_poly_path, random_sparse_graph, rng};
use avghac::{Weight, WeightedGraph};

pub const SEED: u64 = 7;

#[derive(Debug, Clone, Copy)]
pub struct Input {
    pub name: &'static str,
    pub n: usize,
}

pub const SMALL: Input = Input { name: "small", n: 1 << 10 };
pub const MEDIUM: Input = Input { name: "medium", n: 1 << 13 };
pub const LARGE: Input = Input { name: "large", n: 1 << 16 };

/// Connected graph with about `3n` edges and distinct weights.
pub fn sparse<W: Weight>(input: Input) -> WeightedGraph<W> {
    random_sparse_graph(&mut rng(SEED + input.n as u64), input.n)
}

/// Path with distinct weights and aspect ratio at most `n^3`.
pub fn path<W: Weight>(input: Input) -> WeightedGraph<W> {
    random_poly_path(&mut rng(SEED + input.n as u64), input.n)
}
