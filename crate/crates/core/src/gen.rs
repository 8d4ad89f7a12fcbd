//! Seeded random instance generators.
//!
//! All randomness flows through [`rng`], so a `(generator, seed)` pair fully
//! determines every instance.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::WeightedGraph;
use crate::weight::Weight;

/// Name and version of the generator; bump on any change to output streams.
pub const GENERATOR: &str = "chacha8-v1";

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws weights `p/q` with `q <= max_den` in `[1, max_value]`, all distinct.
#[derive(Debug)]
pub struct DistinctWeights<W> {
    seen: HashSet<W>,
    distinct: bool,
    max_value: i64,
    max_den: i64,
}

impl<W: Weight> DistinctWeights<W> {
    pub fn new(max_value: i64, max_den: i64) -> Self {
        assert!(max_value >= 1 && max_den >= 1);
        DistinctWeights { seen: HashSet::new(), distinct: true, max_value, max_den }
    }

    /// Drops the distinctness requirement, for tie-heavy instances.
    pub fn allow_repeats(mut self) -> Self {
        self.distinct = false;
        self
    }

    pub fn draw(&mut self, rng: &mut GenRng) -> W {
        loop {
            let q = rng.gen_range(1..=self.max_den);
            let p = rng.gen_range(q..=q.saturating_mul(self.max_value));
            let w = W::from_ratio(p, q);
            if !self.distinct || self.seen.insert(w.clone()) {
                return w;
            }
        }
    }
}

/// Connected graph on `n` vertices: a random spanning tree plus up to
/// `extra` further edges, all with distinct weights.
pub fn random_connected_graph<W: Weight>(
    rng: &mut GenRng,
    n: usize,
    extra: usize,
    weights: &mut DistinctWeights<W>,
) -> WeightedGraph<W> {
    let mut pairs: HashSet<(usize, usize)> = HashSet::new();
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        pairs.insert((u, v));
        edges.push((u, v, weights.draw(rng)));
    }
    let max_pairs = n * n.saturating_sub(1) / 2;
    let target = (n.saturating_sub(1) + extra).min(max_pairs);
    while edges.len() < target {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let key = (u.min(v), u.max(v));
        if u != v && pairs.insert(key) {
            edges.push((key.0, key.1, weights.draw(rng)));
        }
    }
    WeightedGraph::new(n, edges).expect("generated edges are valid")
}

/// Random connected graph with distinct small-denominator rational-style
/// weights, `n` in `n_min..=n_max` and a random density.
pub fn random_small_graph<W: Weight>(rng: &mut GenRng, n_min: usize, n_max: usize) -> WeightedGraph<W> {
    let n = rng.gen_range(n_min..=n_max);
    let max_pairs = n * (n - 1) / 2;
    let extra = rng.gen_range(0..=max_pairs.saturating_sub(n - 1).min(3 * n));
    random_connected_graph(rng, n, extra, &mut DistinctWeights::new(1_000_000, 16))
}

/// Sparse connected graph with about `3n` edges.
pub fn random_sparse_graph<W: Weight>(rng: &mut GenRng, n: usize) -> WeightedGraph<W> {
    random_connected_graph(rng, n, 2 * n, &mut DistinctWeights::new(1_000_000, 16))
}

/// Path over a random vertex order with distinct weights in `[1, max_value]`.
pub fn random_path<W: Weight>(rng: &mut GenRng, n: usize, max_value: i64) -> WeightedGraph<W> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut weights = DistinctWeights::new(max_value, 16);
    let edges: Vec<_> = order.windows(2).map(|p| (p[0], p[1], weights.draw(rng))).collect();
    WeightedGraph::new(n, edges).expect("generated path is valid")
}

/// Path `0-1-...-(n-1)` with the given weights and unit sizes.
pub fn path_graph<W: Weight>(weights: Vec<W>) -> WeightedGraph<W> {
    let n = weights.len() + 1;
    WeightedGraph::new(n, weights.into_iter().enumerate().map(|(i, w)| (i, i + 1, w)))
        .expect("path weights must be positive")
}

/// Path with `n` vertices whose aspect ratio is at most `n^3`.
pub fn random_poly_path<W: Weight>(rng: &mut GenRng, n: usize) -> WeightedGraph<W> {
    let bound = (n as i64).saturating_pow(3).clamp(2, 1 << 40);
    random_path(rng, n, bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::{Rational, F64};

    #[test]
    fn same_seed_same_graph() {
        let a: WeightedGraph<Rational> = random_small_graph(&mut rng(3), 2, 64);
        let b: WeightedGraph<Rational> = random_small_graph(&mut rng(3), 2, 64);
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.component_count(), 1);
    }

    #[test]
    fn paths_are_paths_with_bounded_aspect() {
        for n in [2usize, 16, 100] {
            let g: WeightedGraph<Rational> = random_poly_path(&mut rng(n as u64), n);
            assert!(g.path_order().is_some());
            let a = g.aspect_ratio().unwrap();
            assert!(a <= Rational::from_int((n as i64).pow(3).max(2)));
        }
        let f: WeightedGraph<F64> = random_poly_path(&mut rng(1), 50);
        assert_eq!(f.m(), 49);
    }

    #[test]
    fn sparse_graph_edge_count() {
        let g: WeightedGraph<F64> = random_sparse_graph(&mut rng(9), 1000);
        assert_eq!(g.m(), 2999);
        let mut ws: Vec<_> = g.edges().iter().map(|e| e.weight).collect();
        ws.sort();
        ws.dedup();
        assert_eq!(ws.len(), g.m());
    }
}
