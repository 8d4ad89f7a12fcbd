//! Contracted-graph view of a clustering in progress.

use std::collections::BTreeMap;

use crate::error::{usage, Result};
use crate::graph::WeightedGraph;
use crate::weight::{normalized_similarity, Weight};

pub type ClusterId = usize;

/// Live clusters of a run: sizes, activity, and aggregated inter-cluster
/// weights. Leaves occupy ids `0..n`; each contraction allocates the next id.
#[derive(Debug, Clone)]
pub struct ClusterState<W> {
    sizes: Vec<u64>,
    active: Vec<bool>,
    adj: Vec<BTreeMap<ClusterId, W>>,
    n_leaves: usize,
}

impl<W: Weight> ClusterState<W> {
    pub fn from_graph(g: &WeightedGraph<W>) -> Self {
        let n = g.n();
        let mut adj = vec![BTreeMap::new(); n];
        for e in g.edges() {
            adj[e.u].insert(e.v, e.weight.clone());
            adj[e.v].insert(e.u, e.weight.clone());
        }
        ClusterState { sizes: g.sizes().to_vec(), active: vec![true; n], adj, n_leaves: n }
    }

    pub fn n_leaves(&self) -> usize {
        self.n_leaves
    }

    /// Number of ids allocated so far (leaves plus contractions).
    pub fn id_bound(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_active(&self, c: ClusterId) -> bool {
        self.active.get(c).copied().unwrap_or(false)
    }

    pub fn size(&self, c: ClusterId) -> u64 {
        self.sizes[c]
    }

    pub fn active_ids(&self) -> impl Iterator<Item = ClusterId> + '_ {
        (0..self.sizes.len()).filter(|&c| self.active[c])
    }

    /// Aggregated raw weights from `c` to its neighbors.
    pub fn neighbors(&self, c: ClusterId) -> &BTreeMap<ClusterId, W> {
        &self.adj[c]
    }

    /// Aggregated raw weight between `a` and `b` (zero for non-neighbors).
    pub fn weight(&self, a: ClusterId, b: ClusterId) -> W {
        self.adj[a].get(&b).cloned().unwrap_or_else(W::zero)
    }

    pub fn similarity(&self, a: ClusterId, b: ClusterId) -> W {
        normalized_similarity(&self.weight(a, b), self.sizes[a], self.sizes[b])
    }

    pub fn total_active_size(&self) -> u64 {
        self.active_ids().map(|c| self.sizes[c]).sum()
    }

    /// Contracts `a` and `b` into a fresh cluster `z`, summing parallel edges
    /// and dropping the self-loop. Returns `z`.
    pub fn contract_edge(&mut self, a: ClusterId, b: ClusterId) -> Result<ClusterId> {
        if a == b {
            return usage(format!("cannot contract cluster {a} with itself"));
        }
        if !self.is_active(a) || !self.is_active(b) {
            return usage(format!("contract({a}, {b}) on an inactive cluster"));
        }
        let z = self.sizes.len();
        let mut merged = std::mem::take(&mut self.adj[a]);
        for (c, w) in std::mem::take(&mut self.adj[b]) {
            merged.entry(c).and_modify(|acc| *acc = acc.add(&w)).or_insert(w);
        }
        merged.remove(&a);
        merged.remove(&b);
        for (&c, w) in &merged {
            let list = &mut self.adj[c];
            list.remove(&a);
            list.remove(&b);
            list.insert(z, w.clone());
        }
        self.sizes.push(self.sizes[a] + self.sizes[b]);
        self.active.push(true);
        self.adj.push(merged);
        self.active[a] = false;
        self.active[b] = false;
        Ok(z)
    }
}
