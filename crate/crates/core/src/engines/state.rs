use std::collections::BTreeMap;

use serde::Serialize;

use super::neighbor_heap::{NeighborEntry, NeighborHeap};
use crate::cluster::ClusterId;
use crate::dendrogram::Dendrogram;
use crate::error::{usage, Result};
use crate::graph::WeightedGraph;
use crate::weight::{normalized_similarity, Weight};

/// Operation counters for one engine run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Telemetry {
    pub heap_ops: u64,
    pub neighbor_touches: u64,
    pub merges: u64,
    pub best_edge_calls: u64,
    /// Extractions whose target cluster had been merged away.
    pub unsuccessful_extractions: u64,
    /// Extractions whose target is still live but whose stored similarity or
    /// id no longer matches the owner's best edge.
    pub stale_priority_reinsertions: u64,
}

impl Telemetry {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain counters serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestEdge<W> {
    pub from: usize,
    pub to: usize,
    pub similarity: W,
}

/// Clusters held in per-vertex slots, each with a neighbor heap.
///
/// Slot `v` starts as leaf `v`. A merge deactivates one slot and keeps the
/// other, relabelling it with the new dendrogram id.
#[derive(Debug, Clone)]
pub struct HeapState<W> {
    sizes: Vec<u64>,
    active: Vec<bool>,
    labels: Vec<ClusterId>,
    heaps: Vec<NeighborHeap<W>>,
    merged_into: Vec<usize>,
    dendrogram: Dendrogram<W>,
    telemetry: Telemetry,
    original: Option<Vec<(usize, usize, W)>>,
}

impl<W: Weight> HeapState<W> {
    pub fn new(g: &WeightedGraph<W>) -> Self {
        let n = g.n();
        let sizes = g.sizes().to_vec();
        let mut heaps: Vec<NeighborHeap<W>> = (0..n).map(|_| NeighborHeap::new()).collect();
        let mut telemetry = Telemetry::default();
        for e in g.edges() {
            let priority = normalized_similarity(&e.weight, sizes[e.u], sizes[e.v]);
            for (x, y) in [(e.u, e.v), (e.v, e.u)] {
                heaps[x].insert(y, NeighborEntry { raw: e.weight.clone(), priority: priority.clone(), label: y });
                telemetry.heap_ops += 1;
            }
        }
        HeapState {
            sizes,
            active: vec![true; n],
            labels: (0..n).collect(),
            heaps,
            merged_into: (0..n).collect(),
            dendrogram: Dendrogram::new(n),
            telemetry,
            original: None,
        }
    }

    /// Keeps a copy of the input edges so [`HeapState::audit`] can recompute
    /// every aggregated weight from scratch.
    pub fn with_audit(mut self, g: &WeightedGraph<W>) -> Self {
        self.original = Some(g.edges().iter().map(|e| (e.u, e.v, e.weight.clone())).collect());
        self
    }

    pub fn slot_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_active(&self, slot: usize) -> bool {
        self.active.get(slot).copied().unwrap_or(false)
    }

    pub fn label(&self, slot: usize) -> ClusterId {
        self.labels[slot]
    }

    pub fn size(&self, slot: usize) -> u64 {
        self.sizes[slot]
    }

    pub fn heap(&self, slot: usize) -> &NeighborHeap<W> {
        &self.heaps[slot]
    }

    pub fn telemetry(&self) -> &Telemetry {
        &self.telemetry
    }

    pub(crate) fn telemetry_mut(&mut self) -> &mut Telemetry {
        &mut self.telemetry
    }

    pub fn dendrogram(&self) -> &Dendrogram<W> {
        &self.dendrogram
    }

    pub fn into_parts(self) -> (Dendrogram<W>, Telemetry) {
        (self.dendrogram, self.telemetry)
    }

    /// Highest-priority neighbor of `slot`, or `None` when it has none.
    pub fn best_edge(&mut self, slot: usize) -> Option<BestEdge<W>> {
        self.telemetry.best_edge_calls += 1;
        self.telemetry.heap_ops += 1;
        let (to, e) = self.heaps[slot].peek_max()?;
        Some(BestEdge { from: slot, to, similarity: e.priority.clone() })
    }

    /// Merges slot `a` into slot `b` and returns the new dendrogram id, now
    /// carried by `b`.
    pub fn merge_clusters(&mut self, a: usize, b: usize) -> Result<ClusterId> {
        if a == b || !self.is_active(a) || !self.is_active(b) {
            return usage(format!("merge_clusters({a}, {b}) needs two distinct active clusters"));
        }
        let Some(link) = self.heaps[a].get(b) else {
            return usage(format!("merge_clusters({a}, {b}) on non-adjacent clusters"));
        };
        let similarity = link.priority.clone();
        let na = self.heaps[a].drain_sorted();
        let nb = self.heaps[b].drain_sorted();
        self.telemetry.neighbor_touches += (na.len() + nb.len()) as u64;

        let size = self.sizes[a] + self.sizes[b];
        let label = self.dendrogram.push(self.labels[a], self.labels[b], similarity, size);
        self.sizes[b] = size;
        self.labels[b] = label;
        self.active[a] = false;
        self.merged_into[a] = b;
        self.telemetry.merges += 1;

        // Sorted merge of both neighbor lists by slot.
        let mut union: Vec<(usize, W)> = Vec::with_capacity(na.len() + nb.len());
        let (mut i, mut j) = (0, 0);
        while i < na.len() || j < nb.len() {
            let take_a = j == nb.len() || (i < na.len() && na[i].0 < nb[j].0);
            let take_b = i == na.len() || (j < nb.len() && nb[j].0 < na[i].0);
            if take_a {
                let (c, e) = &na[i];
                i += 1;
                if *c == b {
                    continue;
                }
                self.heaps[*c].remove(a);
                self.telemetry.heap_ops += 1;
                union.push((*c, e.raw.clone()));
            } else if take_b {
                let (c, e) = &nb[j];
                j += 1;
                if *c == a {
                    continue;
                }
                union.push((*c, e.raw.clone()));
            } else {
                let (c, ea) = &na[i];
                let eb = &nb[j].1;
                i += 1;
                j += 1;
                self.heaps[*c].remove(a);
                self.telemetry.heap_ops += 1;
                union.push((*c, ea.raw.add(&eb.raw)));
            }
        }
        let mut merged = Vec::with_capacity(union.len());
        for (c, raw) in union {
            let priority = normalized_similarity(&raw, size, self.sizes[c]);
            let toward_b = NeighborEntry { raw: raw.clone(), priority: priority.clone(), label };
            self.heaps[c].insert(b, toward_b);
            merged.push((c, NeighborEntry { raw, priority, label: self.labels[c] }));
            self.telemetry.heap_ops += 2;
        }
        self.heaps[b] = NeighborHeap::from_slot_sorted(merged);
        Ok(label)
    }

    fn find_slot(&self, mut v: usize) -> usize {
        while self.merged_into[v] != v {
            v = self.merged_into[v];
        }
        v
    }

    /// Checks every stored entry against a from-scratch recomputation.
    /// Requires [`HeapState::with_audit`]; otherwise only checks symmetry,
    /// priorities and liveness.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let mut expected: Option<BTreeMap<(usize, usize), W>> = None;
        if let Some(edges) = &self.original {
            let mut agg: BTreeMap<(usize, usize), W> = BTreeMap::new();
            for (u, v, w) in edges {
                let (x, y) = (self.find_slot(*u), self.find_slot(*v));
                if x == y {
                    continue;
                }
                for key in [(x, y), (y, x)] {
                    agg.entry(key).and_modify(|acc| *acc = acc.add(w)).or_insert_with(|| w.clone());
                }
            }
            expected = Some(agg);
        }
        let mut seen = 0usize;
        for c in 0..self.slot_count() {
            if !self.active[c] {
                if !self.heaps[c].is_empty() {
                    return Err(format!("inactive slot {c} still has neighbors"));
                }
                continue;
            }
            for (d, e) in self.heaps[c].iter() {
                seen += 1;
                if !self.active[d] {
                    return Err(format!("slot {c} references inactive slot {d}"));
                }
                if e.label != self.labels[d] {
                    return Err(format!("slot {c} holds stale label {} for slot {d}", e.label));
                }
                let want = normalized_similarity(&e.raw, self.sizes[c], self.sizes[d]);
                if e.priority != want {
                    return Err(format!("priority of ({c}, {d}) is {} but should be {want}", e.priority));
                }
                match self.heaps[d].get(c) {
                    Some(back) if back.raw == e.raw => {}
                    _ => return Err(format!("edge ({c}, {d}) is not mirrored")),
                }
                if let Some(agg) = &expected {
                    if agg.get(&(c, d)) != Some(&e.raw) {
                        return Err(format!("aggregated weight of ({c}, {d}) is wrong"));
                    }
                }
            }
        }
        if let Some(agg) = &expected {
            if agg.len() != seen {
                return Err(format!("{} live edges expected, {seen} stored", agg.len()));
            }
        }
        Ok(())
    }
}
