use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet};

use crate::cluster::ClusterId;
use crate::weight::Weight;

/// One neighbor of a cluster as seen from that cluster's heap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborEntry<W> {
    /// Aggregated edge weight.
    pub raw: W,
    /// `raw / (S(owner) * S(neighbor))`.
    pub priority: W,
    /// Dendrogram id of the neighbor when the entry was written.
    pub label: ClusterId,
}

/// Max-priority structure over a cluster's neighbors, keyed by engine slot.
///
/// The maximum is the entry with the highest priority, then the lowest
/// neighbor label. For a fixed owner this agrees with the global edge order
/// (similarity descending, then smaller id, then larger id).
#[derive(Debug, Clone)]
pub struct NeighborHeap<W> {
    entries: BTreeMap<usize, NeighborEntry<W>>,
    order: BTreeSet<(Reverse<W>, ClusterId, usize)>,
}

impl<W> Default for NeighborHeap<W> {
    fn default() -> Self {
        NeighborHeap { entries: BTreeMap::new(), order: BTreeSet::new() }
    }
}

impl<W: Weight> NeighborHeap<W> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, slot: usize) -> Option<&NeighborEntry<W>> {
        self.entries.get(&slot)
    }

    /// Inserts or replaces the entry for `slot`.
    pub fn insert(&mut self, slot: usize, entry: NeighborEntry<W>) {
        self.order.insert((Reverse(entry.priority.clone()), entry.label, slot));
        if let Some(old) = self.entries.insert(slot, entry) {
            self.order.remove(&(Reverse(old.priority), old.label, slot));
        }
    }

    pub fn remove(&mut self, slot: usize) -> Option<NeighborEntry<W>> {
        let old = self.entries.remove(&slot)?;
        self.order.remove(&(Reverse(old.priority.clone()), old.label, slot));
        Some(old)
    }

    pub fn peek_max(&self) -> Option<(usize, &NeighborEntry<W>)> {
        let (_, _, slot) = self.order.first()?;
        Some((*slot, &self.entries[slot]))
    }

    /// Entries in slot order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &NeighborEntry<W>)> {
        self.entries.iter().map(|(&s, e)| (s, e))
    }

    /// Builds a heap from entries with distinct slots, in increasing slot
    /// order.
    pub fn from_slot_sorted(entries: Vec<(usize, NeighborEntry<W>)>) -> Self {
        let mut order: Vec<_> = entries.iter().map(|(slot, e)| (Reverse(e.priority.clone()), e.label, *slot)).collect();
        order.sort_unstable();
        NeighborHeap { order: order.into_iter().collect(), entries: entries.into_iter().collect() }
    }

    /// Empties the heap, returning its entries in slot order.
    pub fn drain_sorted(&mut self) -> Vec<(usize, NeighborEntry<W>)> {
        self.order.clear();
        std::mem::take(&mut self.entries).into_iter().collect()
    }
}
