use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::state::{BestEdge, HeapState, Telemetry};
use crate::cluster::ClusterId;
use crate::dendrogram::Dendrogram;
use crate::graph::WeightedGraph;
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HeapConfig {
    /// Audit every neighbor heap after each merge; panics on inconsistency.
    pub audit: bool,
    /// Deliberately wrong tie order in the global heap (larger ids first).
    /// Exists only so verification can prove it detects tie bugs.
    pub reverse_ties: bool,
}

/// Global heap key: similarity, then the edge's ids under the tie rule.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Candidate<W> {
    similarity: W,
    ids: TieIds,
    owner: usize,
    target: usize,
    owner_label: ClusterId,
    target_label: ClusterId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum TieIds {
    Ascending(Reverse<(ClusterId, ClusterId)>),
    Descending((ClusterId, ClusterId)),
}

/// Heap-based HAC: a global max-heap over each cluster's best edge, with
/// lazy deletion of entries whose endpoints have since changed.
pub fn run_heap_based<W: Weight>(g: &WeightedGraph<W>) -> (Dendrogram<W>, Telemetry) {
    run_heap_based_with(g, HeapConfig::default())
}

pub fn run_heap_based_with<W: Weight>(g: &WeightedGraph<W>, config: HeapConfig) -> (Dendrogram<W>, Telemetry) {
    let mut state = HeapState::new(g);
    if config.audit {
        state = state.with_audit(g);
    }
    let candidate = |state: &HeapState<W>, e: BestEdge<W>| {
        let (lo, hi) = {
            let (x, y) = (state.label(e.from), state.label(e.to));
            (x.min(y), x.max(y))
        };
        Candidate {
            similarity: e.similarity,
            ids: if config.reverse_ties { TieIds::Descending((hi, lo)) } else { TieIds::Ascending(Reverse((lo, hi))) },
            owner: e.from,
            target: e.to,
            owner_label: state.label(e.from),
            target_label: state.label(e.to),
        }
    };
    let mut global = BinaryHeap::new();
    for v in 0..g.n() {
        if let Some(e) = state.best_edge(v) {
            global.push(candidate(&state, e));
            state.telemetry_mut().heap_ops += 1;
        }
    }
    while let Some(top) = global.pop() {
        state.telemetry_mut().heap_ops += 1;
        let (u, v) = (top.owner, top.target);
        if !state.is_active(u) || state.label(u) != top.owner_label {
            // A newer entry for this slot's current label is already queued;
            // discarding costs no best-edge lookup.
            continue;
        }
        let current = state.best_edge(u);
        let fresh = state.is_active(v)
            && state.label(v) == top.target_label
            && current.as_ref().is_some_and(|e| e.to == v && e.similarity == top.similarity);
        if !fresh {
            if state.is_active(v) {
                state.telemetry_mut().stale_priority_reinsertions += 1;
            } else {
                state.telemetry_mut().unsuccessful_extractions += 1;
            }
            if let Some(e) = current {
                global.push(candidate(&state, e));
                state.telemetry_mut().heap_ops += 1;
            }
            continue;
        }
        state.merge_clusters(u, v).expect("validated candidate is a live edge");
        if config.audit {
            state.audit().unwrap_or_else(|e| panic!("heap audit failed: {e}"));
        }
        if let Some(e) = state.best_edge(v) {
            global.push(candidate(&state, e));
            state.telemetry_mut().heap_ops += 1;
        }
    }
    state.into_parts()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::run_greedy;
    use crate::weight::Rational;

    fn r(p: i64) -> Rational {
        Rational::from_int(p)
    }

    #[test]
    fn path_of_three_is_byte_identical_to_oracle() {
        let g = WeightedGraph::new(3, [(0, 1, r(3)), (1, 2, r(2))]).unwrap();
        let (d, _) = run_heap_based(&g);
        assert_eq!(d, run_greedy(&g));
    }

    #[test]
    fn complete_graph_on_four() {
        let ws = [7, 3, 11, 5, 2, 13];
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let edges = pairs.iter().zip(ws).map(|(&(u, v), w)| (u, v, Rational::new(w, 3)));
        let g = WeightedGraph::new(4, edges).unwrap();
        let (d, _) = run_heap_based_with(&g, HeapConfig { audit: true, ..HeapConfig::default() });
        assert_eq!(d, run_greedy(&g));
    }

    #[test]
    fn single_edge_telemetry() {
        let g = WeightedGraph::new(2, [(0, 1, r(1))]).unwrap();
        let (_, t) = run_heap_based(&g);
        assert_eq!(t.merges, 1);
        assert_eq!(t.unsuccessful_extractions, 0);
    }

    #[test]
    fn ties_match_oracle_exactly() {
        let g = WeightedGraph::new(6, (0..5).map(|i| (i, i + 1, r(1)))).unwrap();
        let (d, _) = run_heap_based(&g);
        assert_eq!(d, run_greedy(&g));
    }

    #[test]
    fn reversed_ties_diverge_on_uniform_path() {
        let g = WeightedGraph::new(4, (0..3).map(|i| (i, i + 1, r(1)))).unwrap();
        let cfg = HeapConfig { reverse_ties: true, ..HeapConfig::default() };
        let (d, _) = run_heap_based_with(&g, cfg);
        assert_ne!(d, run_greedy(&g));
    }
}
