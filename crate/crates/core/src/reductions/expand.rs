use crate::dendrogram::Dendrogram;
use crate::error::{HacError, Result};
use crate::graph::WeightedGraph;
use crate::weight::Weight;

/// Vertex count above which unit expansion is refused unless a larger budget
/// is given.
pub const DEFAULT_NODE_BUDGET: usize = 20_000;

/// A unit-size graph where every original vertex of size `s` is a hub with
/// `s - 1` auxiliary leaves. Original vertices keep their ids; auxiliaries
/// follow in hub order.
#[derive(Debug, Clone)]
pub struct ExpandedGraph<W> {
    pub graph: WeightedGraph<W>,
    pub original_n: usize,
    /// Hub of auxiliary vertex `original_n + a`.
    pub hub: Vec<usize>,
}

impl<W: Weight> ExpandedGraph<W> {
    pub fn aux_count(&self) -> usize {
        self.hub.len()
    }

    pub fn is_aux(&self, v: usize) -> bool {
        v >= self.original_n && v < self.original_n + self.hub.len()
    }
}

/// Replaces every size by auxiliary leaves attached with weight `aux_weight`.
/// `aux_weight` must exceed `max size * max edge weight` for the auxiliaries
/// to merge first.
pub fn expand_unit_sizes<W: Weight>(
    g: &WeightedGraph<W>,
    aux_weight: &W,
    node_budget: usize,
) -> Result<ExpandedGraph<W>> {
    let total = g.total_size();
    if total > node_budget as u64 {
        return Err(HacError::Capacity(format!(
            "unit expansion needs {total} vertices, over the budget of {node_budget}"
        )));
    }
    let n = g.n();
    let mut hub = Vec::with_capacity(total as usize - n);
    for (v, &s) in g.sizes().iter().enumerate() {
        hub.extend(std::iter::repeat_n(v, s as usize - 1));
    }
    let edges = g
        .edges()
        .iter()
        .map(|e| (e.u, e.v, e.weight.clone()))
        .chain(hub.iter().enumerate().map(|(a, &h)| (h, n + a, aux_weight.clone())));
    let graph = WeightedGraph::new(total as usize, edges)?;
    Ok(ExpandedGraph { graph, original_n: n, hub })
}

/// Checks that the first `aux_count` merges each absorb an auxiliary leaf.
/// Returns the first offending step.
pub fn auxiliary_first<W: Weight>(x: &ExpandedGraph<W>, d: &Dendrogram<W>) -> std::result::Result<(), usize> {
    match d.merges().iter().take(x.aux_count()).position(|m| !x.is_aux(m.a) && !x.is_aux(m.b)) {
        Some(step) => Err(step),
        None if d.len() < x.aux_count() => Err(d.len()),
        None => Ok(()),
    }
}

/// The expanded run's dendrogram with auxiliary merges dropped, over the
/// original vertex ids.
pub fn restrict_to_original<W: Weight>(x: &ExpandedGraph<W>, d: &Dendrogram<W>) -> Dendrogram<W> {
    let total = d.n() + d.len();
    let mut map: Vec<Option<usize>> = (0..total).map(|v| (v < x.original_n).then_some(v)).collect();
    let mut out = Dendrogram::new(x.original_n);
    for m in d.merges() {
        map[m.parent] = match (map[m.a], map[m.b]) {
            (Some(a), Some(b)) => Some(out.push(a, b, m.similarity.clone(), m.size)),
            (a, b) => a.or(b),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::run_heap_based;
    use crate::oracle::run_greedy;
    use crate::weight::Rational;

    #[test]
    fn size_three_node_gets_two_auxiliaries_merged_first() {
        let g = WeightedGraph::with_sizes(vec![3, 1], [(0, 1, Rational::from_int(1))]).unwrap();
        let x = expand_unit_sizes(&g, &Rational::from_int(100), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(x.graph.n(), 4);
        assert_eq!(x.hub, vec![0, 0]);
        let d = run_greedy(&x.graph);
        assert!(auxiliary_first(&x, &d).is_ok());
        assert!(d.merges()[..2].iter().all(|m| x.is_aux(m.a) || x.is_aux(m.b)));
        let r = restrict_to_original(&x, &d);
        assert_eq!(r, run_greedy(&g));
    }

    #[test]
    fn unit_sizes_are_unchanged() {
        let g = WeightedGraph::new(3, [(0, 1, Rational::from_int(2)), (1, 2, Rational::from_int(1))]).unwrap();
        let x = expand_unit_sizes(&g, &Rational::from_int(100), DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(x.graph, g);
        assert_eq!(restrict_to_original(&x, &run_heap_based(&x.graph).0), run_greedy(&g));
    }

    #[test]
    fn budget_is_enforced() {
        let g = WeightedGraph::with_sizes(vec![50, 50], [(0, 1, Rational::from_int(1))]).unwrap();
        assert!(matches!(expand_unit_sizes(&g, &Rational::from_int(100), 99), Err(HacError::Capacity(_))));
    }
}
