use super::state::{HeapState, Telemetry};
use crate::dendrogram::Dendrogram;
use crate::graph::WeightedGraph;
use crate::weight::Weight;

/// Nearest-neighbor chain HAC. Merges are recorded in the order the chains
/// find them, which is not the global greedy order.
pub fn run_nn_chain<W: Weight>(g: &WeightedGraph<W>) -> Dendrogram<W> {
    run_nn_chain_with_telemetry(g, false).0
}

/// As [`run_nn_chain`], also returning counters. With `audit`, every merge is
/// followed by a full heap audit that panics on the first inconsistency.
pub fn run_nn_chain_with_telemetry<W: Weight>(g: &WeightedGraph<W>, audit: bool) -> (Dendrogram<W>, Telemetry) {
    let mut state = HeapState::new(g);
    if audit {
        state = state.with_audit(g);
    }
    let n = g.n();
    let mut stack: Vec<usize> = Vec::new();
    let mut on_stack = vec![false; n];
    for seed in 0..n {
        // The seed survives every merge of its own chain, so repeating until
        // it is isolated consumes its whole component.
        while state.is_active(seed) && !state.heap(seed).is_empty() {
            stack.push(seed);
            on_stack[seed] = true;
            while let Some(&t) = stack.last() {
                let Some(best) = state.best_edge(t) else {
                    stack.pop();
                    on_stack[t] = false;
                    continue;
                };
                if on_stack[best.to] {
                    stack.pop();
                    on_stack[t] = false;
                    let top = *stack.last().expect("reciprocal partner sits below the top");
                    debug_assert_eq!(top, best.to);
                    state.merge_clusters(t, top).expect("chain merges live neighbors");
                    if audit {
                        state.audit().unwrap_or_else(|e| panic!("heap audit failed: {e}"));
                    }
                    stack.pop();
                    on_stack[top] = false;
                } else {
                    stack.push(best.to);
                    on_stack[best.to] = true;
                }
            }
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
    fn path_of_three_matches_oracle() {
        let g = WeightedGraph::new(3, [(0, 1, r(3)), (1, 2, r(2))]).unwrap();
        let d = run_nn_chain(&g);
        assert!(d.same_tree(&run_greedy(&g)));
        assert_eq!((d.merges()[0].a, d.merges()[0].b), (0, 1));
    }

    #[test]
    fn two_vertices() {
        let g = WeightedGraph::new(2, [(0, 1, r(1))]).unwrap();
        assert_eq!(run_nn_chain(&g).len(), 1);
    }

    #[test]
    fn increasing_path_walks_to_the_far_end() {
        let n = 9;
        let eps = Rational::new(1, 1000);
        let edges = (0..n - 1).map(|i| (i, i + 1, r(1).add(&eps.mul(&r(i as i64)))));
        let g = WeightedGraph::new(n, edges).unwrap();
        let (d, _) = run_nn_chain_with_telemetry(&g, true);
        assert_eq!((d.merges()[0].a, d.merges()[0].b), (7, 8));
        assert!(d.same_tree(&run_greedy(&g)));
    }

    #[test]
    fn separate_components_after_seed_are_finished() {
        let g = WeightedGraph::new(4, [(0, 1, r(9)), (2, 3, r(8)), (1, 2, r(1))]).unwrap();
        let d = run_nn_chain(&g);
        assert_eq!(d.len(), 3);
        assert!(d.same_tree(&run_greedy(&g)));
    }
}
