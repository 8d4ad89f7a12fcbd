//! Reference greedy average-linkage HAC.
//!
//! Every step scans all live cluster pairs that share an edge (non-adjacent
//! pairs have similarity zero and are never merged) and contracts the best
//! one under the global tie rule: similarity descending, then smaller id,
//! then larger id.

use std::collections::BTreeMap;

use crate::cluster::{ClusterId, ClusterState};
use crate::dendrogram::Dendrogram;
use crate::graph::WeightedGraph;
use crate::weight::Weight;

/// Exact greedy HAC over unit or sized vertices.
pub fn run_greedy<W: Weight>(g: &WeightedGraph<W>) -> Dendrogram<W> {
    let mut state = ClusterState::from_graph(g);
    let mut dendrogram = Dendrogram::new(g.n());
    // sims[c][d] for every live edge, stored on both endpoints.
    let mut sims: Vec<BTreeMap<ClusterId, W>> =
        (0..g.n()).map(|c| state.neighbors(c).keys().map(|&d| (d, state.similarity(c, d))).collect()).collect();
    loop {
        let mut best: Option<(ClusterId, ClusterId, &W)> = None;
        for a in state.active_ids() {
            for (&b, s) in sims[a].range(a + 1..) {
                if best.is_none_or(|(_, _, bs)| s > bs) {
                    best = Some((a, b, s));
                }
            }
        }
        let Some((a, b, s)) = best else { break };
        let s = s.clone();
        let z = state.contract_edge(a, b).expect("oracle picks live adjacent clusters");
        let parent = dendrogram.push(a, b, s, state.size(z));
        debug_assert_eq!(parent, z);
        for c in [a, b] {
            for d in std::mem::take(&mut sims[c]).into_keys() {
                sims[d].remove(&c);
            }
        }
        let fresh: BTreeMap<ClusterId, W> = state.neighbors(z).keys().map(|&d| (d, state.similarity(z, d))).collect();
        for (&d, s) in &fresh {
            sims[d].insert(z, s.clone());
        }
        sims.push(fresh);
    }
    dendrogram
}

/// Same procedure as [`run_greedy`]; initial similarities divide by the
/// graph's vertex sizes.
pub fn run_greedy_with_sizes<W: Weight>(g: &WeightedGraph<W>) -> Dendrogram<W> {
    run_greedy(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::Rational;
    use proptest::prelude::*;

    fn r(p: i64) -> Rational {
        Rational::from_int(p)
    }

    fn summary(d: &Dendrogram<Rational>) -> Vec<(usize, usize, Rational)> {
        d.merges().iter().map(|m| (m.a, m.b, m.similarity.clone())).collect()
    }

    #[test]
    fn path_of_three() {
        let g = WeightedGraph::new(3, [(0, 1, r(3)), (1, 2, r(2))]).unwrap();
        let d = run_greedy(&g);
        assert_eq!(summary(&d), vec![(0, 1, r(3)), (2, 3, r(1))]);
    }

    #[test]
    fn single_vertex_and_two_components() {
        let g = WeightedGraph::<Rational>::new(1, []).unwrap();
        assert!(run_greedy(&g).is_empty());
        let g = WeightedGraph::new(4, [(0, 1, r(5)), (2, 3, r(7))]).unwrap();
        let d = run_greedy(&g);
        assert_eq!(summary(&d), vec![(2, 3, r(7)), (0, 1, r(5))]);
        assert_eq!(d.roots(), vec![4, 5]);
        assert_eq!(d.merge_index(0, 3).unwrap(), None);
    }

    #[test]
    fn sized_examples() {
        let g = WeightedGraph::with_sizes(vec![2, 3], [(0, 1, r(1))]).unwrap();
        assert_eq!(run_greedy_with_sizes(&g).merges()[0].similarity, Rational::new(1, 6));
        let star = WeightedGraph::with_sizes(vec![4, 1, 1], [(0, 1, Rational::new(1, 3)), (0, 2, Rational::new(1, 5))])
            .unwrap();
        let d = run_greedy_with_sizes(&star);
        assert_eq!((d.merges()[0].a, d.merges()[0].b), (0, 1));
    }

    #[test]
    fn ties_follow_id_order() {
        let g = WeightedGraph::new(4, [(0, 1, r(1)), (1, 2, r(1)), (2, 3, r(1))]).unwrap();
        let d = run_greedy(&g);
        assert_eq!((d.merges()[0].a, d.merges()[0].b), (0, 1));
        assert_eq!((d.merges()[1].a, d.merges()[1].b), (2, 3));
    }

    /// Brute force over every pair of live clusters, recomputing crossing
    /// weights from the original edge list.
    fn brute_force(g: &WeightedGraph<Rational>) -> Vec<(Vec<usize>, Vec<usize>, Rational)> {
        let mut clusters: Vec<Option<Vec<usize>>> = (0..g.n()).map(|v| Some(vec![v])).collect();
        let mut out = Vec::new();
        loop {
            let mut best: Option<(usize, usize, Rational)> = None;
            for i in 0..clusters.len() {
                for j in i + 1..clusters.len() {
                    let (Some(x), Some(y)) = (&clusters[i], &clusters[j]) else { continue };
                    let w = g
                        .edges()
                        .iter()
                        .filter(|e| (x.contains(&e.u) && y.contains(&e.v)) || (x.contains(&e.v) && y.contains(&e.u)))
                        .fold(Rational::zero(), |acc, e| acc.add(&e.weight));
                    if !w.is_positive() {
                        continue;
                    }
                    let sx: u64 = x.iter().map(|&v| g.sizes()[v]).sum();
                    let sy: u64 = y.iter().map(|&v| g.sizes()[v]).sum();
                    let s = w.div_sizes(sx, sy);
                    if best.as_ref().is_none_or(|b| s > b.2) {
                        best = Some((i, j, s));
                    }
                }
            }
            let Some((i, j, s)) = best else { break };
            let x = clusters[i].take().unwrap();
            let y = clusters[j].take().unwrap();
            let mut z = x.clone();
            z.extend(&y);
            z.sort_unstable();
            out.push((x, y, s));
            clusters.push(Some(z));
        }
        out
    }

    proptest! {
        #[test]
        fn matches_brute_force(
            n in 1usize..10,
            raw in proptest::collection::vec((0usize..10, 0usize..10, 1i64..6, 1i64..4), 0..25),
            sizes in proptest::collection::vec(1u64..3, 10),
        ) {
            let mut seen = std::collections::HashSet::new();
            let edges: Vec<_> = raw.into_iter()
                .map(|(u, v, p, q)| (u % n, v % n, Rational::new(p, q)))
                .filter(|(u, v, _)| u != v && seen.insert(((*u).min(*v), (*u).max(*v))))
                .collect();
            let g = WeightedGraph::with_sizes(sizes[..n].to_vec(), edges).unwrap();
            let d = run_greedy(&g);
            d.validate().unwrap();
            prop_assert!(d.is_monotone());
            prop_assert_eq!(d.len(), n - g.component_count());
            let sets = d.leaf_sets();
            let expected = brute_force(&g);
            prop_assert_eq!(expected.len(), d.len());
            for (m, (x, y, s)) in d.merges().iter().zip(expected) {
                prop_assert_eq!(&m.similarity, &s);
                let mut got = [sets[m.a].clone(), sets[m.b].clone()];
                got.sort();
                let mut want = [x, y];
                want.sort();
                prop_assert_eq!(got, want);
            }
        }
    }
}
