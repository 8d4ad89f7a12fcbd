use std::collections::BTreeSet;

use crate::dendrogram::Dendrogram;
use crate::engines::run_heap_based;
use crate::error::{usage, HacError, Result};
use crate::graph::WeightedGraph;
use crate::weight::{Rational, Weight};

/// A simple unweighted graph on vertices `0..t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    pub t: usize,
    /// Edges with `u < v`, sorted and deduplicated.
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(t: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= t || v >= t {
                return usage(format!("edge ({u}, {v}) references a vertex outside 0..{t}"));
            }
            if u == v {
                return usage(format!("self-loop on vertex {u}"));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(SimpleGraph { t, edges: set.into_iter().collect() })
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.t]; self.t];
        for &(u, v) in &self.edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        adj
    }

    /// The vertex count on its own line, then one `u v` pair per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.t);
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Plain edge list: one `u v` pair per line. A first line holding a single
    /// integer fixes the vertex count; otherwise it is one more than the
    /// largest id used.
    pub fn parse(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut edges = Vec::new();
        let mut max_vertex = None;
        let mut seen_content = false;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let ids = content
                .split_whitespace()
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| HacError::Parse { line, message: format!("invalid vertex id `{s}`") })
                })
                .collect::<Result<Vec<_>>>()?;
            match ids[..] {
                [t] if !seen_content => declared = Some(t),
                [u, v] => {
                    if u == v {
                        return Err(HacError::Parse { line, message: format!("self-loop on vertex {u}") });
                    }
                    max_vertex = max_vertex.max(Some(u.max(v)));
                    edges.push((u, v));
                }
                _ => return Err(HacError::Parse { line, message: "expected `<u> <v>`".into() }),
            }
            seen_content = true;
        }
        let inferred = max_vertex.map_or(0, |v| v + 1);
        let t = match declared {
            Some(t) if t < inferred => {
                return Err(HacError::Parse {
                    line: 1,
                    message: format!("vertex count {t} but vertex {} is used", inferred - 1),
                })
            }
            Some(t) => t,
            None => inferred,
        };
        SimpleGraph::new(t, edges)
    }
}

/// Brute-force triangle detection.
pub fn has_triangle(g: &SimpleGraph) -> bool {
    let adj = g.adjacency_matrix();
    g.edges.iter().any(|&(u, v)| (0..g.t).any(|w| adj[u][w] && adj[v][w]))
}

/// The weighted gadget whose exact HAC merge order reveals a triangle.
///
/// Core vertex `j` keeps id `j`. The leaf attached to core `j` in round `i`
/// (1-based) has id `t + (i - 1) * t + j`.
#[derive(Debug, Clone)]
pub struct TriangleInstance {
    pub source: SimpleGraph,
    pub gadget: WeightedGraph<Rational>,
    pub epsilon: Rational,
}

impl TriangleInstance {
    pub fn t(&self) -> usize {
        self.source.t
    }

    pub fn is_core(&self, v: usize) -> bool {
        v < self.source.t
    }

    pub fn leaf_id(&self, round: usize, core: usize) -> usize {
        let t = self.source.t;
        t + (round - 1) * t + core
    }

    /// `(round, core)` of a leaf vertex.
    pub fn leaf_round(&self, v: usize) -> Option<(usize, usize)> {
        let t = self.source.t;
        (v >= t && v < t + t * t).then(|| ((v - t) / t + 1, (v - t) % t))
    }
}

/// `1 / (4 t^3)`: small enough that every cross-round ordering holds.
pub fn triangle_epsilon(t: usize) -> Rational {
    Rational::new(1, 4 * (t as i64).pow(3))
}

pub fn build_triangle_instance(g: &SimpleGraph) -> Result<TriangleInstance> {
    let t = g.t;
    if t < 3 {
        return usage(format!("triangle gadget needs at least 3 vertices, got {t}"));
    }
    let eps = triangle_epsilon(t);
    let adj = g.adjacency_matrix();
    let one = Rational::from_int(1);
    let mut edges: Vec<(usize, usize, Rational)> = g.edges.iter().map(|&(u, v)| (u, v, one.clone())).collect();
    for round in 1..=t {
        let (i, d) = (round as i64, 4 * (t as i64).pow(3));
        let low = Rational::new(d - i, d * i);
        let high = Rational::new(d + i, d * i);
        for core in 0..t {
            let w = if adj[round - 1][core] { low.clone() } else { high.clone() };
            edges.push((core, t + (round - 1) * t + core, w));
        }
    }
    let gadget = WeightedGraph::new(t + t * t, edges)?;
    Ok(TriangleInstance { source: g.clone(), gadget, epsilon: eps })
}

/// Scans the first `t^2` merges for one joining two clusters that each hold a
/// core vertex.
pub fn decode_triangle(inst: &TriangleInstance, d: &Dendrogram<Rational>) -> bool {
    let t = inst.t();
    let total = d.n() + d.len();
    let mut has_core = vec![false; total];
    has_core[..t].iter_mut().for_each(|c| *c = true);
    for m in d.merges().iter().take(t * t) {
        if has_core[m.a] && has_core[m.b] {
            return true;
        }
        has_core[m.parent] = has_core[m.a] || has_core[m.b];
    }
    false
}

pub fn detect_triangle_via_hac(inst: &TriangleInstance) -> bool {
    decode_triangle(inst, &run_heap_based(&inst.gadget).0)
}

/// Checks that, until the first core-core merge, leaves are absorbed in
/// non-decreasing round order. Returns the first offending step.
pub fn audit_round_order(inst: &TriangleInstance, d: &Dendrogram<Rational>) -> std::result::Result<(), usize> {
    let t = inst.t();
    let total = d.n() + d.len();
    let mut has_core = vec![false; total];
    has_core[..t].iter_mut().for_each(|c| *c = true);
    let mut round = 1;
    for (step, m) in d.merges().iter().enumerate() {
        if has_core[m.a] && has_core[m.b] {
            return Ok(());
        }
        has_core[m.parent] = has_core[m.a] || has_core[m.b];
        for leaf in [m.a, m.b] {
            if let Some((r, _)) = inst.leaf_round(leaf) {
                if r < round {
                    return Err(step);
                }
                round = r;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::run_greedy;

    fn inst(t: usize, edges: &[(usize, usize)]) -> TriangleInstance {
        build_triangle_instance(&SimpleGraph::new(t, edges.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn k3_gadget_and_detection() {
        let k = inst(3, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!((k.gadget.n(), k.gadget.m()), (12, 12));
        let d = run_greedy(&k.gadget);
        // v_0's own round-1 leaf (weight 1 + eps) goes first, then a core edge.
        assert_eq!((d.merges()[0].a, d.merges()[0].b), (0, 3));
        assert_eq!((d.merges()[1].a, d.merges()[1].b), (1, 2));
        assert_eq!(d.merges()[1].similarity, Rational::from_int(1));
        assert!(decode_triangle(&k, &d));
        assert!(detect_triangle_via_hac(&k));
    }

    #[test]
    fn three_path_round_one_weights() {
        let p = inst(3, &[(0, 1), (1, 2)]);
        let round_one: Vec<Rational> = (0..3)
            .map(|c| p.gadget.edges().iter().find(|e| (e.u, e.v) == (c, p.leaf_id(1, c))).unwrap().weight.clone())
            .collect();
        let eps = triangle_epsilon(3);
        let one = Rational::from_int(1);
        assert_eq!(round_one[0], one.add(&eps));
        assert_eq!(round_one[1].add(&eps), one);
        assert_eq!(round_one[2], one.add(&eps));
        let d = run_greedy(&p.gadget);
        assert!(!decode_triangle(&p, &d));
        assert_eq!(audit_round_order(&p, &d), Ok(()));
    }

    #[test]
    fn empty_graph_has_only_plus_eps_leaves() {
        let e = inst(3, &[]);
        let eps = triangle_epsilon(3);
        for e2 in e.gadget.edges() {
            let (round, _) = e.leaf_round(e2.v).unwrap();
            assert_eq!(e2.weight, Rational::new(1, round as i64).add(&eps));
        }
        assert!(!detect_triangle_via_hac(&e));
    }

    #[test]
    fn four_cycle_has_no_triangle() {
        let c = inst(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert!(!has_triangle(&c.source));
        assert!(!detect_triangle_via_hac(&c));
    }

    #[test]
    fn tiny_graphs_are_rejected() {
        assert!(build_triangle_instance(&SimpleGraph::new(2, [(0, 1)]).unwrap()).is_err());
    }

    #[test]
    fn parse_edge_list() {
        let g = SimpleGraph::parse("5\n0 1\n1 2\n").unwrap();
        assert_eq!((g.t, g.edges.len()), (5, 2));
        assert_eq!(SimpleGraph::parse("0 1\n2 1\n").unwrap().t, 3);
        assert!(matches!(SimpleGraph::parse("0 1\n2 x\n"), Err(HacError::Parse { line: 2, .. })));
        assert_eq!(SimpleGraph::parse(&g.to_text()).unwrap(), g);
    }
}
