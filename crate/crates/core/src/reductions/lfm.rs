use std::collections::BTreeSet;

use super::adaptive::AdaptiveMinInstance;
use crate::error::{usage, HacError, Result};

/// Bipartite graph with sides `l_0..l_{n-1}` and `r_0..r_{n-1}`, and a query
/// edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfmInstance {
    pub n: usize,
    /// `(l, r)` pairs, sorted and deduplicated.
    pub edges: Vec<(usize, usize)>,
    pub query: (usize, usize),
}

impl LfmInstance {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>, query: (usize, usize)) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (l, r) in edges {
            if l >= n || r >= n {
                return usage(format!("edge (l{l}, r{r}) outside sides of size {n}"));
            }
            set.insert((l, r));
        }
        if !set.contains(&query) {
            return usage(format!("query edge (l{}, r{}) is not an edge", query.0, query.1));
        }
        Ok(LfmInstance { n, edges: set.into_iter().collect(), query })
    }

    pub fn with_query(&self, query: (usize, usize)) -> Result<Self> {
        LfmInstance::new(self.n, self.edges.iter().copied(), query)
    }

    /// Line 1 `n`, then `l r` edge lines, then a final `query l r` line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        let mut query = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let perr = |message: String| HacError::Parse { line, message };
            if query.is_some() {
                return Err(perr("content after the `query` line".into()));
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let int = |s: &str| s.parse::<usize>().map_err(|_| perr(format!("invalid integer `{s}`")));
            let side = |s: &str, n: usize| {
                int(s).and_then(|v| if v < n { Ok(v) } else { Err(perr(format!("vertex {v} outside 0..{n}"))) })
            };
            match (n, &fields[..]) {
                (None, [count]) => n = Some(int(count)?),
                (None, _) => return Err(perr("expected `n` header".into())),
                (Some(n), ["query", l, r]) => query = Some((side(l, n)?, side(r, n)?)),
                (Some(n), [l, r]) => edges.push((side(l, n)?, side(r, n)?)),
                _ => return Err(perr("expected `<l> <r>` or `query <l> <r>`".into())),
            }
        }
        let n = n.ok_or(HacError::Parse { line: 1, message: "missing `n` header".into() })?;
        let query = query.ok_or(HacError::Parse { line: 0, message: "missing `query` line".into() })?;
        LfmInstance::new(n, edges, query)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (l, r) in &self.edges {
            out.push_str(&format!("{l} {r}\n"));
        }
        out.push_str(&format!("query {} {}\n", self.query.0, self.query.1));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfmMatching {
    /// Matched `(l, r)` pairs in insertion order.
    pub matching: Vec<(usize, usize)>,
    pub query_matched: bool,
}

/// Greedy maximal matching over edges in lexicographic `(l, r)` order.
pub fn greedy_lfm_matching(inst: &LfmInstance) -> LfmMatching {
    let mut left = vec![false; inst.n];
    let mut right = vec![false; inst.n];
    let mut matching = Vec::new();
    for &(l, r) in &inst.edges {
        if !left[l] && !right[r] {
            left[l] = true;
            right[r] = true;
            matching.push((l, r));
        }
    }
    let query_matched = matching.contains(&inst.query);
    LfmMatching { matching, query_matched }
}

/// The `2n x 2n` Adaptive Minimum instance: row `i < n` lists `l_i`'s
/// neighbors first (in `R` order), then the dummy columns `n..2n`, then its
/// non-neighbors. Rows `n..2n` are never reached and hold the identity.
pub fn reduce_lfm_to_adaptive_min(inst: &LfmInstance) -> AdaptiveMinInstance {
    let n = inst.n;
    let mut adj = vec![vec![false; n]; n];
    for &(l, r) in &inst.edges {
        adj[l][r] = true;
    }
    let mut rows: Vec<Vec<usize>> = adj
        .iter()
        .map(|nbrs| {
            let degree = nbrs.iter().filter(|&&b| b).count();
            let (mut in_rank, mut out_rank) = (0, 0);
            let mut row = vec![0; 2 * n];
            for j in 0..n {
                row[j] = if nbrs[j] {
                    in_rank += 1;
                    in_rank - 1
                } else {
                    out_rank += 1;
                    out_rank - 1 + n + degree
                };
            }
            for (j, cell) in row.iter_mut().enumerate().skip(n) {
                *cell = j - n + degree;
            }
            row
        })
        .collect();
    rows.extend((n..2 * n).map(|_| (0..2 * n).collect()));
    AdaptiveMinInstance::new(rows, inst.query.0).expect("reduction rows are permutations")
}

/// The query edge is matched iff `k_x` is its right endpoint.
pub fn decode_lfm(inst: &LfmInstance, k_x: usize) -> bool {
    k_x == inst.query.1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::adaptive::simulate_adaptive_minimum;

    fn via_reduction(inst: &LfmInstance) -> bool {
        let am = reduce_lfm_to_adaptive_min(inst);
        decode_lfm(inst, *simulate_adaptive_minimum(&am).last().unwrap())
    }

    #[test]
    fn perfect_matching_is_lfm() {
        let inst = LfmInstance::new(3, (0..3).map(|i| (i, i)), (1, 1)).unwrap();
        assert_eq!(greedy_lfm_matching(&inst).matching.len(), 3);
        for i in 0..3 {
            assert!(greedy_lfm_matching(&inst.with_query((i, i)).unwrap()).query_matched);
        }
    }

    #[test]
    fn three_edge_fixture() {
        let inst = LfmInstance::new(2, [(0, 0), (0, 1), (1, 0)], (1, 0)).unwrap();
        assert!(!greedy_lfm_matching(&inst).query_matched);
        let am = reduce_lfm_to_adaptive_min(&inst);
        assert_eq!(am.rows[0], vec![0, 1, 2, 3]);
        assert_eq!(am.rows[1], vec![0, 3, 1, 2]);
        assert_eq!(am.x, 1);
        assert_eq!(simulate_adaptive_minimum(&am), vec![0, 2]);
        assert!(!via_reduction(&inst));
    }

    #[test]
    fn disjoint_edges() {
        let inst = LfmInstance::new(2, [(0, 1), (1, 0)], (1, 0)).unwrap();
        assert!(greedy_lfm_matching(&inst).query_matched);
        assert!(via_reduction(&inst));
    }

    #[test]
    fn isolated_left_vertex_takes_a_dummy() {
        let inst = LfmInstance::new(3, [(0, 0), (2, 1)], (2, 1)).unwrap();
        let am = reduce_lfm_to_adaptive_min(&inst);
        assert_eq!(am.rows[1], vec![3, 4, 5, 0, 1, 2]);
        let trace = simulate_adaptive_minimum(&am.with_target(1).unwrap());
        assert!(trace[1] >= 3);
        assert!(via_reduction(&inst));
    }

    #[test]
    fn missing_query_is_rejected() {
        assert!(LfmInstance::new(2, [(0, 0)], (1, 1)).is_err());
    }

    #[test]
    fn text_round_trip() {
        let inst = LfmInstance::new(2, [(0, 0), (0, 1), (1, 0)], (1, 0)).unwrap();
        assert_eq!(LfmInstance::parse(&inst.to_text()).unwrap(), inst);
        assert!(matches!(LfmInstance::parse("2\n0 5\nquery 0 0\n"), Err(HacError::Parse { line: 2, .. })));
    }
}
