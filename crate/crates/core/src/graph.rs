//! Undirected, positively weighted input graphs and their text format.
//!
//! ```text
//! # comment
//! n 3
//! size 2 4
//! 0 1 3
//! 1 2 1/2
//! ```

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use crate::error::{usage, HacError, Result};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge<W> {
    pub u: usize,
    pub v: usize,
    pub weight: W,
}

/// Vertices `0..n` with positive integer sizes and a set of weighted edges.
///
/// Edges are stored with `u < v`, sorted, without duplicates or self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph<W> {
    sizes: Vec<u64>,
    edges: Vec<Edge<W>>,
}

impl<W: Weight> WeightedGraph<W> {
    /// Graph with unit sizes.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, W)>) -> Result<Self> {
        Self::with_sizes(vec![1; n], edges)
    }

    pub fn with_sizes(sizes: Vec<u64>, edges: impl IntoIterator<Item = (usize, usize, W)>) -> Result<Self> {
        let n = sizes.len();
        if let Some(v) = sizes.iter().position(|&s| s == 0) {
            return usage(format!("vertex {v} has size 0"));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (u, v, weight) in edges {
            if u >= n || v >= n {
                return usage(format!("edge ({u}, {v}) references a vertex outside 0..{n}"));
            }
            if u == v {
                return usage(format!("self-loop on vertex {u}"));
            }
            if !weight.is_positive() {
                return usage(format!("edge ({u}, {v}) has non-positive weight {weight}"));
            }
            let (u, v) = if u < v { (u, v) } else { (v, u) };
            if !seen.insert((u, v)) {
                return usage(format!("duplicate edge ({u}, {v})"));
            }
            out.push(Edge { u, v, weight });
        }
        out.sort_by_key(|e| (e.u, e.v));
        Ok(WeightedGraph { sizes, edges: out })
    }

    pub fn n(&self) -> usize {
        self.sizes.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    pub fn total_size(&self) -> u64 {
        self.sizes.iter().sum()
    }

    pub fn has_unit_sizes(&self) -> bool {
        self.sizes.iter().all(|&s| s == 1)
    }

    /// Per-vertex neighbor lists, each sorted by neighbor id.
    pub fn adjacency(&self) -> Vec<Vec<(usize, W)>> {
        let mut adj = vec![Vec::new(); self.n()];
        for e in &self.edges {
            adj[e.u].push((e.v, e.weight.clone()));
            adj[e.v].push((e.u, e.weight.clone()));
        }
        for list in &mut adj {
            list.sort_by_key(|(v, _)| *v);
        }
        adj
    }

    /// Connected components as a label per vertex, labels dense from 0.
    pub fn component_labels(&self) -> (usize, Vec<usize>) {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n()];
        let mut count = 0;
        for s in 0..self.n() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for (y, _) in &adj[x] {
                    if label[*y] == usize::MAX {
                        label[*y] = count;
                        stack.push(*y);
                    }
                }
            }
            count += 1;
        }
        (count, label)
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().0
    }

    /// `W_max / W_min` over the input edges.
    pub fn aspect_ratio(&self) -> Result<W> {
        let max = self.edges.iter().map(|e| &e.weight).max();
        let min = self.edges.iter().map(|e| &e.weight).min();
        match (max, min) {
            (Some(max), Some(min)) => Ok(max.ratio(min)),
            _ => usage("aspect ratio of an edgeless graph"),
        }
    }

    /// If the graph is a simple connected path, its vertices in path order
    /// starting from the lower-numbered endpoint.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        let n = self.n();
        if n == 0 {
            return Some(Vec::new());
        }
        if self.m() != n - 1 {
            return None;
        }
        let adj = self.adjacency();
        if adj.iter().any(|a| a.len() > 2) {
            return None;
        }
        let start = if n == 1 { 0 } else { (0..n).find(|&v| adj[v].len() == 1)? };
        let mut order = Vec::with_capacity(n);
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            order.push(cur);
            let next = adj[cur].iter().map(|(v, _)| *v).find(|&v| v != prev);
            match next {
                Some(v) if order.len() < n => {
                    prev = cur;
                    cur = v;
                }
                _ => break,
            }
        }
        (order.len() == n).then_some(order)
    }

    /// Serializes to the text graph format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.n());
        for (v, &s) in self.sizes.iter().enumerate() {
            if s != 1 {
                let _ = writeln!(out, "size {v} {s}");
            }
        }
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.weight);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut declared_n: Option<usize> = None;
        let mut sizes: BTreeMap<usize, u64> = BTreeMap::new();
        let mut edges: Vec<(usize, usize, W, usize)> = Vec::new();
        let mut max_vertex: Option<usize> = None;
        let perr = |line: usize, message: String| HacError::Parse { line, message };

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = content.split_whitespace().collect();
            let vertex = |s: &str| -> Result<usize> {
                s.parse::<usize>().map_err(|_| perr(line, format!("invalid vertex id `{s}`")))
            };
            match fields[0] {
                "n" => {
                    if fields.len() != 2 {
                        return Err(perr(line, "expected `n <count>`".into()));
                    }
                    if declared_n.is_some() {
                        return Err(perr(line, "duplicate `n` header".into()));
                    }
                    declared_n = Some(vertex(fields[1])?);
                }
                "size" => {
                    if fields.len() != 3 {
                        return Err(perr(line, "expected `size <v> <s>`".into()));
                    }
                    let v = vertex(fields[1])?;
                    let s: u64 = fields[2]
                        .parse()
                        .ok()
                        .filter(|&s| s > 0)
                        .ok_or_else(|| perr(line, format!("invalid size `{}`", fields[2])))?;
                    if sizes.insert(v, s).is_some() {
                        return Err(perr(line, format!("size of vertex {v} given twice")));
                    }
                    max_vertex = max_vertex.max(Some(v));
                }
                _ => {
                    if fields.len() != 3 {
                        return Err(perr(line, "expected `<u> <v> <w>`".into()));
                    }
                    let u = vertex(fields[0])?;
                    let v = vertex(fields[1])?;
                    let w = W::parse_literal(fields[2]).map_err(|m| perr(line, m))?;
                    if !w.is_positive() {
                        return Err(perr(line, format!("edge weight must be positive, got {w}")));
                    }
                    if u == v {
                        return Err(perr(line, format!("self-loop on vertex {u}")));
                    }
                    max_vertex = max_vertex.max(Some(u.max(v)));
                    edges.push((u, v, w, line));
                }
            }
        }

        let inferred = max_vertex.map_or(0, |v| v + 1);
        let n = match declared_n {
            Some(n) if n < inferred => {
                return Err(perr(0, format!("header declares n = {n} but vertex {} is used", inferred - 1)))
            }
            Some(n) => n,
            None => inferred,
        };
        let mut seen = HashSet::new();
        for (u, v, _, line) in &edges {
            if !seen.insert(((*u).min(*v), (*u).max(*v))) {
                return Err(perr(*line, format!("duplicate edge ({u}, {v})")));
            }
        }
        let mut size_vec = vec![1; n];
        for (v, s) in sizes {
            size_vec[v] = s;
        }
        Self::with_sizes(size_vec, edges.into_iter().map(|(u, v, w, _)| (u, v, w)))
    }
}
