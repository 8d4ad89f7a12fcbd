//! Merge forests produced by every engine, with queries and a JSON-lines
//! serialization.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::cluster::ClusterId;
use crate::error::{usage, HacError, Result};
use crate::weight::Weight;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeRecord<W> {
    /// 1-based.
    pub step: usize,
    /// Smaller child id.
    pub a: ClusterId,
    /// Larger child id.
    pub b: ClusterId,
    /// Always `n - 1 + step`.
    pub parent: ClusterId,
    pub similarity: W,
    pub size: u64,
}

/// A forest of binary merge trees over leaves `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dendrogram<W> {
    n: usize,
    merges: Vec<MergeRecord<W>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DendrogramStats<W> {
    pub height: usize,
    pub merge_count: usize,
    pub similarities: Vec<W>,
}

/// A cluster identified independently of merge order: its smallest leaf and
/// its leaf count. In a laminar family these two determine the cluster.
pub type ClusterKey = (usize, usize);

/// Order-independent form of a dendrogram: one entry per merge holding the
/// two child clusters (sorted) and the merge similarity, sorted overall.
pub type CanonicalForm<W> = Vec<(ClusterKey, ClusterKey, W)>;

impl<W: Weight> Dendrogram<W> {
    pub fn new(n: usize) -> Self {
        Dendrogram { n, merges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn merges(&self) -> &[MergeRecord<W>] {
        &self.merges
    }

    pub fn len(&self) -> usize {
        self.merges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.merges.is_empty()
    }

    /// Id the next recorded merge will receive.
    pub fn next_id(&self) -> ClusterId {
        self.n + self.merges.len()
    }

    /// Appends a merge of clusters `x` and `y` and returns the parent id.
    pub fn push(&mut self, x: ClusterId, y: ClusterId, similarity: W, size: u64) -> ClusterId {
        let parent = self.next_id();
        debug_assert!(x < parent && y < parent && x != y);
        self.merges.push(MergeRecord {
            step: self.merges.len() + 1,
            a: x.min(y),
            b: x.max(y),
            parent,
            similarity,
            size,
        });
        parent
    }

    /// Checks id discipline: parents are `n..n+len` in order, children refer
    /// to existing clusters, and no cluster has two parents.
    pub fn validate(&self) -> Result<()> {
        let total = self.n + self.merges.len();
        let mut has_parent = vec![false; total];
        if self.n > 0 && self.merges.len() >= self.n {
            return usage(format!("{} merges over {} leaves", self.merges.len(), self.n));
        }
        for (i, m) in self.merges.iter().enumerate() {
            if m.step != i + 1 || m.parent != self.n + i {
                return usage(format!("merge {} has step {} parent {}", i + 1, m.step, m.parent));
            }
            if m.a >= m.b || m.b >= m.parent {
                return usage(format!("merge {} has children ({}, {})", m.step, m.a, m.b));
            }
            for c in [m.a, m.b] {
                if std::mem::replace(&mut has_parent[c], true) {
                    return usage(format!("cluster {c} merged twice"));
                }
            }
            if !m.similarity.is_positive() {
                return usage(format!("merge {} has non-positive similarity", m.step));
            }
        }
        Ok(())
    }

    fn parent_links(&self) -> Vec<Option<ClusterId>> {
        let mut parent = vec![None; self.n + self.merges.len()];
        for m in &self.merges {
            parent[m.a] = Some(m.parent);
            parent[m.b] = Some(m.parent);
        }
        parent
    }

    /// Step at which leaves `u` and `v` first share a cluster, or `None` when
    /// they are never merged.
    pub fn merge_index(&self, u: usize, v: usize) -> Result<Option<usize>> {
        if u >= self.n || v >= self.n {
            return usage(format!("leaf ids ({u}, {v}) out of range 0..{}", self.n));
        }
        if u == v {
            return usage("merge_index of a leaf with itself");
        }
        let parent = self.parent_links();
        let mut on_path = vec![false; parent.len()];
        let mut x = Some(u);
        while let Some(c) = x {
            on_path[c] = true;
            x = parent[c];
        }
        let mut y = Some(v);
        while let Some(c) = y {
            if on_path[c] {
                return Ok(Some(c + 1 - self.n));
            }
            y = parent[c];
        }
        Ok(None)
    }

    /// Edge-count height of every node.
    pub fn node_heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.n + self.merges.len()];
        for m in &self.merges {
            h[m.parent] = 1 + h[m.a].max(h[m.b]);
        }
        h
    }

    pub fn height(&self) -> usize {
        self.node_heights().into_iter().max().unwrap_or(0)
    }

    pub fn stats(&self) -> DendrogramStats<W> {
        DendrogramStats {
            height: self.height(),
            merge_count: self.merges.len(),
            similarities: self.merges.iter().map(|m| m.similarity.clone()).collect(),
        }
    }

    pub fn roots(&self) -> Vec<ClusterId> {
        let parent = self.parent_links();
        (0..parent.len()).filter(|&c| parent[c].is_none()).collect()
    }

    /// True if similarities never increase from one step to the next.
    pub fn is_monotone(&self) -> bool {
        self.merges.windows(2).all(|w| w[0].similarity >= w[1].similarity)
    }

    /// First step whose similarity exceeds its predecessor's.
    pub fn first_monotonicity_violation(&self) -> Option<usize> {
        self.merges.windows(2).position(|w| w[0].similarity < w[1].similarity).map(|i| i + 2)
    }

    pub fn cluster_keys(&self) -> Vec<ClusterKey> {
        let mut keys: Vec<ClusterKey> = (0..self.n).map(|v| (v, 1)).collect();
        for m in &self.merges {
            let (ka, kb) = (keys[m.a], keys[m.b]);
            keys.push((ka.0.min(kb.0), ka.1 + kb.1));
        }
        keys
    }

    pub fn canonical(&self) -> CanonicalForm<W> {
        let keys = self.cluster_keys();
        let mut out: CanonicalForm<W> = self
            .merges
            .iter()
            .map(|m| {
                let (x, y) = (keys[m.a], keys[m.b]);
                (x.min(y), x.max(y), m.similarity.clone())
            })
            .collect();
        out.sort();
        out
    }

    /// Equality as unordered trees with equal per-merge similarities.
    pub fn same_tree(&self, other: &Dendrogram<W>) -> bool {
        self.n == other.n && self.canonical() == other.canonical()
    }

    /// Leaves under each node, for small dendrograms.
    pub fn leaf_sets(&self) -> Vec<Vec<usize>> {
        let mut sets: Vec<Vec<usize>> = (0..self.n).map(|v| vec![v]).collect();
        for m in &self.merges {
            let mut s = sets[m.a].clone();
            s.extend_from_slice(&sets[m.b]);
            s.sort_unstable();
            sets.push(s);
        }
        sets
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for m in &self.merges {
            let line = json!({
                "step": m.step,
                "a": m.a,
                "b": m.b,
                "parent": m.parent,
                "sim": m.similarity.to_json(),
                "size": m.size,
            });
            let _ = writeln!(out, "{line}");
        }
        out
    }

    /// Parses a JSON-lines dendrogram over `n` leaves.
    pub fn from_jsonl(n: usize, text: &str) -> Result<Self> {
        let mut d = Dendrogram::new(n);
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let perr = |message: String| HacError::Parse { line, message };
            let v: Value = serde_json::from_str(raw).map_err(|e| perr(e.to_string()))?;
            let field = |k: &str| -> Result<usize> {
                v.get(k)
                    .and_then(Value::as_u64)
                    .map(|x| x as usize)
                    .ok_or_else(|| perr(format!("missing or invalid `{k}`")))
            };
            let sim = W::from_json(v.get("sim").unwrap_or(&Value::Null)).map_err(perr)?;
            let record = MergeRecord {
                step: field("step")?,
                a: field("a")?,
                b: field("b")?,
                parent: field("parent")?,
                similarity: sim,
                size: field("size")? as u64,
            };
            d.merges.push(record);
        }
        d.validate()?;
        Ok(d)
    }

    /// Rebuilds a dendrogram from raw merges whose parent ids follow the
    /// `n - 1 + step` rule, normalizing child order.
    pub fn from_records(n: usize, records: Vec<MergeRecord<W>>) -> Result<Self> {
        let mut d = Dendrogram::new(n);
        for m in records {
            d.push(m.a, m.b, m.similarity, m.size);
        }
        d.validate()?;
        Ok(d)
    }
}

/// Infers the leaf count of a JSON-lines dendrogram when the caller does not
/// know it: a full dendrogram has `parent = n - 1 + step`.
pub fn infer_leaf_count(text: &str) -> Option<usize> {
    let first = text.lines().find(|l| !l.trim().is_empty())?;
    let v: Value = serde_json::from_str(first).ok()?;
    let step = v.get("step")?.as_u64()? as usize;
    let parent = v.get("parent")?.as_u64()? as usize;
    (parent + 1).checked_sub(step)
}
