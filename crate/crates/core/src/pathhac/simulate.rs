use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::weight::Weight;

/// Priority of a path edge: higher similarity first, then smaller boundary
/// position. The boundary of an edge is the first path position of its right
/// cluster, which never changes while the edge is live.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey<W> {
    pub similarity: W,
    pub boundary: Reverse<usize>,
}

impl<W: Weight> EdgeKey<W> {
    pub fn new(raw: &W, left_size: u64, right_size: u64, boundary: usize) -> Self {
        EdgeKey { similarity: raw.div_sizes(left_size, right_size), boundary: Reverse(boundary) }
    }
}

/// A contiguous run of clusters, in either path direction.
/// `raw[i]` and `boundaries[i]` describe the edge between clusters `i` and
/// `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentInput<W> {
    pub sizes: Vec<u64>,
    pub raw: Vec<W>,
    pub boundaries: Vec<usize>,
}

impl<W: Weight> SegmentInput<W> {
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// Clusters `lo..=hi`, with the edges between them.
    pub fn slice(&self, lo: usize, hi: usize) -> SegmentInput<W> {
        SegmentInput {
            sizes: self.sizes[lo..=hi].to_vec(),
            raw: self.raw[lo..hi].to_vec(),
            boundaries: self.boundaries[lo..hi].to_vec(),
        }
    }

    pub fn reversed(&self) -> SegmentInput<W> {
        let mut s = self.clone();
        s.sizes.reverse();
        s.raw.reverse();
        s.boundaries.reverse();
        s
    }
}

/// One merge inside a segment simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentEvent<W> {
    pub key: EdgeKey<W>,
    /// Local edge index that merged.
    pub edge: usize,
    /// Local start index of the surviving (left) cluster.
    pub left: usize,
    /// Local start index of the absorbed (right) cluster.
    pub right: usize,
    pub size: u64,
    /// Size of the cluster holding local cluster 0 after this event.
    pub first_size: u64,
    /// Size of the cluster holding the last local cluster after this event.
    pub last_size: u64,
}

const NONE: usize = usize::MAX;

/// Greedy average-linkage HAC restricted to `input`, merging edges in key
/// order until no live edge has similarity above `threshold`.
pub fn simulate_segment<W: Weight>(input: &SegmentInput<W>, threshold: &W) -> Vec<SegmentEvent<W>> {
    let k = input.sizes.len();
    if k < 2 {
        return Vec::new();
    }
    let mut size = input.sizes.clone();
    let mut prev: Vec<usize> = (0..k).map(|i| if i == 0 { NONE } else { i - 1 }).collect();
    let mut next: Vec<usize> = (1..=k).collect();
    let mut version = vec![0u32; k - 1];
    let mut last_start = k - 1;
    let key_of = |e: usize, size: &[u64], prev: &[usize]| {
        EdgeKey::new(&input.raw[e], size[prev[e + 1]], size[e + 1], input.boundaries[e])
    };
    let mut heap: BinaryHeap<(EdgeKey<W>, usize, u32)> = (0..k - 1).map(|e| (key_of(e, &size, &prev), e, 0)).collect();
    let mut events = Vec::new();
    while let Some((key, e, ver)) = heap.pop() {
        if version[e] != ver {
            continue;
        }
        if key.similarity <= *threshold {
            break;
        }
        let (x, y) = (prev[e + 1], e + 1);
        size[x] += size[y];
        let after = next[y];
        next[x] = after;
        if after < k {
            prev[after] = x;
        }
        if last_start == y {
            last_start = x;
        }
        version[e] = u32::MAX;
        events.push(SegmentEvent {
            key,
            edge: e,
            left: x,
            right: y,
            size: size[x],
            first_size: size[0],
            last_size: size[last_start],
        });
        if x > 0 {
            let le = x - 1;
            version[le] += 1;
            heap.push((key_of(le, &size, &prev), le, version[le]));
        }
        if after < k {
            let re = after - 1;
            version[re] += 1;
            heap.push((key_of(re, &size, &prev), re, version[re]));
        }
    }
    events
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::Rational;

    fn seg(sizes: &[u64], raw: &[i64]) -> SegmentInput<Rational> {
        SegmentInput {
            sizes: sizes.to_vec(),
            raw: raw.iter().map(|&w| Rational::from_int(w)).collect(),
            boundaries: (1..sizes.len()).collect(),
        }
    }

    #[test]
    fn uniform_path_merges_alternate_edges_in_first_bucket() {
        let s = seg(&[1; 8], &[1; 7]);
        let events = simulate_segment(&s, &Rational::new(2, 3));
        let edges: Vec<usize> = events.iter().map(|e| e.edge).collect();
        assert_eq!(edges, vec![0, 2, 4, 6]);
        assert_eq!(events.last().unwrap().last_size, 2);
    }

    #[test]
    fn runs_to_completion_with_zero_threshold() {
        let s = seg(&[1, 1, 1], &[3, 2]);
        let events = simulate_segment(&s, &Rational::zero());
        assert_eq!(events.len(), 2);
        assert_eq!(events[1].key.similarity, Rational::from_int(1));
        assert_eq!((events[1].first_size, events[1].last_size), (3, 3));
    }

    #[test]
    fn reversal_preserves_merge_keys() {
        let s = seg(&[1, 2, 1, 4, 1], &[5, 3, 7, 2]);
        let fwd: Vec<_> = simulate_segment(&s, &Rational::zero()).into_iter().map(|e| e.key).collect();
        let bwd: Vec<_> = simulate_segment(&s.reversed(), &Rational::zero()).into_iter().map(|e| e.key).collect();
        assert_eq!(fwd, bwd);
    }
}
