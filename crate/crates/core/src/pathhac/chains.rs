use std::ops::Range;

use super::simulate::EdgeKey;
use crate::weight::Weight;

/// A nearest-neighbor chain inside one run of in-bucket edges, in run-local
/// cluster indices. Edge `i` joins clusters `i` and `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chain {
    /// First cluster (end of the left arm).
    pub lo: usize,
    /// Last cluster (end of the right arm).
    pub hi: usize,
    /// The reciprocal-pair edge, joining clusters `reciprocal` and
    /// `reciprocal + 1`.
    pub reciprocal: usize,
}

impl Chain {
    /// Left arm `c'_1, c'_2, ...` as cluster indices, walking away from the
    /// reciprocal pair.
    pub fn left_arm(&self) -> impl Iterator<Item = usize> {
        (self.lo..=self.reciprocal).rev()
    }

    /// Right arm `c_1, c_2, ...`.
    pub fn right_arm(&self) -> impl Iterator<Item = usize> {
        self.reciprocal + 1..=self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChainSet {
    pub chains: Vec<Chain>,
    /// Edges lying in no chain; each joins the arm ends of two neighboring
    /// chains.
    pub strays: Vec<usize>,
}

/// Splits a run of in-bucket edges into chains. Every local maximum of the
/// key sequence is a reciprocal pair; every interior local minimum is a stray
/// edge separating two chains.
pub fn build_chains<W: Weight>(keys: &[EdgeKey<W>]) -> ChainSet {
    let k = keys.len();
    let mut out = ChainSet::default();
    if k == 0 {
        return out;
    }
    let mut lo = 0;
    let mut reciprocal = None;
    for i in 0..k {
        let above_left = i == 0 || keys[i] > keys[i - 1];
        let above_right = i + 1 == k || keys[i] > keys[i + 1];
        if above_left && above_right {
            reciprocal = Some(i);
        } else if i > 0 && i + 1 < k && keys[i] < keys[i - 1] && keys[i] < keys[i + 1] {
            let r = reciprocal.take().expect("a local minimum follows a local maximum");
            out.chains.push(Chain { lo, hi: i, reciprocal: r });
            out.strays.push(i);
            lo = i + 1;
        }
    }
    let r = reciprocal.expect("every run has a maximum");
    out.chains.push(Chain { lo, hi: k, reciprocal: r });
    out
}

/// Splits an arm (sizes listed from the reciprocal pair outward) before every
/// position `i >= 3` (1-based) with `S(c_i) < 2 S(c_{i-1})`.
pub fn split_subchains(arm_sizes: &[u64]) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 2..arm_sizes.len() {
        if arm_sizes[i] < 2 * arm_sizes[i - 1] {
            out.push(start..i);
            start = i;
        }
    }
    if start < arm_sizes.len() {
        out.push(start..arm_sizes.len());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::Rational;

    fn keys(ws: &[i64]) -> Vec<EdgeKey<Rational>> {
        ws.iter().enumerate().map(|(i, &w)| EdgeKey::new(&Rational::from_int(w), 1, 1, i + 1)).collect()
    }

    #[test]
    fn uniform_run_has_one_chain_at_the_tie_winner() {
        let set = build_chains(&keys(&[1, 1, 1]));
        assert_eq!(set.chains, vec![Chain { lo: 0, hi: 3, reciprocal: 0 }]);
        assert!(set.strays.is_empty());
    }

    #[test]
    fn valley_splits_into_two_chains() {
        let set = build_chains(&keys(&[10, 1, 10]));
        assert_eq!(set.chains, vec![Chain { lo: 0, hi: 1, reciprocal: 0 }, Chain { lo: 2, hi: 3, reciprocal: 2 }]);
        assert_eq!(set.strays, vec![1]);
    }

    #[test]
    fn increasing_run_peaks_at_the_last_edge() {
        let set = build_chains(&keys(&[1, 2, 3, 4]));
        assert_eq!(set.chains, vec![Chain { lo: 0, hi: 4, reciprocal: 3 }]);
        let c = set.chains[0];
        assert_eq!(c.left_arm().collect::<Vec<_>>(), vec![3, 2, 1, 0]);
        assert_eq!(c.right_arm().collect::<Vec<_>>(), vec![4]);
    }

    #[test]
    fn subchain_splits() {
        assert_eq!(split_subchains(&[1, 2, 4, 1, 2]), vec![0..3, 3..5]);
        assert_eq!(split_subchains(&[1, 1]), vec![0..2]);
        assert_eq!(split_subchains(&[1, 1, 1, 1]), vec![0..2, 2..3, 3..4]);
        assert_eq!(split_subchains(&[5]), vec![0..1]);
    }
}
