use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::category::{arm_categories, classify_subchain, Category};
use super::chains::{build_chains, split_subchains, Chain};
use super::simulate::{simulate_segment, EdgeKey, SegmentEvent, SegmentInput};
use crate::dendrogram::Dendrogram;
use crate::error::{usage, HacError, Result};
use crate::graph::WeightedGraph;
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathConfig {
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
}

impl Default for PathConfig {
    fn default() -> Self {
        PathConfig { workers: 1 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PathStats {
    pub phases: usize,
    pub chains: usize,
    /// Longest subchain of any arm, the reciprocal-pair end included.
    pub max_arm_subchain: usize,
    /// Longest seed (the two innermost arm subchains joined).
    pub max_seed: usize,
    /// Longest segment planned from the categories, before any repair.
    pub max_planned_segment: usize,
    pub segments_simulated: usize,
    /// Planned cuts that verification rejected and coalesced.
    pub repairs: usize,
    /// Aspect ratio above `n^3`.
    pub aspect_warning: bool,
}

impl PathStats {
    /// `ceil(log_{3/2}(aspect * n^2)) + 1`.
    pub fn phase_bound(total_size: u64, aspect: f64) -> usize {
        let n = total_size as f64;
        ((aspect * n * n).ln() / 1.5f64.ln()).ceil().max(0.0) as usize + 1
    }

    /// `floor(log2 n) + 2`: doubling sizes after the exempt second cluster.
    pub fn arm_subchain_bound(total_size: u64) -> usize {
        total_size.max(1).ilog2() as usize + 2
    }

    pub fn planned_segment_bound(total_size: u64) -> usize {
        4 * (total_size.max(1).ilog2() as usize) + 8
    }
}

#[derive(Debug, Clone)]
struct Live {
    node: usize,
    size: u64,
    /// First path position covered by the cluster.
    first: usize,
}

#[derive(Debug, Clone)]
struct Record<W> {
    key: EdgeKey<W>,
    left: usize,
    right: usize,
    size: u64,
}

/// Read-only view of the clusters at the start of a phase.
struct PhaseView<'a, W> {
    clusters: &'a [Live],
    /// Raw weight of the path edge ending at each position.
    wpos: &'a [W],
    floor: &'a W,
}

impl<W: Weight> PhaseView<'_, W> {
    fn raw(&self, left: usize) -> &W {
        &self.wpos[self.clusters[left + 1].first]
    }

    fn key(&self, left: usize) -> EdgeKey<W> {
        let c = self.clusters;
        EdgeKey::new(self.raw(left), c[left].size, c[left + 1].size, c[left + 1].first)
    }

    /// Clusters `lo..=hi` in path order.
    fn segment(&self, lo: usize, hi: usize) -> SegmentInput<W> {
        self.walk(&(lo..=hi).collect::<Vec<_>>())
    }

    /// Adjacent clusters in the given order (either direction).
    fn walk(&self, ids: &[usize]) -> SegmentInput<W> {
        let c = self.clusters;
        let mut input = SegmentInput {
            sizes: ids.iter().map(|&i| c[i].size).collect(),
            raw: Vec::with_capacity(ids.len()),
            boundaries: Vec::with_capacity(ids.len()),
        };
        for p in ids.windows(2) {
            let right = p[0].max(p[1]);
            input.raw.push(self.wpos[c[right].first].clone());
            input.boundaries.push(c[right].first);
        }
        input
    }
}

struct ChainPlan {
    cuts: Vec<usize>,
    max_arm_subchain: usize,
    seed: usize,
}

/// Plans speculative cuts for one chain: splits both arms into subchains,
/// classifies every subchain under both hypotheses, propagates categories by
/// XOR scan, and cuts where the categories say the chain falls apart.
fn plan_chain<W: Weight>(view: &PhaseView<'_, W>, chain: &Chain) -> ChainPlan {
    let arms: [Vec<usize>; 2] = [chain.left_arm().collect(), chain.right_arm().collect()];
    let subs: [Vec<std::ops::Range<usize>>; 2] = [0, 1].map(|s| {
        let sizes: Vec<u64> = arms[s].iter().map(|&i| view.clusters[i].size).collect();
        split_subchains(&sizes)
    });
    let max_arm_subchain = subs.iter().flatten().map(|r| r.len()).max().unwrap_or(0);
    let (a, b) = (subs[0][0].len(), subs[1][0].len());

    // Seed, with the neighboring subchains' first clusters as targets.
    let has_target = [subs[0].len() > 1, subs[1].len() > 1];
    let lo = chain.reciprocal + 1 - a - usize::from(has_target[0]);
    let hi = chain.reciprocal + b + usize::from(has_target[1]);
    let seed_events = simulate_segment(&view.segment(lo, hi), view.floor);
    let last_edge = hi - lo - 1;
    let seed_forces = [
        has_target[0] && seed_events.iter().any(|e| e.edge == 0),
        has_target[1] && seed_events.iter().any(|e| e.edge == last_edge),
    ]
    .map(|merged| if merged { Category::A } else { Category::B });

    let mut cuts = Vec::new();
    for side in 0..2 {
        let (arm, subs) = (&arms[side], &subs[side]);
        let forced: Vec<(Category, Category)> = (1..subs.len().saturating_sub(1))
            .map(|j| {
                let mut ids = arm[subs[j].clone()].to_vec();
                ids.push(arm[subs[j + 1].start]);
                let input = view.walk(&ids);
                let fa = classify_subchain(&input, true, Category::A, view.floor).0;
                let fb = classify_subchain(&input, true, Category::B, view.floor).0;
                (fa, fb)
            })
            .collect();
        if subs.len() < 2 {
            continue;
        }
        let cats = arm_categories(seed_forces[side], &forced);
        for (j, cat) in (1..subs.len()).zip(cats) {
            let first = subs[j].start;
            let edge_between = |x: usize, y: usize| arm[x].min(arm[y]);
            match cat {
                Category::B => cuts.push(edge_between(first - 1, first)),
                Category::A if first + 1 < arm.len() => cuts.push(edge_between(first, first + 1)),
                Category::A => {}
            }
        }
    }
    ChainPlan { cuts, max_arm_subchain, seed: a + b }
}

/// Whether the cut at edge `c` would have merged in the true greedy order,
/// given the independent simulations of the segments on either side.
fn separator_fires<W: Weight>(
    view: &PhaseView<'_, W>,
    c: usize,
    left: &[SegmentEvent<W>],
    right: &[SegmentEvent<W>],
) -> bool {
    let raw = view.raw(c);
    let boundary = view.clusters[c + 1].first;
    let (mut sx, mut sy) = (view.clusters[c].size, view.clusters[c + 1].size);
    let (mut i, mut j) = (0, 0);
    loop {
        let sep = EdgeKey::new(raw, sx, sy, boundary);
        let take_left = match (left.get(i), right.get(j)) {
            (None, None) => return sep.similarity > *view.floor,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(x), Some(y)) => x.key > y.key,
        };
        let next = if take_left { &left[i].key } else { &right[j].key };
        if sep > *next {
            return true;
        }
        if take_left {
            sx = left[i].last_size;
            i += 1;
        } else {
            sy = right[j].first_size;
            j += 1;
        }
    }
}

/// Maximal cluster ranges of each run, split at active cuts.
fn segments_of(runs: &[(usize, usize)], cut: &[bool]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &(e_lo, e_hi) in runs {
        let mut lo = e_lo;
        for e in e_lo..=e_hi {
            if cut[e] {
                out.push((lo, e));
                lo = e + 1;
            }
        }
        out.push((lo, e_hi + 1));
    }
    out
}

/// Parallel average-linkage HAC on a path graph, phase by phase over
/// geometric similarity buckets.
pub fn run_path_hac<W: Weight>(g: &WeightedGraph<W>) -> Result<Dendrogram<W>> {
    Ok(run_path_hac_with(g, PathConfig::default())?.0)
}

pub fn run_path_hac_with<W: Weight>(g: &WeightedGraph<W>, config: PathConfig) -> Result<(Dendrogram<W>, PathStats)> {
    let order = g.path_order().ok_or_else(|| HacError::Usage("input is not a simple path".into()))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| HacError::Usage(format!("cannot start {} workers: {e}", config.workers)))?;
    pool.install(|| run_phases(g, &order))
}

fn run_phases<W: Weight>(g: &WeightedGraph<W>, order: &[usize]) -> Result<(Dendrogram<W>, PathStats)> {
    let n = order.len();
    let mut stats = PathStats::default();
    let mut dendrogram = Dendrogram::new(n);
    if n < 2 {
        return Ok((dendrogram, stats));
    }
    let adjacency = g.adjacency();
    let mut wpos: Vec<W> = Vec::with_capacity(n);
    wpos.push(W::zero());
    for p in 1..n {
        let (u, v) = (order[p - 1], order[p]);
        let w = adjacency[u].iter().find(|(x, _)| *x == v).map(|(_, w)| w.clone());
        wpos.push(w.ok_or_else(|| HacError::Usage("path order lost an edge".into()))?);
    }
    let sizes = g.sizes();
    let aspect = g.aspect_ratio()?;
    let total = g.total_size();
    stats.aspect_warning = aspect.to_f64() > (total as f64).powi(3);

    let mut clusters: Vec<Live> = (0..n).map(|p| Live { node: order[p], size: sizes[order[p]], first: p }).collect();
    let w_max = (0..n - 1)
        .map(|i| EdgeKey::new(&wpos[i + 1], clusters[i].size, clusters[i + 1].size, i + 1).similarity)
        .max()
        .expect("a path with two vertices has an edge");
    let mut floor = w_max;
    let mut records: Vec<Record<W>> = Vec::with_capacity(n - 1);
    let mut next_node = n;

    while clusters.len() > 1 {
        let view = PhaseView { clusters: &clusters, wpos: &wpos, floor: &floor };
        let keys: Vec<EdgeKey<W>> = (0..clusters.len() - 1).into_par_iter().map(|i| view.key(i)).collect();
        let top = keys.par_iter().map(|k| &k.similarity).max().expect("non-empty").clone();
        // Skip empty buckets: advance until the live maximum lies in (floor, floor * 3/2].
        while top <= floor {
            floor = floor.scale(2, 3);
        }
        let view = PhaseView { clusters: &clusters, wpos: &wpos, floor: &floor };
        stats.phases += 1;

        let mut runs: Vec<(usize, usize)> = Vec::new();
        let mut start = None;
        for (e, k) in keys.iter().enumerate() {
            match (k.similarity > floor, start) {
                (true, None) => start = Some(e),
                (false, Some(s)) => {
                    runs.push((s, e - 1));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            runs.push((s, keys.len() - 1));
        }

        let mut chains = Vec::new();
        let mut cut = vec![false; keys.len()];
        for &(e_lo, e_hi) in &runs {
            let set = build_chains(&keys[e_lo..=e_hi]);
            chains.extend(set.chains.into_iter().map(|c| Chain {
                lo: c.lo + e_lo,
                hi: c.hi + e_lo,
                reciprocal: c.reciprocal + e_lo,
            }));
            for s in set.strays {
                cut[s + e_lo] = true;
            }
        }
        stats.chains += chains.len();
        let plans: Vec<ChainPlan> = chains.par_iter().map(|c| plan_chain(&view, c)).collect();
        for p in &plans {
            stats.max_arm_subchain = stats.max_arm_subchain.max(p.max_arm_subchain);
            stats.max_seed = stats.max_seed.max(p.seed);
            for &c in &p.cuts {
                cut[c] = true;
            }
        }
        let planned = segments_of(&runs, &cut);
        let longest = planned.iter().map(|&(lo, hi)| hi - lo + 1).max().unwrap_or(0);
        stats.max_planned_segment = stats.max_planned_segment.max(longest);

        let mut cache: HashMap<(usize, usize), Vec<SegmentEvent<W>>> = HashMap::new();
        let segments = loop {
            let segments = segments_of(&runs, &cut);
            let fresh: Vec<(usize, usize)> = segments.iter().copied().filter(|s| !cache.contains_key(s)).collect();
            let simulated: Vec<Vec<SegmentEvent<W>>> =
                fresh.par_iter().map(|&(lo, hi)| simulate_segment(&view.segment(lo, hi), &floor)).collect();
            stats.segments_simulated += fresh.len();
            cache.extend(fresh.into_iter().zip(simulated));
            let fired: Vec<usize> = segments
                .par_windows(2)
                .filter(|w| w[0].1 + 1 == w[1].0 && cut[w[0].1])
                .filter(|w| separator_fires(&view, w[0].1, &cache[&w[0]], &cache[&w[1]]))
                .map(|w| w[0].1)
                .collect();
            if fired.is_empty() {
                break segments;
            }
            stats.repairs += fired.len();
            for c in fired {
                cut[c] = false;
            }
        };

        let mut next: Vec<Live> = Vec::with_capacity(clusters.len());
        let mut i = 0;
        let mut seg_iter = segments.iter().peekable();
        while i < clusters.len() {
            let Some(&&(lo, hi)) = seg_iter.peek().filter(|s| s.0 == i) else {
                next.push(clusters[i].clone());
                i += 1;
                continue;
            };
            seg_iter.next();
            let mut local: Vec<Option<Live>> = clusters[lo..=hi].iter().cloned().map(Some).collect();
            for ev in &cache[&(lo, hi)] {
                let right = local[ev.right].take().expect("absorbed cluster is live");
                let left = local[ev.left].as_mut().expect("surviving cluster is live");
                records.push(Record { key: ev.key.clone(), left: left.node, right: right.node, size: ev.size });
                left.node = next_node;
                left.size = ev.size;
                next_node += 1;
            }
            next.extend(local.into_iter().flatten());
            i = hi + 1;
        }
        if next.len() == clusters.len() {
            return usage("path phase made no progress");
        }
        clusters = next;
    }

    // Parents merge strictly below their children on a path, so key order is
    // a valid step order.
    let mut by_key: Vec<usize> = (0..records.len()).collect();
    by_key.sort_by(|&x, &y| records[y].key.cmp(&records[x].key));
    let mut final_id = vec![0usize; next_node];
    for (v, slot) in final_id.iter_mut().enumerate().take(n) {
        *slot = v;
    }
    for (rank, &r) in by_key.iter().enumerate() {
        final_id[n + r] = n + rank;
    }
    for &r in &by_key {
        let rec = &records[r];
        dendrogram.push(final_id[rec.left], final_id[rec.right], rec.key.similarity.clone(), rec.size);
    }
    Ok((dendrogram, stats))
}
