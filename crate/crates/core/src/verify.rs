//! Randomized and exhaustive cross-checks between engines, the path
//! algorithm, and the reductions' brute-force oracles.
//!
//! Every check returns a [`CheckReport`]; failures carry a minimized
//! counterexample that replays with the reported seed.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dendrogram::Dendrogram;
use crate::engines::{run_heap_based_with, run_nn_chain, HeapConfig};
use crate::gen::{self, rng, DistinctWeights, GenRng};
use crate::graph::WeightedGraph;
use crate::oracle::run_greedy;
use crate::pathhac::{run_path_hac_with, PathConfig, PathStats};
use crate::reductions::{
    audit_round_order, audit_tree_phases, build_adaptive_min_tree, build_triangle_instance, decode_lfm,
    decode_root_order, decode_triangle, greedy_lfm_matching, has_triangle, reduce_lfm_to_adaptive_min, run_tree_hac,
    simulate_adaptive_minimum, AdaptiveMinInstance, LfmInstance, SimpleGraph, TreeVariant,
};
use crate::weight::{Rational, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Largest vertex count for random graphs and paths.
    pub max_n: usize,
    /// Random instances per check.
    pub instances: usize,
    /// Random 3x3 unit-expanded tree instances; each costs several seconds.
    pub expanded_instances: usize,
    pub heap: HeapConfig,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 7, max_n: 32, instances: 200, expanded_instances: 1, heap: HeapConfig::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// The failing input in its text format.
    pub input: String,
    /// First merge step at which the outputs differ, when meaningful.
    pub step: Option<usize>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub suite: &'static str,
    pub check: String,
    pub seed: u64,
    pub generator: &'static str,
    pub instances: usize,
    pub passed: bool,
    pub detail: String,
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    fn new(suite: &'static str, check: impl Into<String>, seed: u64) -> Self {
        CheckReport {
            suite,
            check: check.into(),
            seed,
            generator: gen::GENERATOR,
            instances: 0,
            passed: true,
            detail: String::new(),
            counterexample: None,
        }
    }

    fn fail(&mut self, cx: Counterexample) {
        if self.passed {
            self.passed = false;
            self.counterexample = Some(cx);
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

/// First step at which two dendrograms differ.
pub fn first_divergence<W: Weight>(a: &Dendrogram<W>, b: &Dendrogram<W>) -> Option<usize> {
    let k = a.merges().iter().zip(b.merges()).position(|(x, y)| x != y);
    match k {
        Some(k) => Some(k + 1),
        None if a.len() != b.len() => Some(a.len().min(b.len()) + 1),
        None => None,
    }
}

fn monotone_failure<W: Weight>(d: &Dendrogram<W>) -> Option<String> {
    d.first_monotonicity_violation().map(|s| format!("similarity increases at step {s}"))
}

/// Greedily deletes edges, then isolated vertices, while `fails` keeps
/// holding.
pub fn minimize_graph<W: Weight>(g: &WeightedGraph<W>, fails: impl Fn(&WeightedGraph<W>) -> bool) -> WeightedGraph<W> {
    let mut cur = g.clone();
    let mut progress = true;
    while progress {
        progress = false;
        for skip in 0..cur.m() {
            let edges =
                cur.edges().iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, e)| (e.u, e.v, e.weight.clone()));
            let cand = WeightedGraph::with_sizes(cur.sizes().to_vec(), edges).expect("subgraph is valid");
            if fails(&cand) {
                cur = cand;
                progress = true;
                break;
            }
        }
    }
    let mut used = vec![false; cur.n()];
    for e in cur.edges() {
        used[e.u] = true;
        used[e.v] = true;
    }
    let mut relabel = vec![usize::MAX; cur.n()];
    let mut sizes = Vec::new();
    for v in (0..cur.n()).filter(|&v| used[v]) {
        relabel[v] = sizes.len();
        sizes.push(cur.sizes()[v]);
    }
    let edges = cur.edges().iter().map(|e| (relabel[e.u], relabel[e.v], e.weight.clone()));
    match WeightedGraph::with_sizes(sizes, edges) {
        Ok(compact) if compact.n() > 0 && fails(&compact) => compact,
        _ => cur,
    }
}

fn engine_divergence(
    g: &WeightedGraph<Rational>,
    heap: HeapConfig,
    check_chain: bool,
) -> Option<(Option<usize>, String)> {
    let oracle = run_greedy(g);
    if let Some(m) = monotone_failure(&oracle) {
        return Some((None, format!("oracle: {m}")));
    }
    let (h, _) = run_heap_based_with(g, heap);
    if h != oracle {
        return Some((first_divergence(&h, &oracle), "heap engine differs from oracle".into()));
    }
    if check_chain {
        let c = run_nn_chain(g);
        // NN-chain emits merges in chain order, so only the tree is compared.
        if !c.same_tree(&oracle) {
            return Some((None, "NN-chain tree differs from oracle".into()));
        }
    }
    None
}

fn record_graph_failure(
    report: &mut CheckReport,
    g: &WeightedGraph<Rational>,
    check: impl Fn(&WeightedGraph<Rational>) -> Option<(Option<usize>, String)>,
) {
    let small = minimize_graph(g, |h| check(h).is_some());
    let (step, message) = check(&small).expect("minimized graph still fails");
    report.fail(Counterexample { input: small.to_text(), step, message });
}

/// Oracle, heap engine and NN-chain agree on random connected graphs with
/// distinct weights: heap output is identical, NN-chain builds the same tree.
pub fn check_engine_equivalence(seed: u64, count: usize, max_n: usize, heap: HeapConfig) -> CheckReport {
    let mut report = CheckReport::new("engines", "engine equivalence", seed);
    let mut r = rng(seed);
    for _ in 0..count {
        let g: WeightedGraph<Rational> = gen::random_small_graph(&mut r, 2, max_n.max(2));
        report.instances += 1;
        if engine_divergence(&g, heap, true).is_some() {
            record_graph_failure(&mut report, &g, |h| engine_divergence(h, heap, true));
            break;
        }
    }
    report.detail = format!("{} graphs, n in [2, {}]", report.instances, max_n.max(2));
    report
}

/// Heap engine output equals the oracle's under heavy ties, which exercises
/// the global tie rule.
pub fn check_tie_rule(seed: u64, count: usize, max_n: usize, heap: HeapConfig) -> CheckReport {
    let mut report = CheckReport::new("engines", "tie rule", seed);
    let mut r = rng(seed);
    for _ in 0..count {
        let n = r.gen_range(2..=max_n.max(2));
        let extra = r.gen_range(0..=2 * n);
        let mut ws = DistinctWeights::new(2, 1).allow_repeats();
        let g: WeightedGraph<Rational> = gen::random_connected_graph(&mut r, n, extra, &mut ws);
        report.instances += 1;
        if engine_divergence(&g, heap, false).is_some() {
            record_graph_failure(&mut report, &g, |h| engine_divergence(h, heap, false));
            break;
        }
    }
    report.detail = format!("{} tie-heavy graphs", report.instances);
    report
}

fn path_divergence(g: &WeightedGraph<Rational>, workers: usize) -> Option<(Option<usize>, String)> {
    let oracle = run_greedy(g);
    match run_path_hac_with(g, PathConfig { workers }) {
        Err(e) => Some((None, format!("path engine error: {e}"))),
        Ok((d, _)) if d != oracle => Some((first_divergence(&d, &oracle), "path engine differs from oracle".into())),
        Ok((d, _)) => monotone_failure(&d).map(|m| (None, m)),
    }
}

/// Shrinks a failing path by trimming vertices from either end.
fn minimize_path(
    g: &WeightedGraph<Rational>,
    fails: impl Fn(&WeightedGraph<Rational>) -> bool,
) -> WeightedGraph<Rational> {
    let order = g.path_order().expect("input is a path");
    let weight = |i: usize| {
        let (u, v) = (order[i].min(order[i + 1]), order[i].max(order[i + 1]));
        g.edges().iter().find(|e| (e.u, e.v) == (u, v)).expect("path edge").weight.clone()
    };
    let window = |lo: usize, hi: usize| {
        let sizes = order[lo..=hi].iter().map(|&v| g.sizes()[v]).collect();
        WeightedGraph::with_sizes(sizes, (lo..hi).map(|i| (i - lo, i - lo + 1, weight(i)))).expect("window is a path")
    };
    let (mut lo, mut hi) = (0, order.len() - 1);
    loop {
        if hi - lo >= 2 && fails(&window(lo + 1, hi)) {
            lo += 1;
        } else if hi - lo >= 2 && fails(&window(lo, hi - 1)) {
            hi -= 1;
        } else {
            return window(lo, hi);
        }
    }
}

/// Path algorithm equals the oracle on random distinct-weight paths with
/// aspect ratio at most `n^3`, and respects the phase and subchain bounds.
pub fn check_path_equivalence(seed: u64, count: usize, sizes: &[usize], workers: usize) -> CheckReport {
    let mut report = CheckReport::new("path", "path equivalence", seed);
    let mut r = rng(seed);
    let mut max_phases = 0;
    for i in 0..count {
        let n = sizes[i % sizes.len()];
        let g: WeightedGraph<Rational> = gen::random_poly_path(&mut r, n);
        report.instances += 1;
        if path_divergence(&g, workers).is_some() {
            let small = minimize_path(&g, |h| path_divergence(h, workers).is_some());
            let (step, message) = path_divergence(&small, workers).expect("still fails");
            report.fail(Counterexample { input: small.to_text(), step, message });
            break;
        }
        let (_, stats) = run_path_hac_with(&g, PathConfig { workers }).expect("checked above");
        let aspect = g.aspect_ratio().map(|a| a.to_f64()).unwrap_or(1.0);
        let total = g.total_size();
        let bounds = [
            (stats.phases, PathStats::phase_bound(total, aspect), "phases"),
            (stats.max_arm_subchain, PathStats::arm_subchain_bound(total), "arm subchain length"),
            (stats.max_planned_segment, PathStats::planned_segment_bound(total), "planned segment length"),
        ];
        if let Some((got, bound, what)) = bounds.iter().find(|(got, bound, _)| got > bound) {
            report.fail(Counterexample {
                input: g.to_text(),
                step: None,
                message: format!("{what} {got} exceeds {bound}"),
            });
            break;
        }
        max_phases = max_phases.max(stats.phases);
    }
    report.detail = format!("{} paths, sizes {:?}, max phases {max_phases}", report.instances, sizes);
    report
}

/// Output is byte-identical for 1, 2 and 8 workers.
pub fn check_path_determinism(seed: u64, count: usize, n: usize) -> CheckReport {
    let mut report = CheckReport::new("path", "worker determinism", seed);
    let mut r = rng(seed);
    for _ in 0..count {
        let g: WeightedGraph<Rational> = gen::random_poly_path(&mut r, n);
        report.instances += 1;
        let outputs: Vec<String> = [1, 2, 8]
            .iter()
            .map(|&w| {
                run_path_hac_with(&g, PathConfig { workers: w }).map_or_else(|e| e.to_string(), |(d, _)| d.to_jsonl())
            })
            .collect();
        if outputs.iter().any(|o| *o != outputs[0]) {
            report.fail(Counterexample {
                input: g.to_text(),
                step: None,
                message: "outputs differ across 1/2/8 workers".into(),
            });
            break;
        }
    }
    report.detail = format!("{} paths of {n} vertices", report.instances);
    report
}

/// All simple graphs on `t` labelled vertices.
pub fn all_graphs(t: usize) -> Vec<SimpleGraph> {
    let pairs: Vec<(usize, usize)> = (0..t).flat_map(|u| (u + 1..t).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p);
            SimpleGraph::new(t, edges).expect("valid pairs")
        })
        .collect()
}

fn permutations(t: usize) -> Vec<Vec<usize>> {
    if t == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(t - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, t - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of graphs on `t` vertices.
pub fn isomorphism_classes(t: usize) -> Vec<SimpleGraph> {
    let perms = permutations(t);
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for g in all_graphs(t) {
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> =
                    g.edges.iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
                e.sort_unstable();
                e
            })
            .min()
            .expect("at least one permutation");
        if seen.insert(canon) {
            reps.push(g);
        }
    }
    reps
}

fn triangle_failure(g: &SimpleGraph) -> Option<String> {
    let inst = match build_triangle_instance(g) {
        Ok(inst) => inst,
        Err(e) => return Some(e.to_string()),
    };
    let t = g.t;
    if (inst.gadget.n(), inst.gadget.m()) != (t + t * t, t * t + g.edges.len()) {
        return Some(format!("gadget has {} vertices and {} edges", inst.gadget.n(), inst.gadget.m()));
    }
    let (d, _) = run_heap_based_with(&inst.gadget, HeapConfig::default());
    if let Some(m) = monotone_failure(&d) {
        return Some(m);
    }
    if let Err(step) = audit_round_order(&inst, &d) {
        return Some(format!("leaf rounds out of order at step {}", step + 1));
    }
    let (hac, brute) = (decode_triangle(&inst, &d), has_triangle(g));
    (hac != brute).then(|| format!("HAC detection says {hac}, brute force says {brute}"))
}

fn check_triangles(report: &mut CheckReport, graphs: impl IntoIterator<Item = SimpleGraph>) {
    for g in graphs {
        report.instances += 1;
        if let Some(message) = triangle_failure(&g) {
            report.fail(Counterexample { input: g.to_text(), step: None, message });
            return;
        }
    }
}

/// HAC-based triangle detection equals brute force on every graph with
/// `3..=max_t` vertices, or on one graph per isomorphism class.
pub fn check_triangle_exhaustive(max_t: usize, classes_only: bool) -> CheckReport {
    let what = if classes_only { "isomorphism classes" } else { "labelled graphs" };
    let mut report = CheckReport::new("reductions", format!("triangle exhaustive ({what})"), 0);
    for t in 3..=max_t {
        let graphs = if classes_only { isomorphism_classes(t) } else { all_graphs(t) };
        check_triangles(&mut report, graphs);
    }
    report.detail = format!("{} {what} on 3..={max_t} vertices", report.instances);
    report
}

pub fn random_simple_graph(r: &mut GenRng, t: usize) -> SimpleGraph {
    let density: f64 = r.gen_range(0.1..0.9);
    let edges: Vec<(usize, usize)> =
        (0..t).flat_map(|u| (u + 1..t).map(move |v| (u, v))).filter(|_| r.gen_bool(density)).collect();
    SimpleGraph::new(t, edges).expect("valid pairs")
}

pub fn check_triangle_random(seed: u64, count: usize, max_t: usize) -> CheckReport {
    let mut report = CheckReport::new("reductions", "triangle random", seed);
    let mut r = rng(seed);
    let graphs: Vec<SimpleGraph> = (0..count)
        .map(|_| {
            let t = r.gen_range(3..=max_t.max(3));
            random_simple_graph(&mut r, t)
        })
        .collect();
    check_triangles(&mut report, graphs);
    report.detail = format!("{} random graphs, t <= {}", report.instances, max_t.max(3));
    report
}

pub fn random_lfm_instance(r: &mut GenRng, n: usize) -> LfmInstance {
    let density: f64 = r.gen_range(0.15..0.8);
    let mut edges: Vec<(usize, usize)> =
        (0..n).flat_map(|l| (0..n).map(move |rr| (l, rr))).filter(|_| r.gen_bool(density)).collect();
    if edges.is_empty() {
        edges.push((r.gen_range(0..n), r.gen_range(0..n)));
    }
    let query = edges[0];
    LfmInstance::new(n, edges, query).expect("query is an edge")
}

/// Greedy LFM matching equals decoding the simulated Adaptive Minimum
/// instance, for every edge as query.
pub fn check_lfm_chain(seed: u64, count: usize, max_n: usize) -> CheckReport {
    let mut report = CheckReport::new("reductions", "LFM chain", seed);
    let mut r = rng(seed);
    let mut queries = 0;
    'outer: for _ in 0..count {
        let n = r.gen_range(1..=max_n.max(1));
        let inst = random_lfm_instance(&mut r, n);
        report.instances += 1;
        for &e in &inst.edges {
            let q = inst.with_query(e).expect("edge of the instance");
            queries += 1;
            let greedy = greedy_lfm_matching(&q).query_matched;
            let am = reduce_lfm_to_adaptive_min(&q);
            let decoded = decode_lfm(&q, *simulate_adaptive_minimum(&am).last().expect("x >= 0"));
            if greedy != decoded {
                report.fail(Counterexample {
                    input: q.to_text(),
                    step: None,
                    message: format!("greedy says {greedy}, reduction says {decoded}"),
                });
                break 'outer;
            }
        }
    }
    report.detail = format!("{} instances, {queries} queries, n <= {}", report.instances, max_n.max(1));
    report
}

pub fn random_adaptive_min(r: &mut GenRng, n: usize) -> AdaptiveMinInstance {
    let rows = (0..n)
        .map(|_| {
            let mut row: Vec<usize> = (0..n).collect();
            row.shuffle(r);
            row
        })
        .collect();
    AdaptiveMinInstance::new(rows, n - 1).expect("rows are permutations")
}

/// All `n x n` instances whose rows are permutations.
pub fn all_adaptive_min(n: usize) -> Vec<AdaptiveMinInstance> {
    let perms = permutations(n);
    let count = perms.len().pow(n as u32);
    (0..count)
        .map(|mut code| {
            let rows = (0..n)
                .map(|_| {
                    let p = perms[code % perms.len()].clone();
                    code /= perms.len();
                    p
                })
                .collect();
            AdaptiveMinInstance::new(rows, n - 1).expect("rows are permutations")
        })
        .collect()
}

/// Runs HAC once on the tree gadget and checks the decoded `k_x` for every
/// `x` plus the phase audit.
fn tree_failure(inst: &AdaptiveMinInstance, variant: TreeVariant) -> Option<String> {
    let tree = match build_adaptive_min_tree(inst, variant) {
        Ok(t) => t,
        Err(e) => return Some(e.to_string()),
    };
    let d = run_tree_hac(&tree);
    if let Some(m) = monotone_failure(&d) {
        return Some(m);
    }
    if let Err(e) = audit_tree_phases(&tree, &d) {
        return Some(format!("phase audit: {e}"));
    }
    let order = match decode_root_order(&tree, &d) {
        Ok(o) => o,
        Err(e) => return Some(e.to_string()),
    };
    let direct = simulate_adaptive_minimum(&inst.with_target(inst.n() - 1).expect("n >= 1"));
    (order != direct).then(|| format!("decoded order {order:?}, direct simulation {direct:?}"))
}

pub fn check_tree_reduction(
    check: impl Into<String>,
    seed: u64,
    instances: Vec<AdaptiveMinInstance>,
    variant: TreeVariant,
) -> CheckReport {
    let mut report = CheckReport::new("reductions", check, seed);
    let failures: Vec<Option<String>> = instances.par_iter().map(|inst| tree_failure(inst, variant)).collect();
    report.instances = instances.len();
    if let Some((inst, message)) = instances.iter().zip(failures).find_map(|(i, f)| f.map(|m| (i, m))) {
        report.fail(Counterexample { input: inst.to_text(), step: None, message });
    }
    report.detail = format!("{} instances, {variant:?} variant, every x decoded", report.instances);
    report
}

/// Greedy LFM matching equals the decode through Adaptive Minimum and an
/// exact HAC run on the tree gadget, for every edge as query.
pub fn check_full_stack(seed: u64, count: usize, max_n: usize, variant: TreeVariant) -> CheckReport {
    let mut report = CheckReport::new("reductions", format!("full stack ({variant:?})"), seed);
    let mut r = rng(seed);
    let mut queries = 0;
    'outer: for _ in 0..count {
        let n = r.gen_range(1..=max_n.max(1));
        let inst = random_lfm_instance(&mut r, n);
        report.instances += 1;
        let am = reduce_lfm_to_adaptive_min(&inst);
        let order =
            build_adaptive_min_tree(&am, variant).and_then(|tree| decode_root_order(&tree, &run_tree_hac(&tree)));
        let order = match order {
            Ok(o) => o,
            Err(e) => {
                report.fail(Counterexample { input: inst.to_text(), step: None, message: e.to_string() });
                break;
            }
        };
        for &e in &inst.edges {
            let q = inst.with_query(e).expect("edge of the instance");
            queries += 1;
            let greedy = greedy_lfm_matching(&q).query_matched;
            let decoded = decode_lfm(&q, order[q.query.0]);
            if greedy != decoded {
                report.fail(Counterexample {
                    input: q.to_text(),
                    step: None,
                    message: format!("greedy says {greedy}, HAC decode says {decoded}"),
                });
                break 'outer;
            }
        }
    }
    report.detail = format!("{} instances, {queries} queries, n <= {}", report.instances, max_n.max(1));
    report
}

pub fn verify_engines(cfg: &VerifyConfig) -> Vec<CheckReport> {
    vec![
        check_engine_equivalence(cfg.seed, cfg.instances, cfg.max_n, cfg.heap),
        check_tie_rule(cfg.seed.wrapping_add(1), cfg.instances, cfg.max_n, cfg.heap),
    ]
}

pub fn verify_path(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let sizes: Vec<usize> =
        std::iter::successors(Some(2usize), |n| Some(n * 2)).take_while(|&n| n <= cfg.max_n.max(2)).collect();
    vec![
        check_path_equivalence(cfg.seed, cfg.instances, &sizes, 2),
        check_path_determinism(cfg.seed.wrapping_add(1), (cfg.instances / 10).max(1), cfg.max_n.max(2)),
    ]
}

pub fn verify_reductions(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let mut r = rng(cfg.seed.wrapping_add(5));
    let sized: Vec<AdaptiveMinInstance> = (0..cfg.instances).map(|i| random_adaptive_min(&mut r, 3 + i % 2)).collect();
    let mut expanded = all_adaptive_min(2);
    expanded.extend((0..cfg.expanded_instances).map(|_| random_adaptive_min(&mut r, 3)));
    vec![
        check_triangle_exhaustive(5, false),
        check_triangle_random(cfg.seed, cfg.instances, 8),
        check_lfm_chain(cfg.seed.wrapping_add(2), cfg.instances, 8),
        check_tree_reduction("tree reduction (all 2x2)", cfg.seed, all_adaptive_min(2), TreeVariant::Sized),
        check_tree_reduction("tree reduction (random 3x3/4x4)", cfg.seed.wrapping_add(5), sized, TreeVariant::Sized),
        check_tree_reduction(
            "tree reduction (unit-expanded)",
            cfg.seed.wrapping_add(5),
            expanded,
            TreeVariant::UnitExpanded,
        ),
        check_full_stack(cfg.seed.wrapping_add(3), (cfg.instances / 10).max(1), 5, TreeVariant::Sized),
        check_full_stack(cfg.seed.wrapping_add(4), 5, 1, TreeVariant::UnitExpanded),
    ]
}

pub fn verify_all(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let mut out = verify_engines(cfg);
    out.extend(verify_path(cfg));
    out.extend(verify_reductions(cfg));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_vertex_graphs_have_34_classes() {
        assert_eq!(isomorphism_classes(5).len(), 34);
        assert_eq!(isomorphism_classes(4).len(), 11);
        assert_eq!(all_graphs(4).len(), 64);
    }

    #[test]
    fn all_two_by_two_instances() {
        assert_eq!(all_adaptive_min(2).len(), 4);
        assert_eq!(all_adaptive_min(3).len(), 216);
    }

    #[test]
    fn engines_suite_passes() {
        let cfg = VerifyConfig { instances: 30, ..VerifyConfig::default() };
        assert!(all_passed(&verify_engines(&cfg)));
    }

    #[test]
    fn reversed_ties_are_caught_and_minimized() {
        let heap = HeapConfig { reverse_ties: true, ..HeapConfig::default() };
        let report = check_tie_rule(7, 100, 16, heap);
        assert!(!report.passed);
        let cx = report.counterexample.unwrap();
        assert!(cx.step.is_some());
        let g: WeightedGraph<Rational> = WeightedGraph::parse(&cx.input).unwrap();
        assert!(g.m() <= 4, "minimized to {} edges", g.m());
    }

    #[test]
    fn path_suite_passes() {
        let cfg = VerifyConfig { instances: 20, max_n: 64, ..VerifyConfig::default() };
        assert!(all_passed(&verify_path(&cfg)));
    }

    #[test]
    fn path_minimizer_keeps_a_window() {
        let g: WeightedGraph<Rational> = gen::path_graph((1..=8).map(Rational::from_int).collect());
        let small = minimize_path(&g, |h| h.n() >= 3);
        assert_eq!(small.n(), 3);
    }
}
