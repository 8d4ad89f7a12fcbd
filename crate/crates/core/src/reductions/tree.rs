use super::adaptive::{simulate_adaptive_minimum, AdaptiveMinInstance};
use super::expand::{auxiliary_first, expand_unit_sizes, ExpandedGraph};
use crate::dendrogram::Dendrogram;
use crate::engines::run_heap_based;
use crate::error::{usage, HacError, Result};
use crate::graph::WeightedGraph;
use crate::weight::{Rational, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeVariant {
    /// Initial cluster sizes given directly.
    Sized,
    /// Sizes realized by auxiliary unit leaves.
    UnitExpanded,
}

/// The depth-2 tree whose HAC run solves an Adaptive Minimum instance.
///
/// Vertex ids: root `0`, internal node `v_j` is `1 + j`, and leaf `k` of
/// group `i` under `v_j` is `1 + n + (j * n + i) * (n + 1) + k`. In the
/// unit-expanded variant auxiliary leaves follow.
#[derive(Debug, Clone)]
pub struct TreeHacInstance {
    pub source: AdaptiveMinInstance,
    pub variant: TreeVariant,
    /// The sized tree.
    pub tree: WeightedGraph<Rational>,
    pub expanded: Option<ExpandedGraph<Rational>>,
}

impl TreeHacInstance {
    pub fn n(&self) -> usize {
        self.source.n()
    }

    /// The graph handed to the HAC engine.
    pub fn graph(&self) -> &WeightedGraph<Rational> {
        self.expanded.as_ref().map_or(&self.tree, |x| &x.graph)
    }

    pub fn internal(&self, j: usize) -> usize {
        1 + j
    }

    pub fn leaf(&self, j: usize, group: usize, k: usize) -> usize {
        let n = self.n();
        1 + n + (j * n + group) * (n + 1) + k
    }

    /// `(j, group, k)` of a tree leaf.
    pub fn leaf_position(&self, v: usize) -> Option<(usize, usize, usize)> {
        let n = self.n();
        let first = 1 + n;
        (v >= first && v < first + n * n * (n + 1)).then(|| {
            let off = v - first;
            (off / (n * (n + 1)), off / (n + 1) % n, off % (n + 1))
        })
    }

    /// Root size at the start of phase `i`, before absorbed leftovers.
    pub fn r(&self, i: usize) -> u64 {
        let n = self.n() as u64;
        n.pow(8) + i as u64 * n.pow(4)
    }

    /// Size of every remaining internal node at the start of phase `i`.
    pub fn w(&self, i: usize) -> u64 {
        let n = self.n() as u64;
        n.pow(4) + i as u64 * (n + 1)
    }
}

pub fn build_adaptive_min_tree(inst: &AdaptiveMinInstance, variant: TreeVariant) -> Result<TreeHacInstance> {
    build_adaptive_min_tree_with(inst, variant, super::expand::DEFAULT_NODE_BUDGET)
}

pub fn build_adaptive_min_tree_with(
    inst: &AdaptiveMinInstance,
    variant: TreeVariant,
    node_budget: usize,
) -> Result<TreeHacInstance> {
    let n = inst.n();
    if n < 2 {
        return usage(format!("tree gadget needs n >= 2, got {n}"));
    }
    let nn = n as i64;
    let n4 = nn.pow(4);
    let n8 = nn.pow(8);
    let leaves = n * n * (n + 1);
    let mut sizes = vec![1u64; 1 + n + leaves];
    sizes[0] = n8 as u64;
    sizes[1..=n].iter_mut().for_each(|s| *s = n4 as u64);
    let mut edges = Vec::with_capacity(n + leaves);
    for j in 0..n {
        edges.push((0, 1 + j, Rational::from_int(1)));
        for i in 0..n {
            let r_i = n8 + i as i64 * n4;
            let high = Rational::new(1, r_i - 1);
            // The `+ 1` keeps group-0 low edges strictly below the root edges.
            let low = Rational::new(1, r_i + i as i64 * nn.pow(3) + 1);
            for k in 0..=n {
                let leaf = 1 + n + (j * n + i) * (n + 1) + k;
                let w = if k <= inst.rows[i][j] { high.clone() } else { low.clone() };
                edges.push((1 + j, leaf, w));
            }
        }
    }
    let tree = WeightedGraph::with_sizes(sizes, edges)?;
    let expanded = match variant {
        TreeVariant::Sized => None,
        TreeVariant::UnitExpanded => Some(expand_unit_sizes(&tree, &Rational::from_int(nn.pow(9)), node_budget)?),
    };
    Ok(TreeHacInstance { source: inst.clone(), variant, tree, expanded })
}

pub fn run_tree_hac(tree: &TreeHacInstance) -> Dendrogram<Rational> {
    run_heap_based(tree.graph()).0
}

/// Internal nodes in the order they join the root's cluster.
pub fn decode_root_order(tree: &TreeHacInstance, d: &Dendrogram<Rational>) -> Result<Vec<usize>> {
    let mut times = Vec::with_capacity(tree.n());
    for j in 0..tree.n() {
        match d.merge_index(0, tree.internal(j))? {
            Some(t) => times.push((t, j)),
            None => return Err(HacError::Decode(format!("internal node {j} never merges with the root"))),
        }
    }
    times.sort_unstable();
    Ok(times.into_iter().map(|(_, j)| j).collect())
}

/// Solves the source instance through an exact HAC run and checks the answer
/// against direct simulation.
pub fn solve_adaptive_min_via_hac(tree: &TreeHacInstance, x: usize) -> Result<usize> {
    if x >= tree.n() {
        return usage(format!("target index {x} outside 0..{}", tree.n()));
    }
    let d = run_tree_hac(tree);
    let order = decode_root_order(tree, &d)?;
    let direct = simulate_adaptive_minimum(&tree.source.with_target(x)?);
    if order[..=x] != direct[..] {
        return Err(HacError::Decode(format!(
            "root merge order {order:?} disagrees with direct simulation {direct:?}"
        )));
    }
    Ok(order[x])
}

/// Replays `d` and checks the cluster structure at the start of every phase
/// `i`, taken as the moment just before the first group-`i` leaf merges:
/// the root holds `r_i` plus at most `i^2 (n + 1)`, the internal nodes that
/// joined it are exactly `k_0..k_{i-1}`, every other internal node has size `w_i`, and those nodes
/// have absorbed all of groups `< i` and none of groups `>= i`.
/// In the unit-expanded variant the auxiliary merges must come first.
pub fn audit_tree_phases(tree: &TreeHacInstance, d: &Dendrogram<Rational>) -> std::result::Result<(), String> {
    if let Some(x) = &tree.expanded {
        auxiliary_first(x, d).map_err(|step| format!("auxiliary merges interrupted at step {step}"))?;
    }
    let n = tree.n();
    let total = d.n() + d.len();
    let mut parent: Vec<usize> = (0..total).collect();
    let mut size: Vec<u64> = tree.graph().sizes().to_vec();
    size.resize(total, 0);
    let find = |parent: &[usize], mut v: usize| {
        while parent[v] != v {
            v = parent[v];
        }
        v
    };
    let direct = simulate_adaptive_minimum(&tree.source.with_target(n - 1).expect("n >= 1"));
    let mut phase = 0;
    for m in d.merges() {
        let starts = [m.a, m.b].iter().any(|&v| matches!(tree.leaf_position(v), Some((_, g, _)) if g == phase));
        if starts && phase < n {
            check_phase(tree, phase, &direct[..phase], &parent, &size, find)
                .map_err(|e| format!("phase {phase}: {e}"))?;
            phase += 1;
        }
        parent[m.a] = m.parent;
        parent[m.b] = m.parent;
        size[m.parent] = m.size;
    }
    if phase < n {
        return Err(format!("only {phase} of {n} phases started"));
    }
    Ok(())
}

fn check_phase(
    tree: &TreeHacInstance,
    i: usize,
    absorbed: &[usize],
    parent: &[usize],
    size: &[u64],
    find: impl Fn(&[usize], usize) -> usize,
) -> std::result::Result<(), String> {
    let n = tree.n();
    let root = find(parent, 0);
    let root_size = size[root];
    let (r_i, slack) = (tree.r(i), (i * i * (n + 1)) as u64);
    if root_size < r_i || root_size > r_i + slack {
        return Err(format!("root size {root_size} outside [{r_i}, {}]", r_i + slack));
    }
    let remaining: Vec<usize> = (0..n).filter(|&j| find(parent, tree.internal(j)) != root).collect();
    let joined: Vec<usize> = (0..n).filter(|j| !remaining.contains(j)).collect();
    let mut expected = absorbed.to_vec();
    expected.sort_unstable();
    if joined != expected {
        return Err(format!("internal nodes {joined:?} joined the root, expected {expected:?}"));
    }
    for &j in &remaining {
        let c = find(parent, tree.internal(j));
        if size[c] != tree.w(i) {
            return Err(format!("internal node {j} has size {}, expected {}", size[c], tree.w(i)));
        }
        for g in 0..n {
            for k in 0..=n {
                let leaf = tree.leaf(j, g, k);
                let absorbed = find(parent, leaf) == c;
                let untouched = parent[leaf] == leaf;
                if g < i && !absorbed {
                    return Err(format!("leaf {k} of group {g} under internal node {j} not absorbed"));
                }
                if g >= i && !untouched {
                    return Err(format!("leaf {k} of group {g} under internal node {j} already merged"));
                }
            }
        }
    }
    Ok(())
}
