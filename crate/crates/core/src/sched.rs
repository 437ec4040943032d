//! Scheduling graphs, contraction processes, scheduling dimension and
//! carving width.
//!
//! A contraction process induces a merge tree over the original nodes. Every
//! live node of an intermediate graph is a cluster of that tree, and its
//! degree is the directed boundary of the cluster, so the degree of a process
//! is the largest boundary over its clusters. Both `sdim_exact` and
//! `carving_width` are subset dynamic programs over clusters.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Default node limit for the exact subset programs.
pub const DEFAULT_NODE_CAP: usize = 16;

/// Directed multigraph with integer arc weights and zero diagonal.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SchedGraph {
    nodes: BTreeSet<NodeId>,
    weights: BTreeMap<(NodeId, NodeId), u64>,
}

/// The nodes with unbalanced degree, if the pattern is admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeClasses {
    /// Outdegree exceeds indegree by one.
    pub initial: Option<NodeId>,
    /// Indegree exceeds outdegree by one.
    pub final_node: Option<NodeId>,
}

impl SchedGraph {
    /// Builds a graph; repeated arcs add up and zero weights are dropped.
    pub fn new(
        nodes: impl IntoIterator<Item = NodeId>,
        arcs: impl IntoIterator<Item = (NodeId, NodeId, u64)>,
    ) -> Result<Self> {
        let nodes: BTreeSet<NodeId> = nodes.into_iter().collect();
        let mut weights = BTreeMap::new();
        for (u, v, w) in arcs {
            if !nodes.contains(&u) || !nodes.contains(&v) {
                return Err(Error::input(format!(
                    "arc {u} -> {v} uses an undeclared node"
                )));
            }
            if w == 0 {
                continue;
            }
            if u == v {
                return Err(Error::input(format!("self-loop on node {u}")));
            }
            *weights.entry((u, v)).or_insert(0) += w;
        }
        Ok(SchedGraph { nodes, weights })
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn weight(&self, u: NodeId, v: NodeId) -> u64 {
        self.weights.get(&(u, v)).copied().unwrap_or(0)
    }

    /// Nonzero arcs `(u, v, w)` in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (NodeId, NodeId, u64)> + '_ {
        self.weights.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    pub fn out_degree(&self, n: NodeId) -> u64 {
        self.arcs().filter(|a| a.0 == n).map(|a| a.2).sum()
    }

    pub fn in_degree(&self, n: NodeId) -> u64 {
        self.arcs().filter(|a| a.1 == n).map(|a| a.2).sum()
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.values().sum()
    }

    /// Smallest id not used by any node.
    pub fn fresh_id(&self) -> NodeId {
        self.nodes.iter().next_back().map_or(1, |&n| n + 1)
    }

    /// Checks the degree pattern of a scheduling graph: at most one node
    /// with one surplus outgoing arc and at most one with one surplus
    /// incoming arc, everything else balanced.
    pub fn classify_nodes(&self) -> Result<NodeClasses> {
        let mut classes = NodeClasses {
            initial: None,
            final_node: None,
        };
        for &n in &self.nodes {
            let (o, i) = (self.out_degree(n), self.in_degree(n));
            if o == i + 1 && classes.initial.is_none() {
                classes.initial = Some(n);
            } else if i == o + 1 && classes.final_node.is_none() {
                classes.final_node = Some(n);
            } else if o != i {
                return Err(Error::input(format!(
                    "node {n} has out-degree {o} and in-degree {i}"
                )));
            }
        }
        if classes.initial.is_some() != classes.final_node.is_some() {
            return Err(Error::input(
                "unbalanced graph needs both an initial and a final node",
            ));
        }
        Ok(classes)
    }

    /// Weakly connected, counting only nodes (every node must be reachable).
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.nodes.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for (a, b, _) in self.arcs() {
                let other = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if seen.insert(other) {
                    stack.push(other);
                }
            }
        }
        seen.len() == self.nodes.len()
    }
}

impl fmt::Display for SchedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self.nodes.iter().map(|n| n.to_string()).collect();
        writeln!(f, "nodes: {}", nodes.join(" "))?;
        for (u, v, w) in self.arcs() {
            writeln!(f, "{u} {v} {w}")?;
        }
        Ok(())
    }
}

/// The scheduling graph of a sequence of context owners.
pub fn scheduling_graph(contexts: &[NodeId]) -> Result<SchedGraph> {
    if let Some(w) = contexts.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::input(format!(
            "adjacent contexts of the same thread {}",
            w[0]
        )));
    }
    SchedGraph::new(
        contexts.iter().copied(),
        contexts.windows(2).map(|w| (w[0], w[1], 1)),
    )
}

pub fn node_degree(g: &SchedGraph, n: NodeId) -> u64 {
    g.out_degree(n).max(g.in_degree(n))
}

pub fn degree(g: &SchedGraph) -> u64 {
    g.nodes
        .iter()
        .map(|&n| node_degree(g, n))
        .max()
        .unwrap_or(0)
}

/// Merges `n1` and `n2` into the fresh node `n`.
pub fn contract(g: &SchedGraph, n1: NodeId, n2: NodeId, n: NodeId) -> Result<SchedGraph> {
    if n1 == n2 {
        return Err(Error::input(format!(
            "cannot contract node {n1} with itself"
        )));
    }
    for x in [n1, n2] {
        if !g.nodes.contains(&x) {
            return Err(Error::input(format!("node {x} is not live")));
        }
    }
    if g.nodes.contains(&n) {
        return Err(Error::input(format!("node {n} is not fresh")));
    }
    let map = |x: NodeId| if x == n1 || x == n2 { n } else { x };
    let nodes = g
        .nodes
        .iter()
        .copied()
        .filter(|&x| x != n1 && x != n2)
        .chain([n]);
    let arcs: Vec<_> = g
        .arcs()
        .map(|(u, v, w)| (map(u), map(v), w))
        .filter(|&(u, v, _)| u != v)
        .collect();
    SchedGraph::new(nodes, arcs)
}

/// Pairwise merges `(n1, n2, n)` that reduce a graph to a single node.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ContractionProcess {
    pub steps: Vec<(NodeId, NodeId, NodeId)>,
}

impl fmt::Display for ContractionProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b, n) in &self.steps {
            writeln!(f, "{a} {b} -> {n}")?;
        }
        Ok(())
    }
}

/// Replays a process and returns the largest node degree over all
/// intermediate graphs (the final single node included, degree 0).
pub fn process_degree(g: &SchedGraph, p: &ContractionProcess) -> Result<u64> {
    if g.is_empty() {
        return Err(Error::input("graph has no nodes"));
    }
    if p.steps.len() + 1 != g.len() {
        return Err(Error::input(format!(
            "process has {} steps, graph needs {}",
            p.steps.len(),
            g.len() - 1
        )));
    }
    let mut used: BTreeSet<NodeId> = g.nodes.clone();
    let mut cur = g.clone();
    let mut best = degree(&cur);
    for &(a, b, n) in &p.steps {
        if !used.insert(n) {
            return Err(Error::input(format!("node {n} is not fresh")));
        }
        cur = contract(&cur, a, b, n)?;
        best = best.max(degree(&cur));
    }
    Ok(best)
}

/// Merge tree clusters of a process, as sets of original nodes keyed by the
/// id that names the cluster.
fn process_clusters(
    leaves: &BTreeSet<NodeId>,
    steps: &[(NodeId, NodeId, NodeId)],
) -> Result<BTreeMap<NodeId, BTreeSet<NodeId>>> {
    let mut live: BTreeMap<NodeId, BTreeSet<NodeId>> =
        leaves.iter().map(|&n| (n, BTreeSet::from([n]))).collect();
    let mut used = leaves.clone();
    for &(a, b, n) in steps {
        if a == b {
            return Err(Error::input(format!("step merges node {a} with itself")));
        }
        if !used.insert(n) {
            return Err(Error::input(format!("node {n} is not fresh")));
        }
        let ca = live
            .remove(&a)
            .ok_or_else(|| Error::input(format!("node {a} is not live")))?;
        let cb = live
            .remove(&b)
            .ok_or_else(|| Error::input(format!("node {b} is not live")))?;
        live.insert(n, ca.union(&cb).copied().collect());
    }
    if live.len() != 1 {
        return Err(Error::input("process does not end in a single node"));
    }
    Ok(live)
}

/// Dense index of a node set, used by the subset programs.
struct Indexed {
    ids: Vec<NodeId>,
    /// `boundary[S]` for every subset mask.
    boundary: Vec<u64>,
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::resource("graph nodes for exact search", cap as u64));
    }
    Ok(())
}

fn indexed(
    nodes: &BTreeSet<NodeId>,
    arc_weight: impl Fn(NodeId, NodeId) -> u64,
    directed: bool,
) -> Indexed {
    let ids: Vec<NodeId> = nodes.iter().copied().collect();
    let n = ids.len();
    let mut w = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                w[i][j] = arc_weight(ids[i], ids[j]);
            }
        }
    }
    let boundary = (0..1usize << n)
        .map(|s| {
            let (mut out, mut inn) = (0u64, 0u64);
            for i in (0..n).filter(|i| s >> i & 1 == 1) {
                for j in (0..n).filter(|j| s >> j & 1 == 0) {
                    out += w[i][j];
                    inn += w[j][i];
                }
            }
            if directed {
                out.max(inn)
            } else {
                out
            }
        })
        .collect();
    Indexed { ids, boundary }
}

/// `best[S]`: least possible maximum boundary over the clusters of a merge
/// tree for `S`. Returns the table and the chosen split per set.
fn merge_tree_dp(ix: &Indexed) -> (Vec<u64>, Vec<usize>) {
    let n = ix.ids.len();
    let size = 1usize << n;
    let mut best = vec![u64::MAX; size];
    let mut split = vec![0usize; size];
    let mut order: Vec<usize> = (1..size).collect();
    order.sort_by_key(|s| s.count_ones());
    for s in order {
        if s.count_ones() == 1 {
            best[s] = ix.boundary[s];
            continue;
        }
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        // halves containing the lowest member
        let mut sub = rest;
        let mut choice = (u64::MAX, 0usize);
        loop {
            let s1 = sub | low;
            if s1 != s {
                let v = best[s1].max(best[s ^ s1]);
                if v < choice.0 {
                    choice = (v, s1);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best[s] = choice.0.max(ix.boundary[s]);
        split[s] = choice.1;
    }
    (best, split)
}

fn emit_merges(
    ix: &Indexed,
    split: &[usize],
    s: usize,
    next_id: &mut NodeId,
    steps: &mut Vec<(NodeId, NodeId, NodeId)>,
) -> NodeId {
    if s.count_ones() == 1 {
        return ix.ids[s.trailing_zeros() as usize];
    }
    let s1 = split[s];
    let a = emit_merges(ix, split, s1, next_id, steps);
    let b = emit_merges(ix, split, s ^ s1, next_id, steps);
    let n = *next_id;
    *next_id += 1;
    steps.push((a, b, n));
    n
}

/// Exact scheduling dimension and an optimal contraction process.
pub fn sdim_exact(g: &SchedGraph) -> Result<(u64, ContractionProcess)> {
    sdim_exact_with_cap(g, DEFAULT_NODE_CAP)
}

pub fn sdim_exact_with_cap(g: &SchedGraph, cap: usize) -> Result<(u64, ContractionProcess)> {
    if g.is_empty() {
        return Err(Error::input("graph has no nodes"));
    }
    check_cap(g.len(), cap)?;
    let ix = indexed(&g.nodes, |u, v| g.weight(u, v), true);
    let (best, split) = merge_tree_dp(&ix);
    let full = (1usize << ix.ids.len()) - 1;
    let mut steps = Vec::new();
    let mut next = g.fresh_id();
    emit_merges(&ix, &split, full, &mut next, &mut steps);
    Ok((best[full], ContractionProcess { steps }))
}

/// Undirected weighted graph, weights stored once per unordered pair.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UndirectedGraph {
    nodes: BTreeSet<NodeId>,
    weights: BTreeMap<(NodeId, NodeId), u64>,
}

impl UndirectedGraph {
    pub fn new(
        nodes: impl IntoIterator<Item = NodeId>,
        edges: impl IntoIterator<Item = (NodeId, NodeId, u64)>,
    ) -> Result<Self> {
        let nodes: BTreeSet<NodeId> = nodes.into_iter().collect();
        let mut weights = BTreeMap::new();
        for (u, v, w) in edges {
            if !nodes.contains(&u) || !nodes.contains(&v) {
                return Err(Error::input(format!(
                    "edge {u} - {v} uses an undeclared node"
                )));
            }
            if w == 0 {
                continue;
            }
            if u == v {
                return Err(Error::input(format!("self-loop on node {u}")));
            }
            *weights.entry((u.min(v), u.max(v))).or_insert(0) += w;
        }
        Ok(UndirectedGraph { nodes, weights })
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn weight(&self, u: NodeId, v: NodeId) -> u64 {
        self.weights
            .get(&(u.min(v), u.max(v)))
            .copied()
            .unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, u64)> + '_ {
        self.weights.iter().map(|(&(u, v), &w)| (u, v, w))
    }
}

/// Symmetrizes by taking the larger of the two arc weights per pair.
pub fn to_undirected(g: &SchedGraph) -> UndirectedGraph {
    let mut weights = BTreeMap::new();
    for (u, v, w) in g.arcs() {
        let key = (u.min(v), u.max(v));
        let e = weights.entry(key).or_insert(0);
        *e = (*e).max(w);
    }
    UndirectedGraph {
        nodes: g.nodes.clone(),
        weights,
    }
}

/// A carving decomposition, stored as a rooted full binary tree whose leaves
/// are the graph nodes. `merges` lists internal tree nodes bottom-up in the
/// same `(child, child, parent)` form as a contraction process. Dropping the
/// root gives the usual unrooted cubic tree with the same edge cuts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CarvingDecomposition {
    pub leaves: BTreeSet<NodeId>,
    pub merges: Vec<(NodeId, NodeId, NodeId)>,
}

impl fmt::Display for CarvingDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let leaves: Vec<String> = self.leaves.iter().map(|n| n.to_string()).collect();
        writeln!(f, "leaves: {}", leaves.join(" "))?;
        for (a, b, n) in &self.merges {
            writeln!(f, "{a} {b} -> {n}")?;
        }
        Ok(())
    }
}

/// Width of a decomposition: the largest cut weight over its tree edges.
pub fn carving_decomposition_width(d: &CarvingDecomposition, g: &UndirectedGraph) -> Result<u64> {
    if d.leaves != g.nodes {
        return Err(Error::input(
            "decomposition leaves do not match graph nodes",
        ));
    }
    let mut live: BTreeMap<NodeId, BTreeSet<NodeId>> =
        d.leaves.iter().map(|&n| (n, BTreeSet::from([n]))).collect();
    let cut = |s: &BTreeSet<NodeId>| -> u64 {
        g.edges()
            .filter(|(u, v, _)| s.contains(u) != s.contains(v))
            .map(|e| e.2)
            .sum()
    };
    let mut width = live.values().map(&cut).max().unwrap_or(0);
    let mut used = d.leaves.clone();
    for &(a, b, n) in &d.merges {
        if a == b || !used.insert(n) {
            return Err(Error::input(format!("malformed merge {a} {b} -> {n}")));
        }
        let ca = live
            .remove(&a)
            .ok_or_else(|| Error::input(format!("tree node {a} is not available")))?;
        let cb = live
            .remove(&b)
            .ok_or_else(|| Error::input(format!("tree node {b} is not available")))?;
        let c: BTreeSet<NodeId> = ca.union(&cb).copied().collect();
        width = width.max(cut(&c));
        live.insert(n, c);
    }
    if live.len() != 1 {
        return Err(Error::input("decomposition is not a single tree"));
    }
    Ok(width)
}

/// Exact carving width and an optimal decomposition.
pub fn carving_width(g: &UndirectedGraph) -> Result<(u64, CarvingDecomposition)> {
    carving_width_with_cap(g, DEFAULT_NODE_CAP)
}

pub fn carving_width_with_cap(
    g: &UndirectedGraph,
    cap: usize,
) -> Result<(u64, CarvingDecomposition)> {
    if g.nodes.is_empty() {
        return Err(Error::input("graph has no nodes"));
    }
    check_cap(g.nodes.len(), cap)?;
    let ix = indexed(&g.nodes, |u, v| g.weight(u, v), false);
    let (best, split) = merge_tree_dp(&ix);
    let full = (1usize << ix.ids.len()) - 1;
    let mut merges = Vec::new();
    let mut next = g.nodes.iter().next_back().map_or(1, |&n| n + 1);
    emit_merges(&ix, &split, full, &mut next, &mut merges);
    Ok((
        best[full],
        CarvingDecomposition {
            leaves: g.nodes.clone(),
            merges,
        },
    ))
}

/// Contracts along the decomposition tree bottom-up. Each live node is a
/// subtree cluster, whose directed boundary is at most its cut weight in the
/// symmetrized graph, so the degree is at most the width.
pub fn carving_to_process(d: &CarvingDecomposition, g: &SchedGraph) -> Result<ContractionProcess> {
    if d.leaves != g.nodes {
        return Err(Error::input(
            "decomposition leaves do not match graph nodes",
        ));
    }
    process_clusters(&d.leaves, &d.merges)?;
    // leaves are g's nodes and merge ids are fresh, so the merges replay as is
    Ok(ContractionProcess {
        steps: d.merges.clone(),
    })
}

/// The merge tree of a process as a decomposition. A cluster's cut weight is
/// at most its in- plus out-boundary, hence at most twice the degree.
pub fn process_to_carving(p: &ContractionProcess, g: &SchedGraph) -> Result<CarvingDecomposition> {
    if g.is_empty() {
        return Err(Error::input("graph has no nodes"));
    }
    if p.steps.len() + 1 != g.len() {
        return Err(Error::input("process length does not match graph size"));
    }
    process_clusters(&g.nodes, &p.steps)?;
    Ok(CarvingDecomposition {
        leaves: g.nodes.clone(),
        merges: p.steps.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_node() -> SchedGraph {
        SchedGraph::new([1, 2], [(1, 2, 3), (2, 1, 2)]).unwrap()
    }

    #[test]
    fn scheduling_graph_counts_switches() {
        let g = scheduling_graph(&[1, 2, 1]).unwrap();
        assert_eq!(g.weight(1, 2), 1);
        assert_eq!(g.weight(2, 1), 1);
        let single = scheduling_graph(&[1]).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(single.total_weight(), 0);
        assert!(scheduling_graph(&[1, 1]).is_err());
    }

    #[test]
    fn round_robin_shape() {
        let cs = 3;
        let owners: Vec<NodeId> = (0..cs).flat_map(|_| 1..=3).collect();
        let g = scheduling_graph(&owners).unwrap();
        assert_eq!(g.weight(1, 2), 3);
        assert_eq!(g.weight(2, 3), 3);
        assert_eq!(g.weight(3, 1), 2);
        assert_eq!(degree(&g), 3);
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(&two_node()), 3);
        assert_eq!(degree(&SchedGraph::new([1], []).unwrap()), 0);
    }

    #[test]
    fn contraction() {
        let g = contract(&two_node(), 1, 2, 3).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.total_weight(), 0);

        let tri = SchedGraph::new([1, 2, 3], [(1, 2, 1), (2, 3, 1), (3, 1, 1)]).unwrap();
        let c = contract(&tri, 1, 2, 4).unwrap();
        assert_eq!(c.weight(4, 3), 1);
        assert_eq!(c.weight(3, 4), 1);
        assert_eq!(c.total_weight(), tri.total_weight() - 1);
        assert!(contract(&tri, 1, 1, 4).is_err());
        assert!(contract(&tri, 1, 9, 4).is_err());
        assert!(contract(&tri, 1, 2, 3).is_err());
    }

    #[test]
    fn sdim_small() {
        assert_eq!(sdim_exact(&SchedGraph::new([5], []).unwrap()).unwrap().0, 0);
        let (d, p) = sdim_exact(&two_node()).unwrap();
        assert_eq!(d, 3);
        assert_eq!(p.steps, vec![(1, 2, 3)]);
        assert_eq!(process_degree(&two_node(), &p).unwrap(), 3);
    }

    #[test]
    fn sdim_process_is_optimal_on_a_cycle() {
        let g =
            SchedGraph::new([1, 2, 3, 4], [(1, 2, 2), (2, 3, 2), (3, 4, 2), (4, 1, 1)]).unwrap();
        let (d, p) = sdim_exact(&g).unwrap();
        assert_eq!(process_degree(&g, &p).unwrap(), d);
        assert!(d >= degree(&g));
    }

    #[test]
    fn node_cap() {
        let g = SchedGraph::new(1..=5, []).unwrap();
        assert!(matches!(
            sdim_exact_with_cap(&g, 4),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn undirected_projection() {
        let u = to_undirected(&two_node());
        assert_eq!(u.weight(1, 2), 3);
        let sym = SchedGraph::new([1, 2], [(1, 2, 2), (2, 1, 2)]).unwrap();
        assert_eq!(to_undirected(&sym).weight(2, 1), 2);
        let zero = SchedGraph::new([1, 2], []).unwrap();
        assert_eq!(to_undirected(&zero).edges().count(), 0);
    }

    #[test]
    fn carving_examples() {
        let (w, d) = carving_width(&to_undirected(&two_node())).unwrap();
        assert_eq!(w, 3);
        assert_eq!(
            carving_decomposition_width(&d, &to_undirected(&two_node())).unwrap(),
            3
        );
        let star = UndirectedGraph::new([1, 2, 3, 4], [(1, 2, 1), (1, 3, 1), (1, 4, 1)]).unwrap();
        assert_eq!(carving_width(&star).unwrap().0, 3);
        let single = UndirectedGraph::new([1], []).unwrap();
        assert_eq!(carving_width(&single).unwrap().0, 0);
    }

    #[test]
    fn conversions_respect_bounds() {
        let g = SchedGraph::new([1, 2, 3], [(1, 2, 2), (2, 3, 1), (3, 1, 2), (2, 1, 1)]).unwrap();
        let u = to_undirected(&g);
        let (w, d) = carving_width(&u).unwrap();
        let p = carving_to_process(&d, &g).unwrap();
        assert!(process_degree(&g, &p).unwrap() <= w);
        let (s, p) = sdim_exact(&g).unwrap();
        let d = process_to_carving(&p, &g).unwrap();
        assert!(carving_decomposition_width(&d, &u).unwrap() <= 2 * s);
        let bad = ContractionProcess {
            steps: vec![(1, 1, 4), (4, 3, 5)],
        };
        assert!(process_to_carving(&bad, &g).is_err());
    }

    #[test]
    fn classify() {
        let path = scheduling_graph(&[1, 2, 3]).unwrap();
        let c = path.classify_nodes().unwrap();
        assert_eq!(c.initial, Some(1));
        assert_eq!(c.final_node, Some(3));
        let cyc = scheduling_graph(&[1, 2, 1]).unwrap();
        assert_eq!(cyc.classify_nodes().unwrap().initial, None);
        let bad = SchedGraph::new([1, 2], [(1, 2, 2)]).unwrap();
        assert!(bad.classify_nodes().is_err());
    }
}
