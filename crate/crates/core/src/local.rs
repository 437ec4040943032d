//! Solvers parameterized by the shape of the schedule rather than the number
//! of context switches.
//!
//! All of them combine per-thread interface sequences bottom-up along a
//! merge tree of threads. A cluster of threads is described by the sequence
//! of its maximal blocks in the global context order, each block summarized
//! to its entry and exit memory state.
//!
//! A cluster that contains both the first and the last context of the word
//! has one block more than its directed boundary. Generalized sequences
//! therefore carry two flags recording whether the cluster holds the first or
//! the last context; flagged clusters are anchored at the front or the back
//! of every interleaving and the length bound grows by one when both flags
//! are set.

use std::collections::{BTreeSet, HashSet};

use crate::automata::{Smcp, StateId};
use crate::error::{Error, Result};
use crate::interface::{interface_automaton_strict, symbol_pair, InterfaceSeq};
use crate::sched::{contract, process_degree, ContractionProcess, NodeId, SchedGraph};

type Pair = (StateId, StateId);

/// Default bound on the number of sequences kept by the local solvers.
pub const DEFAULT_LATTICE_CAP: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy)]
enum Mode {
    /// Summarize any chainable run, keep results of length `≤ max_len`.
    Closure { max_len: usize },
    /// Contract exactly `outs` left→right and `ins` right→left junctions.
    Directed { outs: usize, ins: usize },
}

struct Weave<'a> {
    left: &'a [Pair],
    right: &'a [Pair],
    first: Option<Side>,
    last: Option<Side>,
    mode: Mode,
    out: &'a mut BTreeSet<Vec<Pair>>,
}

impl Weave<'_> {
    fn run(mut self) {
        let mut cur = Vec::new();
        self.step(0, 0, &mut cur, None, 0, 0);
    }

    fn step(
        &mut self,
        il: usize,
        ir: usize,
        cur: &mut Vec<Pair>,
        prev: Option<Side>,
        outs: usize,
        ins: usize,
    ) {
        let (nl, nr) = (self.left.len(), self.right.len());
        if il == nl && ir == nr {
            if let Mode::Directed { outs: o, ins: i } = self.mode {
                if outs != o || ins != i {
                    return;
                }
            }
            self.out.insert(cur.clone());
            return;
        }
        for side in [Side::Left, Side::Right] {
            let (idx, len, seq) = match side {
                Side::Left => (il, nl, self.left),
                Side::Right => (ir, nr, self.right),
            };
            if idx == len {
                continue;
            }
            if prev.is_none() && self.first.is_some_and(|f| f != side) {
                continue;
            }
            // the anchored side must place the very last element
            if let Some(l) = self.last {
                let other_left = match side {
                    Side::Left => nr - ir,
                    Side::Right => nl - il,
                };
                if l == side && idx + 1 == len && other_left > 0 {
                    continue;
                }
                if l != side
                    && (match l {
                        Side::Left => il == nl,
                        Side::Right => ir == nr,
                    })
                {
                    continue;
                }
            }
            let e = seq[idx];
            let (nil, nir) = match side {
                Side::Left => (il + 1, ir),
                Side::Right => (il, ir + 1),
            };
            // contract into the open block
            if let Some(&(start, end)) = cur.last() {
                if end == e.0 {
                    let allowed = match self.mode {
                        Mode::Closure { .. } => Some((outs, ins)),
                        Mode::Directed { outs: o, ins: i } => match (prev, side) {
                            (Some(Side::Left), Side::Right) if outs < o => Some((outs + 1, ins)),
                            (Some(Side::Right), Side::Left) if ins < i => Some((outs, ins + 1)),
                            _ => None,
                        },
                    };
                    if let Some((no, ni)) = allowed {
                        let n = cur.len();
                        cur[n - 1] = (start, e.1);
                        self.step(nil, nir, cur, Some(side), no, ni);
                        cur[n - 1] = (start, end);
                    }
                }
            }
            // open a new block
            if let Mode::Closure { max_len } = self.mode {
                if cur.len() + 1 > max_len {
                    continue;
                }
            }
            cur.push(e);
            self.step(nil, nir, cur, Some(side), outs, ins);
            cur.pop();
        }
    }
}

fn to_set(raw: BTreeSet<Vec<Pair>>) -> BTreeSet<InterfaceSeq> {
    raw.into_iter().map(InterfaceSeq).collect()
}

/// Every sequence obtained by summarizing chainable runs of `rho`, `rho`
/// itself included.
pub fn closure(rho: &InterfaceSeq) -> BTreeSet<InterfaceSeq> {
    let mut out = BTreeSet::new();
    Weave {
        left: &rho.0,
        right: &[],
        first: None,
        last: None,
        mode: Mode::Closure {
            max_len: usize::MAX,
        },
        out: &mut out,
    }
    .run();
    to_set(out)
}

/// Closures of all interleavings of `sigma` and `tau`, restricted to length
/// at most `k`.
pub fn merge(sigma: &InterfaceSeq, tau: &InterfaceSeq, k: usize) -> BTreeSet<InterfaceSeq> {
    let mut out = BTreeSet::new();
    Weave {
        left: &sigma.0,
        right: &tau.0,
        first: None,
        last: None,
        mode: Mode::Closure { max_len: k },
        out: &mut out,
    }
    .run();
    to_set(out)
}

/// Interleavings of `sigma` and `tau` with exactly `i` contracted
/// `sigma`→`tau` junctions and `j` contracted `tau`→`sigma` junctions.
/// Only junctions between elements of different origin are contracted.
pub fn directed_product(
    sigma: &InterfaceSeq,
    tau: &InterfaceSeq,
    i: usize,
    j: usize,
) -> BTreeSet<InterfaceSeq> {
    directed_product_anchored(&sigma.0, &tau.0, i, j, None, None)
}

fn directed_product_anchored(
    sigma: &[Pair],
    tau: &[Pair],
    i: usize,
    j: usize,
    first: Option<Side>,
    last: Option<Side>,
) -> BTreeSet<InterfaceSeq> {
    let mut out = BTreeSet::new();
    if i + j < sigma.len() + tau.len() {
        Weave {
            left: sigma,
            right: tau,
            first,
            last,
            mode: Mode::Directed { outs: i, ins: j },
            out: &mut out,
        }
        .run();
    }
    to_set(out)
}

/// An interface sequence for a cluster of threads. `threads` is a bit set
/// over 0-based thread indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenIfaceSeq {
    pub seq: InterfaceSeq,
    pub threads: u64,
    /// The cluster issues the first context of the word.
    pub holds_first: bool,
    /// The cluster issues the last context of the word.
    pub holds_last: bool,
}

impl GenIfaceSeq {
    pub fn single(seq: InterfaceSeq, thread: usize) -> Self {
        GenIfaceSeq {
            seq,
            threads: 1 << thread,
            holds_first: false,
            holds_last: false,
        }
    }
}

/// Merges two clusters: empty when they share a thread or both claim the
/// same end of the word. Results have length at most `k`, plus one when the
/// merged cluster holds both ends.
pub fn merge_gen(a: &GenIfaceSeq, b: &GenIfaceSeq, k: usize) -> BTreeSet<GenIfaceSeq> {
    if a.threads & b.threads != 0
        || (a.holds_first && b.holds_first)
        || (a.holds_last && b.holds_last)
    {
        return BTreeSet::new();
    }
    let holds_first = a.holds_first || b.holds_first;
    let holds_last = a.holds_last || b.holds_last;
    let side = |x: bool, y: bool| {
        if x {
            Some(Side::Left)
        } else if y {
            Some(Side::Right)
        } else {
            None
        }
    };
    let mut out = BTreeSet::new();
    Weave {
        left: &a.seq.0,
        right: &b.seq.0,
        first: side(a.holds_first, b.holds_first),
        last: side(a.holds_last, b.holds_last),
        mode: Mode::Closure {
            max_len: k + usize::from(holds_first && holds_last),
        },
        out: &mut out,
    }
    .run();
    out.into_iter()
        .map(|seq| GenIfaceSeq {
            seq: InterfaceSeq(seq),
            threads: a.threads | b.threads,
            holds_first,
            holds_last,
        })
        .collect()
}

/// Limits for the local solvers.
#[derive(Debug, Clone)]
pub struct LocalOptions {
    /// Maximum number of sequences held at once.
    pub cap: usize,
}

impl Default for LocalOptions {
    fn default() -> Self {
        LocalOptions {
            cap: DEFAULT_LATTICE_CAP,
        }
    }
}

/// Sequences of length `min_len..=max_len` accepted by the strict interface
/// automaton of a thread.
fn seeds(
    s: &Smcp,
    thread: usize,
    min_len: usize,
    max_len: usize,
    cap: usize,
) -> Result<Vec<InterfaceSeq>> {
    let m = s.memory();
    let nq = m.num_states();
    let b = interface_automaton_strict(m, &s.threads()[thread])?;
    let useful = b.useful_states();
    let mut found = BTreeSet::new();
    if !useful[b.initial()] {
        return Ok(Vec::new());
    }
    // DFS over (state, sequence); duplicates through different paths are
    // removed by the set.
    let mut stack: Vec<(usize, Vec<Pair>)> = vec![(b.initial(), Vec::new())];
    let mut visited: HashSet<(usize, Vec<Pair>)> = HashSet::new();
    while let Some((p, seq)) = stack.pop() {
        if seq.len() >= min_len && p == b.final_state() && !seq.is_empty() {
            found.insert(seq.clone());
            if found.len() > cap {
                return Err(Error::resource("seed sequences", cap as u64));
            }
        }
        if seq.len() == max_len {
            continue;
        }
        for &(sym, p2) in b.successors(p) {
            if !useful[p2] {
                continue;
            }
            let mut next = seq.clone();
            next.push(symbol_pair(sym, nq));
            if visited.insert((p2, next.clone())) {
                if visited.len() > cap {
                    return Err(Error::resource("seed search states", cap as u64));
                }
                stack.push((p2, next));
            }
        }
    }
    Ok(found.into_iter().map(InterfaceSeq).collect())
}

fn epsilon_yes(s: &Smcp) -> bool {
    s.memory().initial() == s.memory().final_state()
}

/// Least fixed point over generalized sequences. `seed_max(first, last)`
/// bounds seed lengths by flags; merged lengths are bounded as in
/// [`merge_gen`].
fn fixed_point(
    s: &Smcp,
    seed_max: impl Fn(bool, bool) -> usize,
    bound: usize,
    opts: &LocalOptions,
) -> Result<bool> {
    if s.num_threads() > 64 {
        return Err(Error::resource("threads in a cluster set", 64));
    }
    let m = s.memory();
    let (qi, qf) = (m.initial(), m.final_state());
    let target_seq = InterfaceSeq(vec![(qi, qf)]);
    let mut all: HashSet<GenIfaceSeq> = HashSet::new();
    let mut frontier: Vec<GenIfaceSeq> = Vec::new();
    let longest = seed_max(true, true).max(seed_max(false, false));
    for i in 0..s.num_threads() {
        for seq in seeds(s, i, 1, longest, opts.cap)? {
            let starts = seq.0[0].0 == qi;
            let ends = seq.0.last().unwrap().1 == qf;
            for f in [false, true] {
                for l in [false, true] {
                    if (f && !starts) || (l && !ends) || seq.len() > seed_max(f, l) {
                        continue;
                    }
                    let g = GenIfaceSeq {
                        seq: seq.clone(),
                        threads: 1 << i,
                        holds_first: f,
                        holds_last: l,
                    };
                    if all.insert(g.clone()) {
                        frontier.push(g);
                    }
                }
            }
        }
    }
    let is_target = |g: &GenIfaceSeq| g.holds_first && g.holds_last && g.seq == target_seq;
    if all.iter().any(is_target) {
        return Ok(true);
    }
    while !frontier.is_empty() {
        let snapshot: Vec<GenIfaceSeq> = all.iter().cloned().collect();
        let mut next = Vec::new();
        for x in &frontier {
            for y in &snapshot {
                for z in merge_gen(x, y, bound) {
                    if is_target(&z) {
                        return Ok(true);
                    }
                    if !all.contains(&z) {
                        all.insert(z.clone());
                        next.push(z);
                        if all.len() > opts.cap {
                            return Err(Error::resource("generalized sequences", opts.cap as u64));
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(false)
}

/// Is there a word of `L(S)` whose scheduling graph has scheduling dimension
/// at most `sd`? `sd = 0` admits exactly the single-context words.
pub fn solve_bcsl_sd(s: &Smcp, sd: usize) -> Result<bool> {
    solve_bcsl_sd_with(s, sd, &LocalOptions::default())
}

pub fn solve_bcsl_sd_with(s: &Smcp, sd: usize, opts: &LocalOptions) -> Result<bool> {
    if epsilon_yes(s) {
        return Ok(true);
    }
    let seed_max = |f: bool, l: bool| sd + usize::from(f && l);
    fixed_point(s, seed_max, sd, opts)
}

/// Is there a word of `L(S)` in which every thread runs at most `cs`
/// contexts?
pub fn solve_bcsl_any(s: &Smcp, cs: usize) -> Result<bool> {
    solve_bcsl_any_with(s, cs, &LocalOptions::default())
}

pub fn solve_bcsl_any_with(s: &Smcp, cs: usize, opts: &LocalOptions) -> Result<bool> {
    if epsilon_yes(s) {
        return Ok(true);
    }
    if cs == 0 {
        return Ok(false);
    }
    // a cluster has at most as many blocks as contexts
    fixed_point(s, |_, _| cs, s.num_threads() * cs, opts)
}

fn check_graph(s: &Smcp, g: &SchedGraph) -> Result<()> {
    if let Some(&n) = g.nodes().iter().find(|&&n| n == 0 || n > s.num_threads()) {
        return Err(Error::input(format!(
            "graph node {n} is not a thread of the program"
        )));
    }
    Ok(())
}

fn fix_designated(
    s: &Smcp,
    g: &SchedGraph,
    p: &ContractionProcess,
    first: NodeId,
    last: NodeId,
    opts: &LocalOptions,
) -> Result<bool> {
    let m = s.memory();
    let (qi, qf) = (m.initial(), m.final_state());
    // per live node: sequences, holds first, holds last
    let mut sets: std::collections::BTreeMap<NodeId, (BTreeSet<InterfaceSeq>, bool, bool)> =
        Default::default();
    for &v in g.nodes() {
        let len = g.out_degree(v) as usize + usize::from(v == last);
        let mut set = BTreeSet::new();
        if len > 0 {
            for seq in seeds(s, v - 1, len, len, opts.cap)? {
                if v == first && seq.0[0].0 != qi {
                    continue;
                }
                if v == last && seq.0.last().unwrap().1 != qf {
                    continue;
                }
                set.insert(seq);
            }
        }
        if set.is_empty() {
            return Ok(false);
        }
        sets.insert(v, (set, v == first, v == last));
    }
    let mut cur = g.clone();
    for &(n1, n2, n) in &p.steps {
        let i = cur.weight(n1, n2) as usize;
        let k = cur.weight(n2, n1) as usize;
        let (a, af, al) = sets.remove(&n1).expect("validated process");
        let (b, bf, bl) = sets.remove(&n2).expect("validated process");
        let anchor = |x: bool, y: bool| {
            if x {
                Some(Side::Left)
            } else if y {
                Some(Side::Right)
            } else {
                None
            }
        };
        let mut merged = BTreeSet::new();
        for sigma in &a {
            for tau in &b {
                merged.extend(directed_product_anchored(
                    &sigma.0,
                    &tau.0,
                    i,
                    k,
                    anchor(af, bf),
                    anchor(al, bl),
                ));
                if merged.len() > opts.cap {
                    return Err(Error::resource("directed product results", opts.cap as u64));
                }
            }
        }
        if merged.is_empty() {
            return Ok(false);
        }
        sets.insert(n, (merged, af || bf, al || bl));
        cur = contract(&cur, n1, n2, n)?;
    }
    let (last_set, _, _) = sets.into_values().next().expect("one node remains");
    Ok(last_set.contains(&InterfaceSeq(vec![(qi, qf)])))
}

/// Is there a word of `L(S)` whose scheduling graph is exactly `g`? Thread
/// `i` of the program is node `i` (1-based). The products follow the process
/// `p`, which fixes the switch counts between merged clusters; for graphs
/// with more than three nodes this constrains cluster totals only, so the
/// answer may accept a word whose graph differs from `g` while agreeing on
/// all those totals.
pub fn solve_bcsl_fix(s: &Smcp, g: &SchedGraph, p: &ContractionProcess) -> Result<bool> {
    solve_bcsl_fix_with(s, g, p, &LocalOptions::default())
}

pub fn solve_bcsl_fix_with(
    s: &Smcp,
    g: &SchedGraph,
    p: &ContractionProcess,
    opts: &LocalOptions,
) -> Result<bool> {
    check_graph(s, g)?;
    process_degree(g, p)?;
    if epsilon_yes(s) {
        return Ok(true);
    }
    if !g.is_connected() {
        return Ok(false);
    }
    let Ok(classes) = g.classify_nodes() else {
        return Ok(false);
    };
    match (classes.initial, classes.final_node) {
        (Some(v0), Some(vf)) => fix_designated(s, g, p, v0, vf, opts),
        _ => {
            for &d in g.nodes() {
                if fix_designated(s, g, p, d, d, opts)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// The round-robin scheduling graph over threads `1..=t` with `cs` rounds,
/// and the chain process merging 1 and 2, then the result with 3, and so on.
pub fn round_robin_graph(t: usize, cs: usize) -> Result<(SchedGraph, ContractionProcess)> {
    if t == 0 || cs == 0 {
        return Err(Error::input("round robin needs t ≥ 1 and cs ≥ 1"));
    }
    let mut arcs: Vec<(NodeId, NodeId, u64)> = (1..t).map(|i| (i, i + 1, cs as u64)).collect();
    if t > 1 {
        arcs.push((t, 1, cs as u64 - 1));
    }
    let g = SchedGraph::new(1..=t, arcs)?;
    let mut steps = Vec::new();
    let mut acc = 1;
    for v in 2..=t {
        let n = t + v - 1;
        steps.push((acc, v, n));
        acc = n;
    }
    Ok((g, ContractionProcess { steps }))
}

/// Round robin with `cs` rounds: threads run in the order `1, 2, …, t`,
/// repeated, each context nonempty, ending with thread `t`.
pub fn solve_bcsl_rr(s: &Smcp, cs: usize) -> Result<bool> {
    solve_bcsl_rr_with(s, cs, &LocalOptions::default())
}

pub fn solve_bcsl_rr_with(s: &Smcp, cs: usize, opts: &LocalOptions) -> Result<bool> {
    let (g, p) = round_robin_graph(s.num_threads(), cs)?;
    solve_bcsl_fix_with(s, &g, &p, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Nfa;

    fn seq(v: &[(usize, usize)]) -> InterfaceSeq {
        InterfaceSeq(v.to_vec())
    }

    #[test]
    fn closure_examples() {
        let c = closure(&seq(&[(0, 1), (1, 2)]));
        assert_eq!(c, BTreeSet::from([seq(&[(0, 1), (1, 2)]), seq(&[(0, 2)])]));
        let c = closure(&seq(&[(0, 1), (2, 3)]));
        assert_eq!(c, BTreeSet::from([seq(&[(0, 1), (2, 3)])]));
    }

    #[test]
    fn merge_examples() {
        let a = seq(&[(0, 1)]);
        let b = seq(&[(1, 2)]);
        assert_eq!(merge(&a, &b, 1), BTreeSet::from([seq(&[(0, 2)])]));
        let two = merge(&a, &b, 2);
        assert!(two.contains(&seq(&[(0, 1), (1, 2)])));
        assert!(two.contains(&seq(&[(1, 2), (0, 1)])));
        let looped = merge(&a, &seq(&[(1, 0)]), 2);
        assert!(looped.contains(&seq(&[(1, 1)])));
        assert!(looped.contains(&seq(&[(0, 0)])));
    }

    #[test]
    fn merge_gen_rules() {
        let a = GenIfaceSeq::single(seq(&[(0, 1)]), 0);
        let b = GenIfaceSeq::single(seq(&[(1, 2)]), 0);
        assert!(merge_gen(&a, &b, 2).is_empty());
        let b = GenIfaceSeq::single(seq(&[(1, 2)]), 1);
        let out = merge_gen(&a, &b, 1);
        assert_eq!(out.len(), 1);
        assert_eq!(out.iter().next().unwrap().threads, 0b11);
    }

    #[test]
    fn anchored_merge_keeps_first_in_front() {
        let mut a = GenIfaceSeq::single(seq(&[(0, 1)]), 0);
        a.holds_first = true;
        let b = GenIfaceSeq::single(seq(&[(2, 0)]), 1);
        let out = merge_gen(&a, &b, 2);
        assert!(out.iter().all(|g| g.seq.0[0] == (0, 1)));
        assert!(out.iter().all(|g| g.holds_first && !g.holds_last));
    }

    #[test]
    fn directed_examples() {
        let a = seq(&[(0, 1)]);
        let b = seq(&[(1, 2)]);
        assert_eq!(
            directed_product(&a, &b, 1, 0),
            BTreeSet::from([seq(&[(0, 2)])])
        );
        assert_eq!(
            directed_product(&a, &b, 0, 0),
            BTreeSet::from([seq(&[(0, 1), (1, 2)]), seq(&[(1, 2), (0, 1)])])
        );
        assert!(directed_product(&a, &b, 0, 1).is_empty());
        // lengths are exact
        let x = seq(&[(0, 1), (2, 3)]);
        let y = seq(&[(1, 2), (3, 0)]);
        for r in directed_product(&x, &y, 2, 1) {
            assert_eq!(r.len(), 1);
        }
        assert!(directed_product(&x, &y, 2, 1).contains(&seq(&[(0, 0)])));
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("a{i}")).collect()
    }

    /// Memory x y x; thread 1 does x…x, thread 2 does y: owners 1 2 1.
    fn one_two_one() -> Smcp {
        let m = Nfa::with_state_count(4, 2, 0, 3, [(0, 0, 1), (1, 1, 2), (2, 0, 3)]).unwrap();
        let a1 = Nfa::with_state_count(3, 2, 0, 2, [(0, 0, 1), (1, 0, 2)]).unwrap();
        let a2 = Nfa::with_state_count(2, 2, 0, 1, [(0, 1, 1)]).unwrap();
        Smcp::new(names(2), m, vec![a1, a2]).unwrap()
    }

    #[test]
    fn sd_needs_the_extra_block_for_both_ends() {
        let s = one_two_one();
        assert!(!solve_bcsl_sd(&s, 0).unwrap());
        assert!(solve_bcsl_sd(&s, 1).unwrap());
    }

    #[test]
    fn sd_single_context() {
        let m = Nfa::with_state_count(2, 1, 0, 1, [(0, 0, 1)]).unwrap();
        let a = Nfa::with_state_count(2, 1, 0, 1, [(0, 0, 1)]).unwrap();
        let s = Smcp::new(names(1), m, vec![a]).unwrap();
        assert!(solve_bcsl_sd(&s, 0).unwrap());
        assert!(solve_bcsl_sd(&s, 1).unwrap());
        assert!(solve_bcsl_any(&s, 1).unwrap());
        assert!(solve_bcsl_rr(&s, 1).unwrap());
        let dead = Nfa::with_state_count(2, 1, 0, 1, []).unwrap();
        let s = Smcp::new(
            names(1),
            dead,
            vec![Nfa::with_state_count(2, 1, 0, 1, [(0, 0, 1)]).unwrap()],
        )
        .unwrap();
        assert!(!solve_bcsl_sd(&s, 2).unwrap());
    }

    #[test]
    fn fix_on_one_two_one() {
        let s = one_two_one();
        let g = SchedGraph::new([1, 2], [(1, 2, 1), (2, 1, 1)]).unwrap();
        let p = ContractionProcess {
            steps: vec![(1, 2, 3)],
        };
        assert!(solve_bcsl_fix(&s, &g, &p).unwrap());
        let g2 = SchedGraph::new([1, 2], [(1, 2, 1)]).unwrap();
        assert!(!solve_bcsl_fix(&s, &g2, &p).unwrap());
        let bad = ContractionProcess {
            steps: vec![(1, 5, 3)],
        };
        assert!(solve_bcsl_fix(&s, &g, &bad).is_err());
    }

    #[test]
    fn any_budget() {
        let s = one_two_one();
        assert!(!solve_bcsl_any(&s, 1).unwrap());
        assert!(solve_bcsl_any(&s, 2).unwrap());
    }

    #[test]
    fn round_robin_shape() {
        let (g, p) = round_robin_graph(3, 2).unwrap();
        assert_eq!(g.weight(1, 2), 2);
        assert_eq!(g.weight(3, 1), 1);
        assert_eq!(p.steps, vec![(1, 2, 4), (4, 3, 5)]);
        assert_eq!(process_degree(&g, &p).unwrap(), 2);
        assert!(round_robin_graph(2, 0).is_err());
    }
}
