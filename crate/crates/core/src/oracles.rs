//! Brute-force deciders used as ground truth in tests.
//!
//! None of these reuse the solver code paths: they step the raw automata
//! letter by letter or enumerate schedules explicitly.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use crate::automata::{Nfa, Smcp, StateId, SymbolId};
use crate::error::{Error, Result};
use crate::interface::InterfaceSeq;
use crate::sched::{NodeId, SchedGraph, UndirectedGraph};

/// Caps for the oracles. Exceeding any of them is a resource error.
#[derive(Debug, Clone)]
pub struct OracleLimits {
    /// Configurations explored by a single search.
    pub max_configs: usize,
    /// Upper bound on `k · log2 t` for the shuffle oracle.
    pub sm_bits: f64,
    /// Node limit for process and decomposition enumeration.
    pub max_graph_nodes: usize,
    /// Owner sequences enumerated by the schedule oracles.
    pub max_schedules: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_configs: 5_000_000,
            sm_bits: 40.0,
            max_graph_nodes: 7,
            max_schedules: 2_000_000,
        }
    }
}

const IDLE: u32 = u32::MAX;

/// Least number of context switches of a word in `L(S)`, or `None` if the
/// language is empty. 0-1 BFS over (memory, thread states, running thread).
pub fn oracle_min_switches(s: &Smcp, limits: &OracleLimits) -> Result<Option<usize>> {
    let m = s.memory();
    let t = s.num_threads();
    type Config = (StateId, Vec<u32>, u32);
    let start: Config = (m.initial(), vec![IDLE; t], IDLE);
    let done = |c: &Config| {
        c.0 == m.final_state()
            && c.1
                .iter()
                .zip(s.threads())
                .all(|(&p, a)| p == IDLE || p as usize == a.final_state())
    };
    let mut dist: HashMap<Config, usize> = HashMap::new();
    let mut deque = VecDeque::from([(start.clone(), 0usize)]);
    dist.insert(start, 0);
    while let Some((c, d)) = deque.pop_front() {
        if dist.get(&c).is_some_and(|&best| best < d) {
            continue;
        }
        if done(&c) {
            return Ok(Some(d));
        }
        for (i, a) in s.threads().iter().enumerate() {
            let p = if c.1[i] == IDLE {
                a.initial()
            } else {
                c.1[i] as usize
            };
            let cost = usize::from(c.2 != IDLE && c.2 as usize != i);
            for &(sym, p2) in a.successors(p) {
                for &(msym, q2) in m.successors(c.0) {
                    if msym != sym {
                        continue;
                    }
                    let mut ts = c.1.clone();
                    ts[i] = p2 as u32;
                    let next: Config = (q2, ts, i as u32);
                    let nd = d + cost;
                    if dist.get(&next).is_none_or(|&old| nd < old) {
                        dist.insert(next.clone(), nd);
                        if dist.len() > limits.max_configs {
                            return Err(Error::resource(
                                "oracle configurations",
                                limits.max_configs as u64,
                            ));
                        }
                        if cost == 0 {
                            deque.push_front((next, nd));
                        } else {
                            deque.push_back((next, nd));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Is there a word in `L(S)` with at most `cs` context switches?
pub fn oracle_bcs(s: &Smcp, cs: usize) -> Result<bool> {
    oracle_bcs_with(s, cs, &OracleLimits::default())
}

pub fn oracle_bcs_with(s: &Smcp, cs: usize, limits: &OracleLimits) -> Result<bool> {
    Ok(oracle_min_switches(s, limits)?.is_some_and(|d| d <= cs))
}

/// Shuffle membership by trying every assignment of positions to automata,
/// memoized on the per-automaton state sets.
pub fn oracle_sm(bs: &[Nfa], w: &[SymbolId]) -> Result<bool> {
    oracle_sm_with(bs, w, &OracleLimits::default())
}

pub fn oracle_sm_with(bs: &[Nfa], w: &[SymbolId], limits: &OracleLimits) -> Result<bool> {
    if bs.is_empty() {
        return Err(Error::input("need at least one automaton"));
    }
    for b in bs {
        if let Some(&x) = w.iter().find(|&&x| x >= b.num_symbols()) {
            return Err(Error::input(format!("symbol {x} is not declared")));
        }
    }
    let bits = w.len() as f64 * (bs.len() as f64).log2();
    if bits > limits.sm_bits {
        return Err(Error::resource(
            "shuffle oracle search bits",
            limits.sm_bits as u64,
        ));
    }
    // None: automaton unused so far
    type Sets = Vec<Option<Vec<bool>>>;
    fn go(
        bs: &[Nfa],
        w: &[SymbolId],
        pos: usize,
        sets: &mut Sets,
        memo: &mut HashSet<(usize, Sets)>,
    ) -> bool {
        if pos == w.len() {
            return sets
                .iter()
                .zip(bs)
                .all(|(s, b)| s.as_ref().is_none_or(|v| v[b.final_state()]));
        }
        if !memo.insert((pos, sets.clone())) {
            return false;
        }
        for (i, b) in bs.iter().enumerate() {
            let cur = match &sets[i] {
                Some(v) => v.clone(),
                None => {
                    let mut v = vec![false; b.num_states()];
                    v[b.initial()] = true;
                    v
                }
            };
            let mut next = vec![false; b.num_states()];
            for (p, _) in cur.iter().enumerate().filter(|x| *x.1) {
                for &(sym, p2) in b.successors(p) {
                    if sym == w[pos] {
                        next[p2] = true;
                    }
                }
            }
            if !next.iter().any(|&x| x) {
                continue;
            }
            let saved = std::mem::replace(&mut sets[i], Some(next));
            if go(bs, w, pos + 1, sets, memo) {
                return true;
            }
            sets[i] = saved;
        }
        false
    }
    let mut sets: Sets = vec![None; bs.len()];
    Ok(go(bs, w, 0, &mut sets, &mut HashSet::new()))
}

fn degree_of(w: &[Vec<u64>], live: &[bool]) -> u64 {
    let n = w.len();
    (0..n)
        .filter(|&i| live[i])
        .map(|i| {
            let out: u64 = (0..n).filter(|&j| live[j]).map(|j| w[i][j]).sum();
            let inn: u64 = (0..n).filter(|&j| live[j]).map(|j| w[j][i]).sum();
            out.max(inn)
        })
        .max()
        .unwrap_or(0)
}

/// Scheduling dimension by enumerating every contraction process on a
/// weight matrix.
pub fn oracle_sdim(g: &SchedGraph) -> Result<u64> {
    oracle_sdim_with(g, &OracleLimits::default())
}

pub fn oracle_sdim_with(g: &SchedGraph, limits: &OracleLimits) -> Result<u64> {
    let n = g.len();
    if n == 0 {
        return Err(Error::input("graph has no nodes"));
    }
    if n > limits.max_graph_nodes {
        return Err(Error::resource(
            "oracle graph nodes",
            limits.max_graph_nodes as u64,
        ));
    }
    let ids: Vec<NodeId> = g.nodes().iter().copied().collect();
    let w: Vec<Vec<u64>> = ids
        .iter()
        .map(|&u| ids.iter().map(|&v| g.weight(u, v)).collect())
        .collect();
    fn go(w: &mut Vec<Vec<u64>>, live: &mut Vec<bool>) -> u64 {
        let here = degree_of(w, live);
        let alive: Vec<usize> = (0..w.len()).filter(|&i| live[i]).collect();
        if alive.len() <= 1 {
            return here;
        }
        let mut best = u64::MAX;
        for x in 0..alive.len() {
            for y in x + 1..alive.len() {
                let (a, b) = (alive[x], alive[y]);
                // merge b into a
                let saved_w = w.clone();
                for k in 0..w.len() {
                    if k != a && k != b {
                        w[a][k] += w[b][k];
                        w[k][a] += w[k][b];
                    }
                }
                w[a][b] = 0;
                w[b][a] = 0;
                live[b] = false;
                best = best.min(go(w, live));
                live[b] = true;
                *w = saved_w;
            }
        }
        here.max(best)
    }
    let mut w = w;
    let mut live = vec![true; n];
    Ok(go(&mut w, &mut live))
}

/// Carving width by enumerating every rooted binary merge tree.
pub fn oracle_carving_width(g: &UndirectedGraph) -> Result<u64> {
    oracle_carving_width_with(g, &OracleLimits::default())
}

pub fn oracle_carving_width_with(g: &UndirectedGraph, limits: &OracleLimits) -> Result<u64> {
    let n = g.nodes().len();
    if n == 0 {
        return Err(Error::input("graph has no nodes"));
    }
    if n > limits.max_graph_nodes {
        return Err(Error::resource(
            "oracle graph nodes",
            limits.max_graph_nodes as u64,
        ));
    }
    let ids: Vec<NodeId> = g.nodes().iter().copied().collect();
    let cut = |mask: u32| -> u64 {
        let mut total = 0;
        for i in 0..n {
            for j in i + 1..n {
                if (mask >> i & 1) != (mask >> j & 1) {
                    total += g.weight(ids[i], ids[j]);
                }
            }
        }
        total
    };
    fn go(clusters: &mut Vec<u32>, cut: &dyn Fn(u32) -> u64) -> u64 {
        if clusters.len() <= 1 {
            return 0;
        }
        let mut best = u64::MAX;
        for x in 0..clusters.len() {
            for y in x + 1..clusters.len() {
                let merged = clusters[x] | clusters[y];
                let mut next: Vec<u32> = clusters
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != x && i != y)
                    .map(|(_, &c)| c)
                    .collect();
                next.push(merged);
                let v = cut(merged).max(go(&mut next, cut));
                best = best.min(v);
            }
        }
        best
    }
    let mut clusters: Vec<u32> = (0..n).map(|i| 1 << i).collect();
    let leaves = clusters.iter().map(|&c| cut(c)).max().unwrap_or(0);
    Ok(leaves.max(go(&mut clusters, &cut)))
}

/// Per thread: `(q, p) -> {(q', p')}` reachable by one or more joint steps,
/// i.e. the effect of one nonempty context.
struct ContextSteps {
    reach: Vec<HashMap<(StateId, StateId), Vec<(StateId, StateId)>>>,
}

impl ContextSteps {
    fn new(s: &Smcp) -> Self {
        let m = s.memory();
        let reach = s
            .threads()
            .iter()
            .map(|a| {
                let mut table = HashMap::new();
                for q in 0..m.num_states() {
                    for p in 0..a.num_states() {
                        let mut seen = BTreeSet::new();
                        let mut stack = vec![(q, p)];
                        while let Some((cq, cp)) = stack.pop() {
                            for &(sym, np) in a.successors(cp) {
                                for &(msym, nq) in m.successors(cq) {
                                    if msym == sym && seen.insert((nq, np)) {
                                        stack.push((nq, np));
                                    }
                                }
                            }
                        }
                        table.insert((q, p), seen.into_iter().collect());
                    }
                }
                table
            })
            .collect();
        ContextSteps { reach }
    }
}

type Config = (StateId, Vec<u32>);

/// Incremental realizability of owner sequences: `layers[j]` holds the
/// configurations after the first `j` contexts.
struct Realizer<'a> {
    s: &'a Smcp,
    steps: ContextSteps,
    limit: usize,
}

impl<'a> Realizer<'a> {
    fn new(s: &'a Smcp, limits: &OracleLimits) -> Self {
        Realizer {
            s,
            steps: ContextSteps::new(s),
            limit: limits.max_configs,
        }
    }

    fn start(&self) -> HashSet<Config> {
        HashSet::from([(self.s.memory().initial(), vec![IDLE; self.s.num_threads()])])
    }

    fn extend(&self, configs: &HashSet<Config>, thread: usize) -> Result<HashSet<Config>> {
        let a = &self.s.threads()[thread];
        let mut next = HashSet::new();
        for (q, ts) in configs {
            let p = if ts[thread] == IDLE {
                a.initial()
            } else {
                ts[thread] as usize
            };
            for &(q2, p2) in &self.steps.reach[thread][&(*q, p)] {
                let mut t2 = ts.clone();
                t2[thread] = p2 as u32;
                next.insert((q2, t2));
                if next.len() > self.limit {
                    return Err(Error::resource("oracle configurations", self.limit as u64));
                }
            }
        }
        Ok(next)
    }

    fn accepting(&self, configs: &HashSet<Config>) -> bool {
        let m = self.s.memory();
        configs.iter().any(|(q, ts)| {
            *q == m.final_state()
                && ts
                    .iter()
                    .zip(self.s.threads())
                    .all(|(&p, a)| p == IDLE || p as usize == a.final_state())
        })
    }
}

/// Owner-sequence search shared by the schedule oracles: DFS over owner
/// sequences (1-based thread ids, no adjacent repeats) allowed by `admit`,
/// carrying realizability sets along. `accept` decides complete sequences.
fn search_schedules(
    s: &Smcp,
    limits: &OracleLimits,
    max_len: usize,
    per_thread: usize,
    accept: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<Option<Vec<usize>>> {
    let r = Realizer::new(s, limits);
    let mut counts = vec![0usize; s.num_threads()];
    let mut seq = Vec::new();
    let mut visited = 0usize;
    #[allow(clippy::too_many_arguments)]
    fn go(
        r: &Realizer,
        configs: &HashSet<Config>,
        seq: &mut Vec<usize>,
        counts: &mut Vec<usize>,
        max_len: usize,
        per_thread: usize,
        visited: &mut usize,
        limits: &OracleLimits,
        accept: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        if !seq.is_empty() && r.accepting(configs) && accept(seq)? {
            return Ok(true);
        }
        if seq.len() == max_len {
            return Ok(false);
        }
        for i in 0..r.s.num_threads() {
            if seq.last() == Some(&(i + 1)) || counts[i] == per_thread {
                continue;
            }
            *visited += 1;
            if *visited > limits.max_schedules {
                return Err(Error::resource(
                    "oracle schedules",
                    limits.max_schedules as u64,
                ));
            }
            let next = r.extend(configs, i)?;
            if next.is_empty() {
                continue;
            }
            seq.push(i + 1);
            counts[i] += 1;
            let hit = go(
                r, &next, seq, counts, max_len, per_thread, visited, limits, accept,
            )?;
            if hit {
                return Ok(true);
            }
            counts[i] -= 1;
            seq.pop();
        }
        Ok(false)
    }
    let start = r.start();
    let found = go(
        &r,
        &start,
        &mut seq,
        &mut counts,
        max_len,
        per_thread,
        &mut visited,
        limits,
        accept,
    )?;
    Ok(found.then_some(seq))
}

fn owner_graph(seq: &[usize]) -> SchedGraph {
    let mut arcs: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for w in seq.windows(2) {
        *arcs.entry((w[0], w[1])).or_insert(0) += 1;
    }
    SchedGraph::new(
        seq.iter().copied(),
        arcs.into_iter().map(|((u, v), w)| (u, v, w)),
    )
    .expect("owner sequence graph")
}

fn epsilon_yes(s: &Smcp) -> bool {
    s.memory().initial() == s.memory().final_state()
}

/// Is there a word in `L(S)` whose scheduling graph has scheduling
/// dimension at most `sd`? Returns the owner sequence of a witness; the
/// empty sequence stands for ε.
pub fn oracle_bcsl_sd(s: &Smcp, sd: usize) -> Result<Option<Vec<usize>>> {
    oracle_bcsl_sd_with(s, sd, &OracleLimits::default())
}

pub fn oracle_bcsl_sd_with(
    s: &Smcp,
    sd: usize,
    limits: &OracleLimits,
) -> Result<Option<Vec<usize>>> {
    if epsilon_yes(s) {
        return Ok(Some(Vec::new()));
    }
    // A thread runs at most sd + 1 contexts (sd + 1 only when it opens and
    // closes the word), so at most t * sd + 1 contexts overall.
    let t = s.num_threads();
    let max_len = t * sd + 1;
    search_schedules(s, limits, max_len, sd + 1, &mut |seq| {
        Ok(oracle_sdim_with(&owner_graph(seq), limits)? <= sd as u64)
    })
}

/// Is there a word in `L(S)` whose scheduling graph equals `g`? Enumerates
/// the walks that use every arc of `g` exactly as often as its weight.
pub fn oracle_bcsl_fix(s: &Smcp, g: &SchedGraph) -> Result<bool> {
    oracle_bcsl_fix_with(s, g, &OracleLimits::default())
}

pub fn oracle_bcsl_fix_with(s: &Smcp, g: &SchedGraph, limits: &OracleLimits) -> Result<bool> {
    if let Some(&n) = g.nodes().iter().find(|&&n| n == 0 || n > s.num_threads()) {
        return Err(Error::input(format!(
            "graph node {n} is not a thread of the program"
        )));
    }
    if epsilon_yes(s) {
        return Ok(true);
    }
    if g.is_empty() {
        return Ok(false);
    }
    let total = g.total_weight() as usize;
    let target = g.clone();
    let found = search_schedules(s, limits, total + 1, usize::MAX, &mut |seq| {
        Ok(seq.len() == total + 1 && owner_graph(seq) == target)
    })?;
    Ok(found.is_some())
}

/// Is there a word in `L(S)` in which each thread runs at most `cs`
/// contexts?
pub fn oracle_bcsl_any(s: &Smcp, cs: usize) -> Result<bool> {
    oracle_bcsl_any_with(s, cs, &OracleLimits::default())
}

pub fn oracle_bcsl_any_with(s: &Smcp, cs: usize, limits: &OracleLimits) -> Result<bool> {
    if epsilon_yes(s) {
        return Ok(true);
    }
    let max_len = s.num_threads() * cs;
    Ok(search_schedules(s, limits, max_len, cs, &mut |_| Ok(true))?.is_some())
}

/// Round robin: the owner sequence `1 2 … t` repeated `cs` times, every
/// context nonempty. With one thread the rounds collapse into one context.
pub fn oracle_bcsl_rr(s: &Smcp, cs: usize) -> Result<bool> {
    oracle_bcsl_rr_with(s, cs, &OracleLimits::default())
}

pub fn oracle_bcsl_rr_with(s: &Smcp, cs: usize, limits: &OracleLimits) -> Result<bool> {
    if cs == 0 {
        return Err(Error::input("round robin needs cs ≥ 1"));
    }
    if epsilon_yes(s) {
        return Ok(true);
    }
    let r = Realizer::new(s, limits);
    let mut configs = r.start();
    let rounds = if s.num_threads() == 1 { 1 } else { cs };
    for _ in 0..rounds {
        for i in 0..s.num_threads() {
            configs = r.extend(&configs, i)?;
            if configs.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(r.accepting(&configs))
}

/// Definitional interface membership: is `L(A) ∩ L(M(q_1,q_1'))⋯L(M(q_k,q_k'))`
/// nonempty? Layered search, each layer a joint closure inside one memory
/// segment.
pub fn oracle_interface_membership(m: &Nfa, a: &Nfa, seq: &InterfaceSeq) -> Result<bool> {
    if m.num_symbols() != a.num_symbols() {
        return Err(Error::input("memory and thread alphabets differ"));
    }
    let mut thread_states: BTreeSet<StateId> = BTreeSet::from([a.initial()]);
    for &(q, q2) in seq.pairs() {
        let mut seen: BTreeSet<(StateId, StateId)> =
            thread_states.iter().map(|&p| (q, p)).collect();
        let mut stack: Vec<_> = seen.iter().copied().collect();
        while let Some((cq, cp)) = stack.pop() {
            for &(sym, np) in a.successors(cp) {
                for &(msym, nq) in m.successors(cq) {
                    if msym == sym && seen.insert((nq, np)) {
                        stack.push((nq, np));
                    }
                }
            }
        }
        thread_states = seen
            .into_iter()
            .filter(|&(cq, _)| cq == q2)
            .map(|(_, p)| p)
            .collect();
        if thread_states.is_empty() {
            return Ok(false);
        }
    }
    Ok(thread_states.contains(&a.final_state()))
}
