//! Instance families built from classical reductions, with brute-force
//! deciders for the source problems.
//!
//! Every generator is deterministic in its input: state, symbol and thread
//! orders follow the input order.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::automata::{Nfa, Smcp, StateId, SymbolId};
use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge {u}-{v} uses an undeclared vertex"
                )));
            }
            if u == v {
                return Err(Error::input(format!("self-loop on vertex {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(SimpleGraph { n, edges: set })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Smallest relabelled edge list over all vertex permutations.
    fn canonical(&self) -> Vec<(usize, usize)> {
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut best: Option<Vec<(usize, usize)>> = None;
        loop {
            let mut e: Vec<_> = self
                .edges
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (perm[u], perm[v]);
                    (a.min(b), a.max(b))
                })
                .collect();
            e.sort_unstable();
            if best.as_ref().is_none_or(|b| e < *b) {
                best = Some(e);
            }
            if !next_permutation(&mut perm) {
                return best.unwrap_or_default();
            }
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// One representative per isomorphism class of simple graphs on `n`
/// vertices, in a fixed order.
pub fn graphs_up_to_iso(n: usize) -> Vec<SimpleGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let g = SimpleGraph::new(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e),
        )
        .expect("enumerated graph");
        if seen.insert(g.canonical()) {
            out.push(g);
        }
    }
    out
}

/// Subgraph isomorphism by trying every injective vertex map.
pub fn brute_force_sgi(g: &SimpleGraph, h: &SimpleGraph) -> bool {
    fn go(g: &SimpleGraph, h: &SimpleGraph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = map.len();
        if v == g.num_vertices() {
            return true;
        }
        for w in 0..h.num_vertices() {
            if used[w] {
                continue;
            }
            let fits = (0..v).all(|u| !g.has_edge(u, v) || h.has_edge(map[u], w));
            if !fits {
                continue;
            }
            used[w] = true;
            map.push(w);
            if go(g, h, map, used) {
                return true;
            }
            map.pop();
            used[w] = false;
        }
        false
    }
    go(g, h, &mut Vec::new(), &mut vec![false; h.num_vertices()])
}

/// A generated program together with its context-switch budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub smcp: Smcp,
    pub cs: usize,
}

/// Collects named states and transitions.
#[derive(Default)]
struct Builder {
    names: Vec<String>,
    ids: HashMap<String, StateId>,
    trans: Vec<(StateId, SymbolId, StateId)>,
}

impl Builder {
    fn state(&mut self, name: impl Into<String>) -> StateId {
        let name = name.into();
        if let Some(&id) = self.ids.get(&name) {
            return id;
        }
        self.names.push(name.clone());
        self.ids.insert(name, self.names.len() - 1);
        self.names.len() - 1
    }

    fn edge(&mut self, src: StateId, sym: SymbolId, dst: StateId) {
        self.trans.push((src, sym, dst));
    }

    /// Builds with a single final state. With several accepting states a
    /// fresh `fin` state takes a copy of every transition into them.
    fn finish(mut self, symbols: usize, initial: StateId, finals: &[StateId]) -> Result<Nfa> {
        let final_state = match finals {
            [] => return Err(Error::input("automaton has no accepting state")),
            [f] => *f,
            _ => {
                if finals.contains(&initial) {
                    return Err(Error::Internal(
                        "cannot merge an accepting initial state".into(),
                    ));
                }
                let fin = self.state("fin");
                let extra: Vec<_> = self
                    .trans
                    .iter()
                    .filter(|t| finals.contains(&t.2))
                    .map(|&(s, a, _)| (s, a, fin))
                    .collect();
                self.trans.extend(extra);
                fin
            }
        };
        Nfa::new(self.names, symbols, initial, final_state, self.trans)
    }
}

/// Drops states that are not on an initial-to-final path.
fn trimmed(a: &Nfa) -> Result<Nfa> {
    let keep = a.useful_states();
    let mut map = vec![usize::MAX; a.num_states()];
    let mut names = Vec::new();
    for (p, &k) in keep.iter().enumerate() {
        if k || p == a.initial() || p == a.final_state() {
            map[p] = names.len();
            names.push(a.state_name(p).to_string());
        }
    }
    let trans = a
        .transitions()
        .iter()
        .filter(|t| keep[t.0] && keep[t.2])
        .map(|&(s, x, d)| (map[s], x, map[d]));
    Nfa::new(
        names,
        a.num_symbols(),
        map[a.initial()],
        map[a.final_state()],
        trans,
    )
}

/// Subgraph isomorphism as bounded context switching. Letters are pairs
/// (vertex of `g`, vertex of `h`); the memory spells an injective map as
/// blocks `(v_1,w_1)^{d_1} … (v_l,w_l)^{d_l}` with `w_1 ≺ … ≺ w_l` in the
/// vertex order of `h`; one thread per edge of `g` checks that the edge lands
/// on an edge of `h`. The budget is `2·|E(g)|`.
pub fn gen_sgi(g: &SimpleGraph, h: &SimpleGraph) -> Result<Generated> {
    if let Some(v) = (0..g.num_vertices()).find(|&v| g.degree(v) == 0) {
        return Err(Error::input(format!(
            "vertex {} of the pattern graph is isolated",
            v + 1
        )));
    }
    if g.num_vertices() == 0 {
        return Err(Error::input("pattern graph has no vertices"));
    }
    let (ng, nh) = (g.num_vertices(), h.num_vertices());
    let k = g.num_edges();
    let l = ng;
    let sym = |v: usize, w: usize| v * nh + w;
    let alphabet: Vec<String> = (0..ng)
        .flat_map(|v| (0..nh).map(move |w| format!("g{}h{}", v + 1, w + 1)))
        .collect();
    let symbols = alphabet.len();

    // memory: (last letter, blocks so far, length so far), built forward
    let mut mem = Builder::default();
    let init = mem.state("init");
    let mut finals = Vec::new();
    let mut queue = VecDeque::new();
    let name = |v: usize, w: usize, b: usize, n: usize| format!("g{}h{}b{b}n{n}", v + 1, w + 1);
    for v in 0..ng {
        for w in 0..nh {
            let is_new = !mem.ids.contains_key(&name(v, w, 1, 1));
            let id = mem.state(name(v, w, 1, 1));
            mem.edge(init, sym(v, w), id);
            if is_new {
                queue.push_back((v, w, 1usize, 1usize, id));
            }
        }
    }
    while let Some((v, w, b, n, id)) = queue.pop_front() {
        if b == l && n == 2 * k {
            finals.push(id);
        }
        if n == 2 * k {
            continue;
        }
        let mut succ = vec![(v, w, b, n + 1)];
        if b < l {
            for v2 in 0..ng {
                for w2 in w + 1..nh {
                    succ.push((v2, w2, b + 1, n + 1));
                }
            }
        }
        for (v2, w2, b2, n2) in succ {
            let key = name(v2, w2, b2, n2);
            let is_new = !mem.ids.contains_key(&key);
            let id2 = mem.state(key);
            mem.edge(id, sym(v2, w2), id2);
            if is_new {
                queue.push_back((v2, w2, b2, n2, id2));
            }
        }
    }
    let memory = if finals.is_empty() {
        // no injective block layout exists; a memory with an unreachable final
        let dead = mem.state("final");
        mem.finish(symbols, init, &[dead])?
    } else {
        trimmed(&mem.finish(symbols, init, &finals)?)?
    };

    let mut threads = Vec::new();
    for (s, t) in g.edges() {
        let mut a = Builder::default();
        let start = a.state("init");
        let done = a.state("done");
        for (x, y) in h.edges() {
            for (ws, wt) in [(x, y), (y, x)] {
                // the letter with the smaller h-vertex comes first
                let (first, second) = if ws < wt {
                    (sym(s, ws), sym(t, wt))
                } else {
                    (sym(t, wt), sym(s, ws))
                };
                let mid = a.state(format!("after{}", alphabet[first]));
                a.edge(start, first, mid);
                a.edge(mid, second, done);
            }
        }
        threads.push(a.finish(symbols, start, &[done])?);
    }
    Ok(Generated {
        smcp: Smcp::new(alphabet, memory, threads)?,
        cs: 2 * k,
    })
}

/// A shuffle membership instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleInstance {
    pub alphabet: Vec<String>,
    pub automata: Vec<Nfa>,
    pub word: Vec<SymbolId>,
}

/// Set cover with exactly `t` sets as shuffle membership. Letters are the
/// universe elements followed by the indices `1..t`; `B_S` reads elements
/// of `S` in a loop and then one index; the word lists the universe, then
/// the indices.
pub fn gen_setcov(family: &[BTreeSet<usize>], t: usize) -> Result<ShuffleInstance> {
    if family.is_empty() {
        return Err(Error::input("set family is empty"));
    }
    let universe: Vec<usize> = family
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let n = universe.len();
    let mut alphabet: Vec<String> = universe.iter().map(|u| format!("u{u}")).collect();
    alphabet.extend((1..=t).map(|j| format!("j{j}")));
    let pos: HashMap<usize, usize> = universe.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let automata = family
        .iter()
        .map(|set| {
            let mut trans: Vec<_> = set.iter().map(|u| (0, pos[u], 0)).collect();
            trans.extend((0..t).map(|j| (0, n + j, 1)));
            Nfa::new(vec!["pick".into(), "done".into()], n + t, 0, 1, trans)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ShuffleInstance {
        alphabet,
        automata,
        word: (0..n + t).collect(),
    })
}

/// Can the union be covered by exactly `t` members of the family?
pub fn brute_force_setcov(family: &[BTreeSet<usize>], t: usize) -> bool {
    let universe: BTreeSet<usize> = family.iter().flatten().copied().collect();
    let m = family.len();
    if t > m || m > 63 {
        return false;
    }
    (0u64..1 << m)
        .filter(|mask| mask.count_ones() as usize == t)
        .any(|mask| {
            let covered: BTreeSet<usize> = (0..m)
                .filter(|i| mask >> i & 1 == 1)
                .flat_map(|i| family[i].iter().copied())
                .collect();
            covered == universe
        })
}

/// A CNF formula over variables `1..=num_vars`; literals are signed
/// variable numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self> {
        for lit in clauses.iter().flatten() {
            if *lit == 0 || lit.unsigned_abs() as usize > num_vars {
                return Err(Error::input(format!("literal {lit} is out of range")));
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.clauses.iter().all(|c| {
            c.iter().any(|&lit| {
                let value = assignment >> (lit.unsigned_abs() - 1) & 1 == 1;
                value == (lit > 0)
            })
        })
    }
}

pub fn brute_force_sat(f: &Cnf) -> bool {
    f.num_vars < 64 && (0u64..1 << f.num_vars).any(|a| f.satisfied_by(a))
}

/// Cross-composition of formulas with equal clause and variable counts:
/// the program has a run within `2ℓ` switches iff some formula is
/// satisfiable. One thread per variable fixes its value, one more thread
/// walks the clauses of a chosen formula and queries a satisfying literal
/// per clause; the memory pairs each query with its answer.
pub fn gen_3sat_cc(formulas: &[Cnf]) -> Result<Generated> {
    let Some(first) = formulas.first() else {
        return Err(Error::input("no formulas given"));
    };
    let (k, l) = (first.num_vars, first.clauses.len());
    if formulas
        .iter()
        .any(|f| f.num_vars != k || f.clauses.len() != l)
    {
        return Err(Error::input("formulas differ in variable or clause count"));
    }
    if k == 0 || l == 0 {
        return Err(Error::input(
            "formulas need at least one variable and one clause",
        ));
    }
    if let Some(c) = formulas
        .iter()
        .flat_map(|f| &f.clauses)
        .find(|c| c.len() > 3)
    {
        return Err(Error::input(format!(
            "clause with {} literals in a 3-CNF",
            c.len()
        )));
    }
    // per variable: ?0 !0 ?1 !1, then #
    let letter = |x: usize, kind: usize| 4 * x + kind;
    let (ask0, tell0, ask1, tell1) = (0, 1, 2, 3);
    let hash = 4 * k;
    let mut alphabet = Vec::new();
    for x in 1..=k {
        for kind in ["q0", "a0", "q1", "a1"] {
            alphabet.push(format!("x{x}{kind}"));
        }
    }
    alphabet.push("go".into());
    let symbols = alphabet.len();

    let mut mem = Builder::default();
    let init = mem.state("init");
    let qf = mem.state("qf");
    mem.edge(init, hash, qf);
    for x in 0..k {
        for (value, ask, tell) in [(0, ask0, tell0), (1, ask1, tell1)] {
            let q = mem.state(format!("x{}v{value}", x + 1));
            mem.edge(qf, letter(x, ask), q);
            mem.edge(q, letter(x, tell), qf);
        }
    }
    let memory = mem.finish(symbols, init, &[qf])?;

    let mut threads = Vec::new();
    for x in 0..k {
        let mut a = Builder::default();
        let start = a.state("init");
        let f0 = a.state("v0");
        let f1 = a.state("v1");
        for (f, tell) in [(f0, tell0), (f1, tell1)] {
            a.edge(start, letter(x, tell), f);
            a.edge(f, letter(x, tell), f);
        }
        threads.push(a.finish(symbols, start, &[f0, f1])?);
    }

    let mut b = Builder::default();
    let p = b.state("p");
    let p0 = b.state("p0");
    let pf = b.state("pf");
    b.edge(p, hash, p0);
    for (j, f) in formulas.iter().enumerate() {
        let mut prev = p0;
        for (i, clause) in f.clauses.iter().enumerate() {
            let next = if i + 1 == l {
                pf
            } else {
                b.state(format!("f{}c{}", j + 1, i + 1))
            };
            for &lit in clause {
                let x = lit.unsigned_abs() as usize - 1;
                let ask = if lit > 0 { ask1 } else { ask0 };
                b.edge(prev, letter(x, ask), next);
            }
            prev = next;
        }
    }
    threads.push(b.finish(symbols, p, &[pf])?);

    Ok(Generated {
        smcp: Smcp::new(alphabet, memory, threads)?,
        cs: 2 * l,
    })
}

/// Multicolored clique on a `k × k` vertex grid (vertex `(r, c)` has index
/// `r·k + c`) as round-robin reachability with `k` rounds. Round one picks a
/// vertex per row; in round `i + 1` the pick of row `i` is broadcast to the
/// later rows, each of which must be adjacent to it.
pub fn gen_kkclique(g: &SimpleGraph, k: usize) -> Result<Generated> {
    if k == 0 {
        return Err(Error::input("k must be positive"));
    }
    if g.num_vertices() != k * k {
        return Err(Error::input(format!(
            "graph has {} vertices, expected k² = {}",
            g.num_vertices(),
            k * k
        )));
    }
    // letters (v, i) at v·k + i, then (#, i) at k³ + i; rows and threads 0-based
    let vl = |r: usize, c: usize, i: usize| (r * k + c) * k + i;
    let hl = |i: usize| k * k * k + i;
    let mut alphabet = Vec::new();
    for r in 0..k {
        for c in 0..k {
            for i in 0..k {
                alphabet.push(format!("r{}c{}t{}", r + 1, c + 1, i + 1));
            }
        }
    }
    alphabet.extend((0..k).map(|i| format!("idle{}", i + 1)));
    let symbols = alphabet.len();

    let mut threads = Vec::new();
    for i in 0..k {
        let mut a = Builder::default();
        let q0 = a.state("pick");
        let chosen: Vec<_> = (0..k).map(|c| a.state(format!("c{}", c + 1))).collect();
        for (c, &qc) in chosen.iter().enumerate() {
            a.edge(q0, vl(i, c, i), qc);
            a.edge(qc, vl(i, c, i), qc);
            a.edge(qc, hl(i), qc);
            for r in 0..i {
                for c2 in 0..k {
                    if g.has_edge(i * k + c, r * k + c2) {
                        a.edge(qc, vl(r, c2, i), qc);
                    }
                }
            }
        }
        threads.push(a.finish(symbols, q0, &chosen)?);
    }

    let mut m = Builder::default();
    let guess: Vec<_> = (0..=k).map(|i| m.state(format!("g{}", i + 1))).collect();
    for i in 0..k {
        for c in 0..k {
            m.edge(guess[i], vl(i, c, i), guess[i + 1]);
        }
    }
    let mut start = guess[k];
    for i in 0..k.saturating_sub(1) {
        let round = i + 1;
        let mut cur = start;
        for i2 in 0..i {
            let next = m.state(format!("v{round}t{}", i2 + 2));
            m.edge(cur, hl(i2), next);
            cur = next;
        }
        let end = m.state(format!("v{round}end"));
        for c in 0..k {
            let mut at = cur;
            for i2 in i..k {
                let next = if i2 + 1 == k {
                    end
                } else {
                    m.state(format!("v{round}t{}c{}", i2 + 2, c + 1))
                };
                m.edge(at, vl(i, c, i2), next);
                at = next;
            }
        }
        start = end;
    }
    let memory = m.finish(symbols, guess[0], &[start])?;
    Ok(Generated {
        smcp: Smcp::new(alphabet, memory, threads)?,
        cs: k,
    })
}

/// Is there one vertex per row forming a clique?
pub fn brute_force_kkclique(g: &SimpleGraph, k: usize) -> bool {
    fn go(g: &SimpleGraph, k: usize, picks: &mut Vec<usize>) -> bool {
        let r = picks.len();
        if r == k {
            return true;
        }
        for c in 0..k {
            let v = r * k + c;
            if picks.iter().all(|&u| g.has_edge(u, v)) {
                picks.push(v);
                if go(g, k, picks) {
                    return true;
                }
                picks.pop();
            }
        }
        false
    }
    g.num_vertices() == k * k && go(g, k, &mut Vec::new())
}

/// Bounded automata intersection as bounded context switching. Letters are
/// pairs (letter of Γ, automaton index); thread `i` runs `B_i` on its own
/// copy of Γ; the memory accepts `((a,1)…(a,n))^m`, forcing every thread to
/// read the same word of length `m`. The budget is `m·n`.
pub fn gen_bdfai(alphabet: &[String], dfas: &[Nfa], m: usize) -> Result<Generated> {
    let n = dfas.len();
    if n == 0 {
        return Err(Error::input("need at least one automaton"));
    }
    if m == 0 {
        return Err(Error::input("word length must be positive"));
    }
    let gamma = alphabet.len();
    if dfas.iter().any(|d| d.num_symbols() != gamma) {
        return Err(Error::input(
            "automaton alphabet differs from the given alphabet",
        ));
    }
    let sym = |a: usize, i: usize| a * n + i;
    let names: Vec<String> = alphabet
        .iter()
        .flat_map(|a| (1..=n).map(move |i| format!("{a}.{i}")))
        .collect();
    let symbols = names.len();

    let mut mem = Builder::default();
    let layers: Vec<_> = (0..=m).map(|r| mem.state(format!("r{r}"))).collect();
    for r in 0..m {
        for a in 0..gamma {
            let mut at = layers[r];
            for i in 0..n {
                let next = if i + 1 == n {
                    layers[r + 1]
                } else {
                    mem.state(format!("r{r}{}.{}", alphabet[a], i + 1))
                };
                mem.edge(at, sym(a, i), next);
                at = next;
            }
        }
    }
    let memory = mem.finish(symbols, layers[0], &[layers[m]])?;
    let threads = dfas
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let trans = d.transitions().iter().map(|&(p, a, p2)| (p, sym(a, i), p2));
            Nfa::new(
                d.state_names().to_vec(),
                symbols,
                d.initial(),
                d.final_state(),
                trans,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Generated {
        smcp: Smcp::new(names, memory, threads)?,
        cs: m * n,
    })
}

/// Is there a word of length `m` accepted by every automaton?
pub fn brute_force_bdfai(dfas: &[Nfa], m: usize) -> bool {
    let Some(gamma) = dfas.first().map(Nfa::num_symbols) else {
        return false;
    };
    let mut sets: Vec<Vec<bool>> = dfas
        .iter()
        .map(|d| {
            let mut v = vec![false; d.num_states()];
            v[d.initial()] = true;
            v
        })
        .collect();
    fn go(dfas: &[Nfa], gamma: usize, sets: &mut Vec<Vec<bool>>, left: usize) -> bool {
        if left == 0 {
            return dfas
                .iter()
                .zip(sets.iter())
                .all(|(d, s)| s[d.final_state()]);
        }
        for a in 0..gamma {
            let next: Vec<Vec<bool>> = dfas
                .iter()
                .zip(sets.iter())
                .map(|(d, s)| d.step_set(s, a))
                .collect();
            if next.iter().all(|s| s.iter().any(|&b| b)) {
                let mut next = next;
                if go(dfas, gamma, &mut next, left - 1) {
                    return true;
                }
            }
        }
        false
    }
    go(dfas, gamma, &mut sets, m)
}
