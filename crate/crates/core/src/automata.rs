//! Finite automata, shared-memory concurrent programs, and the unbounded
//! product-automaton reachability check.
//!
//! States and symbols are interned to dense `usize` ids. Every automaton has
//! exactly one initial and one final state; inputs with several final states
//! are rejected at construction time rather than normalized.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

pub type StateId = usize;
pub type SymbolId = usize;

/// A nondeterministic finite automaton without ε-moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    state_names: Vec<String>,
    num_symbols: usize,
    initial: StateId,
    final_state: StateId,
    transitions: Vec<(StateId, SymbolId, StateId)>,
    out: Vec<Vec<(SymbolId, StateId)>>,
}

impl Nfa {
    /// Builds an automaton, validating that every transition endpoint and
    /// symbol is declared. Duplicate transitions are merged.
    pub fn new(
        state_names: Vec<String>,
        num_symbols: usize,
        initial: StateId,
        final_state: StateId,
        transitions: impl IntoIterator<Item = (StateId, SymbolId, StateId)>,
    ) -> Result<Self> {
        let n = state_names.len();
        if n == 0 {
            return Err(Error::input("automaton must have at least one state"));
        }
        if initial >= n {
            return Err(Error::input(format!(
                "initial state {initial} is not declared"
            )));
        }
        if final_state >= n {
            return Err(Error::input(format!(
                "final state {final_state} is not declared"
            )));
        }
        let mut uniq = BTreeSet::new();
        for (src, sym, dst) in transitions {
            if src >= n || dst >= n {
                return Err(Error::input(format!(
                    "transition ({src}, {sym}, {dst}) uses an undeclared state"
                )));
            }
            if sym >= num_symbols {
                return Err(Error::input(format!(
                    "transition ({src}, {sym}, {dst}) uses an undeclared symbol"
                )));
            }
            uniq.insert((src, sym, dst));
        }
        let transitions: Vec<_> = uniq.into_iter().collect();
        let mut out = vec![Vec::new(); n];
        for &(src, sym, dst) in &transitions {
            out[src].push((sym, dst));
        }
        Ok(Nfa {
            state_names,
            num_symbols,
            initial,
            final_state,
            transitions,
            out,
        })
    }

    /// Same as [`Nfa::new`] with generated state names `s0, s1, ...`.
    pub fn with_state_count(
        num_states: usize,
        num_symbols: usize,
        initial: StateId,
        final_state: StateId,
        transitions: impl IntoIterator<Item = (StateId, SymbolId, StateId)>,
    ) -> Result<Self> {
        let names = (0..num_states).map(|i| format!("s{i}")).collect();
        Nfa::new(names, num_symbols, initial, final_state, transitions)
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn num_symbols(&self) -> usize {
        self.num_symbols
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn final_state(&self) -> StateId {
        self.final_state
    }

    pub fn state_names(&self) -> &[String] {
        &self.state_names
    }

    pub fn state_name(&self, state: StateId) -> &str {
        &self.state_names[state]
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.state_names.iter().position(|s| s == name)
    }

    /// All transitions, sorted and deduplicated.
    pub fn transitions(&self) -> &[(StateId, SymbolId, StateId)] {
        &self.transitions
    }

    /// Outgoing `(symbol, target)` pairs of a state.
    pub fn successors(&self, state: StateId) -> &[(SymbolId, StateId)] {
        &self.out[state]
    }

    /// The same automaton with a different initial and final state; its
    /// language is the segment language between the two states.
    pub fn rerooted(&self, initial: StateId, final_state: StateId) -> Result<Nfa> {
        Nfa::new(
            self.state_names.clone(),
            self.num_symbols,
            initial,
            final_state,
            self.transitions.iter().copied(),
        )
    }

    /// States that lie on some path from the initial to the final state.
    pub fn useful_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut fwd = vec![false; n];
        let mut stack = vec![self.initial];
        fwd[self.initial] = true;
        while let Some(p) = stack.pop() {
            for &(_, q) in &self.out[p] {
                if !fwd[q] {
                    fwd[q] = true;
                    stack.push(q);
                }
            }
        }
        let mut rev = vec![Vec::new(); n];
        for &(src, _, dst) in &self.transitions {
            rev[dst].push(src);
        }
        let mut bwd = vec![false; n];
        let mut stack = vec![self.final_state];
        bwd[self.final_state] = true;
        while let Some(p) = stack.pop() {
            for &q in &rev[p] {
                if !bwd[q] {
                    bwd[q] = true;
                    stack.push(q);
                }
            }
        }
        fwd.iter().zip(&bwd).map(|(&a, &b)| a && b).collect()
    }

    pub(crate) fn step_set(&self, current: &[bool], symbol: SymbolId) -> Vec<bool> {
        let mut next = vec![false; self.num_states()];
        for (state, _) in current.iter().enumerate().filter(|(_, &b)| b) {
            for &(sym, dst) in &self.out[state] {
                if sym == symbol {
                    next[dst] = true;
                }
            }
        }
        next
    }

    pub(crate) fn check_word(&self, word: &[SymbolId]) -> Result<()> {
        match word.iter().find(|&&s| s >= self.num_symbols) {
            Some(s) => Err(Error::input(format!("symbol {s} is not declared"))),
            None => Ok(()),
        }
    }
}

/// Membership test by subset simulation.
pub fn accepts(a: &Nfa, word: &[SymbolId]) -> Result<bool> {
    a.check_word(word)?;
    let mut current = vec![false; a.num_states()];
    current[a.initial] = true;
    for &sym in word {
        current = a.step_set(&current, sym);
        if !current.iter().any(|&b| b) {
            return Ok(false);
        }
    }
    Ok(current[a.final_state])
}

fn check_shared_alphabet(m: &Nfa, a: &Nfa) -> Result<()> {
    if m.num_symbols != a.num_symbols {
        return Err(Error::input(format!(
            "alphabet mismatch: {} vs {} symbols",
            m.num_symbols, a.num_symbols
        )));
    }
    Ok(())
}

/// Shortest word in `L(m(q, q2)) ∩ L(a(p, p2))`, or `None` if the
/// intersection is empty. The empty word counts when `q = q2` and `p = p2`.
pub fn segment_nonempty(
    m: &Nfa,
    q: StateId,
    q2: StateId,
    a: &Nfa,
    p: StateId,
    p2: StateId,
) -> Result<Option<Vec<SymbolId>>> {
    segment_search(m, q, q2, a, p, p2, false)
}

/// Like [`segment_nonempty`] but only nonempty words qualify.
pub fn segment_nonempty_strict(
    m: &Nfa,
    q: StateId,
    q2: StateId,
    a: &Nfa,
    p: StateId,
    p2: StateId,
) -> Result<Option<Vec<SymbolId>>> {
    segment_search(m, q, q2, a, p, p2, true)
}

fn segment_search(
    m: &Nfa,
    q: StateId,
    q2: StateId,
    a: &Nfa,
    p: StateId,
    p2: StateId,
    strict: bool,
) -> Result<Option<Vec<SymbolId>>> {
    check_shared_alphabet(m, a)?;
    for (s, n) in [(q, m.num_states()), (q2, m.num_states())] {
        if s >= n {
            return Err(Error::input(format!("memory state {s} is not declared")));
        }
    }
    for (s, n) in [(p, a.num_states()), (p2, a.num_states())] {
        if s >= n {
            return Err(Error::input(format!("thread state {s} is not declared")));
        }
    }
    if !strict && q == q2 && p == p2 {
        return Ok(Some(Vec::new()));
    }
    let width = a.num_states();
    let idx = |qq: StateId, pp: StateId| qq * width + pp;
    const ORIGIN: usize = usize::MAX;
    // parent[node] = (previous node or ORIGIN, symbol)
    let mut parent: Vec<Option<(usize, SymbolId)>> = vec![None; m.num_states() * width];
    let mut seen = vec![false; m.num_states() * width];
    let target = idx(q2, p2);
    // In strict mode the source is not marked, so a cycle back to it is a
    // valid nonempty witness.
    if !strict {
        seen[idx(q, p)] = true;
    }
    let mut queue = VecDeque::from([(q, p, ORIGIN)]);
    while let Some((cq, cp, here)) = queue.pop_front() {
        for &(sym, nq) in m.successors(cq) {
            for &(asym, np) in a.successors(cp) {
                if asym != sym {
                    continue;
                }
                let next = idx(nq, np);
                if seen[next] {
                    continue;
                }
                seen[next] = true;
                parent[next] = Some((here, sym));
                if next == target {
                    let mut word = Vec::new();
                    let mut node = next;
                    while node != ORIGIN {
                        let (prev, s) = parent[node].expect("parent chain");
                        word.push(s);
                        node = prev;
                    }
                    word.reverse();
                    return Ok(Some(word));
                }
                queue.push_back((nq, np, next));
            }
        }
    }
    Ok(None)
}

/// A word over `Σ × [threads]`: each letter carries the (0-based) index of
/// the thread that issued it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaggedWord(pub Vec<(SymbolId, usize)>);

impl TaggedWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> Vec<SymbolId> {
        self.0.iter().map(|&(s, _)| s).collect()
    }

    /// Letters issued by one thread, in order.
    pub fn projection(&self, thread: usize) -> Vec<SymbolId> {
        self.0
            .iter()
            .filter(|&&(_, t)| t == thread)
            .map(|&(s, _)| s)
            .collect()
    }

    /// Owner of each maximal same-thread infix.
    pub fn context_owners(&self) -> Vec<usize> {
        let mut owners: Vec<usize> = Vec::new();
        for &(_, t) in &self.0 {
            if owners.last() != Some(&t) {
                owners.push(t);
            }
        }
        owners
    }

    pub fn context_switches(&self) -> usize {
        self.context_owners().len().saturating_sub(1)
    }
}

/// A shared-memory concurrent program: a memory automaton plus `t ≥ 1`
/// thread automata over the memory's alphabet. Thread `i` is the `i`-th
/// entry of `threads` (0-based internally, 1-based in files and reports).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smcp {
    alphabet: Vec<String>,
    memory: Nfa,
    threads: Vec<Nfa>,
}

impl Smcp {
    pub fn new(alphabet: Vec<String>, memory: Nfa, threads: Vec<Nfa>) -> Result<Self> {
        if threads.is_empty() {
            return Err(Error::input("a program needs at least one thread"));
        }
        let sigma = alphabet.len();
        if memory.num_symbols() != sigma {
            return Err(Error::input(
                "memory alphabet differs from program alphabet",
            ));
        }
        if let Some(i) = threads.iter().position(|a| a.num_symbols() != sigma) {
            return Err(Error::input(format!(
                "thread {} alphabet differs from program alphabet",
                i + 1
            )));
        }
        Ok(Smcp {
            alphabet,
            memory,
            threads,
        })
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn symbol_id(&self, name: &str) -> Option<SymbolId> {
        self.alphabet.iter().position(|s| s == name)
    }

    pub fn memory(&self) -> &Nfa {
        &self.memory
    }

    pub fn threads(&self) -> &[Nfa] {
        &self.threads
    }

    pub fn num_threads(&self) -> usize {
        self.threads.len()
    }

    /// `|Q| · Π (|P_i| + 1)`, the number of product configurations when each
    /// thread may additionally be "not yet started".
    pub fn product_size(&self) -> u128 {
        self.threads
            .iter()
            .fold(self.memory.num_states() as u128, |acc, a| {
                acc.saturating_mul(a.num_states() as u128 + 1)
            })
    }

    /// Membership of a tagged word in `L(S)`: the memory accepts the
    /// untagged word and every thread projection is accepted or empty.
    pub fn accepts_word(&self, word: &TaggedWord) -> Result<bool> {
        if let Some(&(_, t)) = word.0.iter().find(|&&(_, t)| t >= self.threads.len()) {
            return Err(Error::input(format!("thread index {} out of range", t + 1)));
        }
        if !accepts(&self.memory, &word.symbols())? {
            return Ok(false);
        }
        for (i, a) in self.threads.iter().enumerate() {
            let proj = word.projection(i);
            if !proj.is_empty() && !accepts(a, &proj)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

const NOT_STARTED: u32 = u32::MAX;

/// Unbounded reachability: is `L(S)` nonempty? Explores the product of the
/// memory with all threads, where a thread that never moved contributes the
/// empty word. `cap` bounds the number of visited configurations.
pub fn product_reach(s: &Smcp, cap: usize) -> Result<bool> {
    let m = s.memory();
    let start: (StateId, Vec<u32>) = (m.initial(), vec![NOT_STARTED; s.num_threads()]);
    let accepting = |q: StateId, ts: &[u32]| {
        q == m.final_state()
            && ts
                .iter()
                .zip(s.threads())
                .all(|(&p, a)| p == NOT_STARTED || p as usize == a.final_state())
    };
    if accepting(start.0, &start.1) {
        return Ok(true);
    }
    // Per memory state: symbol -> targets.
    let mut mem_by_symbol: Vec<HashMap<SymbolId, Vec<StateId>>> =
        vec![HashMap::new(); m.num_states()];
    for &(src, sym, dst) in m.transitions() {
        mem_by_symbol[src].entry(sym).or_default().push(dst);
    }
    let mut seen = std::collections::HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some((q, ts)) = queue.pop_front() {
        for (i, a) in s.threads().iter().enumerate() {
            let p = if ts[i] == NOT_STARTED {
                a.initial()
            } else {
                ts[i] as usize
            };
            for &(sym, np) in a.successors(p) {
                let Some(targets) = mem_by_symbol[q].get(&sym) else {
                    continue;
                };
                for &nq in targets {
                    let mut nts = ts.clone();
                    nts[i] = np as u32;
                    if accepting(nq, &nts) {
                        return Ok(true);
                    }
                    let key = (nq, nts);
                    if !seen.contains(&key) {
                        if seen.len() >= cap {
                            return Err(Error::resource("product configurations", cap as u64));
                        }
                        seen.insert(key.clone());
                        queue.push_back(key);
                    }
                }
            }
        }
    }
    Ok(false)
}
