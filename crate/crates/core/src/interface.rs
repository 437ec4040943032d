//! Interface sequences and interface automata.
//!
//! An interface sequence lists, per context, the memory state on entry and on
//! exit. The interface automaton of a thread reads such sequences over the
//! pair alphabet `Q × Q`, encoded as `q * |Q| + q'`.

use std::collections::VecDeque;
use std::fmt;

use crate::automata::{Nfa, Smcp, StateId, SymbolId, TaggedWord};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InterfaceSeq(pub Vec<(StateId, StateId)>);

impl InterfaceSeq {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(StateId, StateId)] {
        &self.0
    }

    /// Encodes the pairs as symbols of the interface automaton alphabet.
    pub fn to_symbols(&self, num_memory_states: usize) -> Vec<SymbolId> {
        self.0
            .iter()
            .map(|&(q, q2)| pair_symbol(q, q2, num_memory_states))
            .collect()
    }

    /// Renders with memory state names, e.g. `(q0,q1)(q1,qf)`.
    pub fn display_with<'a>(&'a self, m: &'a Nfa) -> impl fmt::Display + 'a {
        struct D<'a>(&'a InterfaceSeq, &'a Nfa);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.is_empty() {
                    return write!(f, "ε");
                }
                for &(q, q2) in &self.0 .0 {
                    write!(f, "({},{})", self.1.state_name(q), self.1.state_name(q2))?;
                }
                Ok(())
            }
        }
        D(self, m)
    }
}

pub fn pair_symbol(q: StateId, q2: StateId, num_memory_states: usize) -> SymbolId {
    q * num_memory_states + q2
}

pub fn symbol_pair(sym: SymbolId, num_memory_states: usize) -> (StateId, StateId) {
    (sym / num_memory_states, sym % num_memory_states)
}

/// Chains from the memory's initial to its final state. The empty sequence
/// is valid exactly when the two coincide.
pub fn is_valid(seq: &InterfaceSeq, m: &Nfa) -> bool {
    let pairs = seq.pairs();
    let Some(first) = pairs.first() else {
        return m.initial() == m.final_state();
    };
    let in_range = pairs
        .iter()
        .all(|&(a, b)| a < m.num_states() && b < m.num_states());
    in_range
        && first.0 == m.initial()
        && pairs.last().map(|p| p.1) == Some(m.final_state())
        && pairs.windows(2).all(|w| w[0].1 == w[1].0)
}

/// `reach[q][p]` holds every `(q2, p2)` with a (possibly empty, or in strict
/// mode nonempty) common word from `(q, p)`. One BFS per source pair.
pub(crate) fn sync_table(m: &Nfa, a: &Nfa, strict: bool) -> Result<Vec<Vec<Vec<bool>>>> {
    if m.num_symbols() != a.num_symbols() {
        return Err(Error::input("memory and thread alphabets differ"));
    }
    let (nq, np) = (m.num_states(), a.num_states());
    let mut by_symbol: Vec<Vec<Vec<StateId>>> = vec![vec![Vec::new(); m.num_symbols()]; np];
    for &(src, sym, dst) in a.transitions() {
        by_symbol[src][sym].push(dst);
    }
    let mut table = vec![vec![Vec::new(); np]; nq];
    for q in 0..nq {
        for p in 0..np {
            let mut seen = vec![false; nq * np];
            let mut queue = VecDeque::new();
            if !strict {
                seen[q * np + p] = true;
            }
            queue.push_back((q, p));
            while let Some((cq, cp)) = queue.pop_front() {
                for &(sym, tq) in m.successors(cq) {
                    for &tp in &by_symbol[cp][sym] {
                        let idx = tq * np + tp;
                        if !seen[idx] {
                            seen[idx] = true;
                            queue.push_back((tq, tp));
                        }
                    }
                }
            }
            table[q][p] = seen;
        }
    }
    Ok(table)
}

fn build_interface(m: &Nfa, a: &Nfa, strict: bool) -> Result<Nfa> {
    let table = sync_table(m, a, strict)?;
    let (nq, np) = (m.num_states(), a.num_states());
    let mut edges = Vec::new();
    for (q, row) in table.iter().enumerate() {
        for (p, seen) in row.iter().enumerate() {
            for (idx, _) in seen.iter().enumerate().filter(|(_, &b)| b) {
                let (q2, p2) = (idx / np, idx % np);
                edges.push((p, pair_symbol(q, q2, nq), p2));
            }
        }
    }
    Nfa::new(
        a.state_names().to_vec(),
        nq * nq,
        a.initial(),
        a.final_state(),
        edges,
    )
}

/// The interface automaton `B`: the thread's states, with an edge
/// `p –(q,q')→ p'` whenever the memory segment `q → q'` and the thread
/// segment `p → p'` share a word (ε included).
pub fn interface_automaton(m: &Nfa, a: &Nfa) -> Result<Nfa> {
    build_interface(m, a, false)
}

/// Variant of [`interface_automaton`] whose edges require a nonempty shared
/// word, i.e. every pair stands for a real context.
pub fn interface_automaton_strict(m: &Nfa, a: &Nfa) -> Result<Nfa> {
    build_interface(m, a, true)
}

/// Lazily enumerates valid interface sequences of length `1..=max_len`,
/// shortest first, lexicographic within each length.
pub fn enumerate_valid(m: &Nfa, max_len: usize) -> EnumerateValid {
    EnumerateValid {
        num_states: m.num_states(),
        initial: m.initial(),
        final_state: m.final_state(),
        max_len,
        len: 1,
        digits: Vec::new(),
        done: max_len == 0,
    }
}

#[derive(Debug, Clone)]
pub struct EnumerateValid {
    num_states: usize,
    initial: StateId,
    final_state: StateId,
    max_len: usize,
    len: usize,
    /// Intermediate states q_1..q_{len-1}.
    digits: Vec<StateId>,
    done: bool,
}

impl Iterator for EnumerateValid {
    type Item = InterfaceSeq;

    fn next(&mut self) -> Option<InterfaceSeq> {
        if self.done {
            return None;
        }
        let mut chain = Vec::with_capacity(self.len + 1);
        chain.push(self.initial);
        chain.extend_from_slice(&self.digits);
        chain.push(self.final_state);
        let seq = InterfaceSeq(chain.windows(2).map(|w| (w[0], w[1])).collect());

        // odometer step, rightmost digit fastest
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.len += 1;
                if self.len > self.max_len {
                    self.done = true;
                }
                self.digits = vec![0; self.len - 1];
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.num_states {
                break;
            }
            self.digits[i] = 0;
        }
        Some(seq)
    }
}

/// An accepting memory run over a tagged word: `states[i]` is the memory
/// state before letter `i`, so `states.len() == word.len() + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemoryRun {
    pub word: TaggedWord,
    pub states: Vec<StateId>,
}

/// Finds some accepting memory run of `word`, if any.
pub fn memory_run(m: &Nfa, word: &TaggedWord) -> Result<Option<MemoryRun>> {
    let syms = word.symbols();
    m.check_word(&syms)?;
    // layers[i][q] = predecessor state on some run reaching q after i letters
    let mut layers: Vec<Vec<Option<StateId>>> = Vec::with_capacity(syms.len() + 1);
    let mut first = vec![None; m.num_states()];
    first[m.initial()] = Some(m.initial());
    layers.push(first);
    for &sym in &syms {
        let prev = layers.last().unwrap();
        let mut next = vec![None; m.num_states()];
        for (q, slot) in prev.iter().enumerate() {
            if slot.is_none() {
                continue;
            }
            for &(s, dst) in m.successors(q) {
                if s == sym && next[dst].is_none() {
                    next[dst] = Some(q);
                }
            }
        }
        layers.push(next);
    }
    if layers.last().unwrap()[m.final_state()].is_none() {
        return Ok(None);
    }
    let mut states = vec![m.final_state()];
    for i in (1..layers.len()).rev() {
        let cur = *states.last().unwrap();
        states.push(layers[i][cur].expect("run predecessor"));
    }
    states.reverse();
    Ok(Some(MemoryRun {
        word: word.clone(),
        states,
    }))
}

/// The interface sequence a run induces: memory states at every context
/// boundary.
pub fn induced_sequence(s: &Smcp, run: &MemoryRun) -> Result<InterfaceSeq> {
    let m = s.memory();
    let w = &run.word.0;
    if run.states.len() != w.len() + 1 {
        return Err(Error::input("run length does not match word length"));
    }
    if run.states[0] != m.initial() || *run.states.last().unwrap() != m.final_state() {
        return Err(Error::input("run is not accepting"));
    }
    for (i, &(sym, _)) in w.iter().enumerate() {
        let (src, dst) = (run.states[i], run.states[i + 1]);
        if !m.successors(src).contains(&(sym, dst)) {
            return Err(Error::input(format!(
                "run step {i} is not a memory transition"
            )));
        }
    }
    let mut pairs = Vec::new();
    let mut start = 0;
    for i in 1..=w.len() {
        if i == w.len() || w[i].1 != w[i - 1].1 {
            pairs.push((run.states[start], run.states[i]));
            start = i;
        }
    }
    Ok(InterfaceSeq(pairs))
}
