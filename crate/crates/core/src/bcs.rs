//! Bounded context switching by enumeration of interface sequences.
//!
//! A word with at most `cs` switches induces a valid interface sequence of
//! length at most `cs + 1`, and such a sequence is realizable iff it lies in
//! the shuffle of the threads' interface languages. The solver walks valid
//! sequences shortest-first and decides each one with [`shuffle_membership`].

use std::collections::{HashSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::automata::{segment_nonempty, Nfa, Smcp, StateId, TaggedWord};
use crate::error::{Error, Result};
use crate::interface::{interface_automaton, is_valid, pair_symbol, InterfaceSeq};
use crate::shuffle::{shuffle_certificate, shuffle_membership};

/// Tuning knobs for [`solve_bcs_with`].
#[derive(Debug, Clone)]
pub struct BcsOptions {
    /// Worker threads; 0 means the rayon default.
    pub jobs: usize,
    /// Maximum number of candidate sequences handed to the shuffle test.
    pub cap: u64,
    /// Skip sequences that provably fail before running the shuffle test.
    pub prune: bool,
    /// Size limit for the per-prefix joint state sets used by pruning. Above
    /// it the prefix check is switched off for the subtree.
    pub tuple_limit: usize,
}

impl Default for BcsOptions {
    fn default() -> Self {
        BcsOptions {
            jobs: 0,
            cap: 50_000_000,
            prune: true,
            tuple_limit: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BcsAnswer {
    Yes {
        sequence: InterfaceSeq,
        /// Owner thread (0-based) of each pair of `sequence`.
        assignment: Vec<usize>,
        witness: TaggedWord,
    },
    No,
}

impl BcsAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, BcsAnswer::Yes { .. })
    }
}

pub fn solve_bcs(s: &Smcp, cs: usize) -> Result<BcsAnswer> {
    solve_bcs_with(s, cs, &BcsOptions::default())
}

struct Search<'a> {
    s: &'a Smcp,
    bs: Vec<Nfa>,
    useful: Vec<Vec<bool>>,
    /// `usable[q][q2]`: the pair labels an edge between useful states of some B_i.
    usable: Vec<Vec<bool>>,
    /// Fewest usable pairs leading from a state to the memory's final state.
    dist: Vec<usize>,
    opts: &'a BcsOptions,
    tested: AtomicU64,
}

const UNSTARTED: u32 = u32::MAX;

type Tuples = HashSet<Vec<u32>>;

impl<'a> Search<'a> {
    fn new(s: &'a Smcp, opts: &'a BcsOptions) -> Result<Self> {
        let m = s.memory();
        let nq = m.num_states();
        let bs = s
            .threads()
            .iter()
            .map(|a| interface_automaton(m, a))
            .collect::<Result<Vec<_>>>()?;
        let useful: Vec<Vec<bool>> = bs.iter().map(|b| b.useful_states()).collect();
        let mut usable = vec![vec![!opts.prune; nq]; nq];
        if opts.prune {
            for (b, u) in bs.iter().zip(&useful) {
                for &(p, sym, p2) in b.transitions() {
                    if u[p] && u[p2] {
                        usable[sym / nq][sym % nq] = true;
                    }
                }
            }
        }
        let mut dist = vec![usize::MAX; nq];
        dist[m.final_state()] = 0;
        let mut queue = VecDeque::from([m.final_state()]);
        while let Some(q2) = queue.pop_front() {
            for q in 0..nq {
                if usable[q][q2] && dist[q] == usize::MAX {
                    dist[q] = dist[q2] + 1;
                    queue.push_back(q);
                }
            }
        }
        Ok(Search {
            s,
            bs,
            useful,
            usable,
            dist,
            opts,
            tested: AtomicU64::new(0),
        })
    }

    fn advance(&self, tuples: &Tuples, q: StateId, q2: StateId) -> Option<Tuples> {
        let nq = self.s.memory().num_states();
        let sym = pair_symbol(q, q2, nq);
        let mut next = Tuples::new();
        for tuple in tuples {
            for (i, b) in self.bs.iter().enumerate() {
                let p = if tuple[i] == UNSTARTED {
                    b.initial()
                } else {
                    tuple[i] as usize
                };
                for &(a, p2) in b.successors(p) {
                    if a == sym && self.useful[i][p2] {
                        let mut t = tuple.clone();
                        t[i] = p2 as u32;
                        next.insert(t);
                        if next.len() > self.opts.tuple_limit {
                            return None;
                        }
                    }
                }
            }
        }
        Some(next)
    }

    fn test_leaf(&self, chain: &[StateId]) -> Result<Option<InterfaceSeq>> {
        let n = self.tested.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.opts.cap {
            return Err(Error::resource("interface sequences tested", self.opts.cap));
        }
        let seq = InterfaceSeq(chain.windows(2).map(|w| (w[0], w[1])).collect());
        let word = seq.to_symbols(self.s.memory().num_states());
        Ok(shuffle_membership(&self.bs, &word)?.then_some(seq))
    }

    /// Extends `chain` (memory states q_0..q_j) to total length `len + 1`.
    fn dfs(
        &self,
        chain: &mut Vec<StateId>,
        len: usize,
        tuples: Option<&Tuples>,
    ) -> Result<Option<InterfaceSeq>> {
        let m = self.s.memory();
        let q = *chain.last().unwrap();
        let pairs_left = len + 1 - chain.len();
        let candidates: Vec<StateId> = if pairs_left == 1 {
            vec![m.final_state()]
        } else {
            (0..m.num_states()).collect()
        };
        for q2 in candidates {
            if !self.usable[q][q2] || self.dist[q2] > pairs_left - 1 {
                continue;
            }
            let next = match tuples {
                Some(t) => match self.advance(t, q, q2) {
                    Some(n) if n.is_empty() => continue,
                    other => other,
                },
                None => None,
            };
            chain.push(q2);
            let found = if pairs_left == 1 {
                self.test_leaf(chain)?
            } else {
                self.dfs(chain, len, next.as_ref())?
            };
            chain.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn run(&self, cs: usize) -> Result<Option<InterfaceSeq>> {
        let m = self.s.memory();
        let start: Option<Tuples> = self
            .opts
            .prune
            .then(|| Tuples::from([vec![UNSTARTED; self.bs.len()]]));
        for len in 1..=cs.saturating_add(1) {
            if self.dist[m.initial()] > len {
                continue;
            }
            if len == 1 {
                if let Some(seq) = self.dfs(&mut vec![m.initial()], 1, start.as_ref())? {
                    return Ok(Some(seq));
                }
                continue;
            }
            // first-level branches in parallel; the earliest branch wins
            let q0 = m.initial();
            let hit = (0..m.num_states())
                .into_par_iter()
                .map(|q1| -> Result<Option<InterfaceSeq>> {
                    if !self.usable[q0][q1] || self.dist[q1] > len - 1 {
                        return Ok(None);
                    }
                    let next = match &start {
                        Some(t) => match self.advance(t, q0, q1) {
                            Some(n) if n.is_empty() => return Ok(None),
                            other => other,
                        },
                        None => None,
                    };
                    self.dfs(&mut vec![q0, q1], len, next.as_ref())
                })
                .find_map_first(|r| match r {
                    Ok(None) => None,
                    other => Some(other),
                });
            if let Some(r) = hit {
                return r;
            }
        }
        Ok(None)
    }
}

/// Decides whether some word of `L(S)` has at most `cs` context switches.
pub fn solve_bcs_with(s: &Smcp, cs: usize, opts: &BcsOptions) -> Result<BcsAnswer> {
    let m = s.memory();
    if m.initial() == m.final_state() {
        return Ok(BcsAnswer::Yes {
            sequence: InterfaceSeq::default(),
            assignment: Vec::new(),
            witness: TaggedWord::default(),
        });
    }
    let search = Search::new(s, opts)?;
    let found = if opts.jobs == 0 {
        search.run(cs)?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?;
        pool.install(|| search.run(cs))?
    };
    let Some(sequence) = found else {
        return Ok(BcsAnswer::No);
    };
    let word = sequence.to_symbols(m.num_states());
    let assignment = shuffle_certificate(&search.bs, &word)?
        .ok_or_else(|| Error::Internal("no certificate for accepted sequence".into()))?;
    let witness = reconstruct_witness(s, &sequence, &assignment)?;
    if !s.accepts_word(&witness)? || witness.context_switches() > cs {
        return Err(Error::Internal("reconstructed witness fails replay".into()));
    }
    Ok(BcsAnswer::Yes {
        sequence,
        assignment,
        witness,
    })
}

/// Accepting path of `b` on `word`, as the list of visited states.
fn accepting_path(b: &Nfa, word: &[usize]) -> Option<Vec<StateId>> {
    let n = b.num_states();
    let mut layers: Vec<Vec<Option<StateId>>> = vec![vec![None; n]];
    layers[0][b.initial()] = Some(b.initial());
    for &sym in word {
        let prev = layers.last().unwrap();
        let mut next = vec![None; n];
        for p in (0..n).filter(|&p| prev[p].is_some()) {
            for &(a, p2) in b.successors(p) {
                if a == sym && next[p2].is_none() {
                    next[p2] = Some(p);
                }
            }
        }
        layers.push(next);
    }
    layers.last().unwrap()[b.final_state()]?;
    let mut path = vec![b.final_state()];
    for layer in layers.iter().skip(1).rev() {
        let cur = *path.last().unwrap();
        path.push(layer[cur]?);
    }
    path.reverse();
    Some(path)
}

/// Builds a word of `L(S)` whose contexts follow `seq`, with context `j`
/// issued by thread `assignment[j]`.
pub fn reconstruct_witness(
    s: &Smcp,
    seq: &InterfaceSeq,
    assignment: &[usize],
) -> Result<TaggedWord> {
    let m = s.memory();
    if !is_valid(seq, m) {
        return Err(Error::Internal("sequence is not valid".into()));
    }
    if assignment.len() != seq.len() || assignment.iter().any(|&i| i >= s.num_threads()) {
        return Err(Error::Internal("assignment does not match sequence".into()));
    }
    let nq = m.num_states();
    let mut fills: Vec<Vec<usize>> = vec![Vec::new(); seq.len()];
    for (i, a) in s.threads().iter().enumerate() {
        let positions: Vec<usize> = (0..seq.len()).filter(|&j| assignment[j] == i).collect();
        if positions.is_empty() {
            continue;
        }
        let b = interface_automaton(m, a)?;
        let syms: Vec<usize> = positions
            .iter()
            .map(|&j| pair_symbol(seq.0[j].0, seq.0[j].1, nq))
            .collect();
        let path = accepting_path(&b, &syms)
            .ok_or_else(|| Error::Internal(format!("thread {} cannot read its pairs", i + 1)))?;
        for (idx, &j) in positions.iter().enumerate() {
            let (q, q2) = seq.0[j];
            let seg = segment_nonempty(m, q, q2, a, path[idx], path[idx + 1])?
                .ok_or_else(|| Error::Internal("interface edge without segment".into()))?;
            fills[j] = seg;
        }
    }
    let word = fills
        .iter()
        .zip(assignment)
        .flat_map(|(seg, &i)| seg.iter().map(move |&sym| (sym, i)))
        .collect();
    Ok(TaggedWord(word))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("a{i}")).collect()
    }

    /// Memory reads x then y; thread 1 issues x, thread 2 issues y.
    fn two_step() -> Smcp {
        let m = Nfa::with_state_count(3, 2, 0, 2, [(0, 0, 1), (1, 1, 2)]).unwrap();
        let a1 = Nfa::with_state_count(2, 2, 0, 1, [(0, 0, 1)]).unwrap();
        let a2 = Nfa::with_state_count(2, 2, 0, 1, [(0, 1, 1)]).unwrap();
        Smcp::new(names(2), m, vec![a1, a2]).unwrap()
    }

    #[test]
    fn epsilon_instance() {
        let e = Nfa::with_state_count(1, 1, 0, 0, []).unwrap();
        let s = Smcp::new(names(1), e.clone(), vec![e]).unwrap();
        match solve_bcs(&s, 0).unwrap() {
            BcsAnswer::Yes { witness, .. } => assert!(witness.is_empty()),
            BcsAnswer::No => panic!("expected yes"),
        }
    }

    #[test]
    fn switch_budget_matters() {
        let s = two_step();
        assert_eq!(solve_bcs(&s, 0).unwrap(), BcsAnswer::No);
        match solve_bcs(&s, 1).unwrap() {
            BcsAnswer::Yes {
                sequence,
                assignment,
                witness,
            } => {
                assert_eq!(sequence, InterfaceSeq(vec![(0, 1), (1, 2)]));
                assert_eq!(assignment, vec![0, 1]);
                assert_eq!(witness, TaggedWord(vec![(0, 0), (1, 1)]));
            }
            BcsAnswer::No => panic!("expected yes"),
        }
    }

    #[test]
    fn unpruned_and_parallel_agree() {
        let s = two_step();
        let plain = BcsOptions {
            prune: false,
            jobs: 1,
            ..Default::default()
        };
        let par = BcsOptions {
            jobs: 3,
            ..Default::default()
        };
        for cs in 0..3 {
            let a = solve_bcs_with(&s, cs, &plain).unwrap();
            let b = solve_bcs_with(&s, cs, &par).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn single_thread_single_context() {
        let m = Nfa::with_state_count(2, 1, 0, 1, [(0, 0, 1), (1, 0, 1)]).unwrap();
        let a = Nfa::with_state_count(3, 1, 0, 2, [(0, 0, 1), (1, 0, 2)]).unwrap();
        let s = Smcp::new(names(1), m, vec![a]).unwrap();
        match solve_bcs(&s, 0).unwrap() {
            BcsAnswer::Yes { witness, .. } => {
                assert_eq!(witness, TaggedWord(vec![(0, 0), (0, 0)]))
            }
            BcsAnswer::No => panic!("expected yes"),
        }
    }

    #[test]
    fn cap_is_a_resource_error() {
        let s = two_step();
        let opts = BcsOptions {
            cap: 0,
            prune: false,
            ..Default::default()
        };
        assert!(matches!(
            solve_bcs_with(&s, 3, &opts),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn bad_assignment_is_internal_error() {
        let s = two_step();
        let seq = InterfaceSeq(vec![(0, 1), (1, 2)]);
        assert!(matches!(
            reconstruct_witness(&s, &seq, &[1, 0]),
            Err(Error::Internal(_))
        ));
        assert!(reconstruct_witness(&s, &seq, &[0, 1]).is_ok());
    }
}
