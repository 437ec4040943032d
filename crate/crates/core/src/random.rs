//! Seeded random instances for tests and benchmarks.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::automata::{Nfa, Smcp};
use crate::error::Result;
use crate::sched::{NodeId, SchedGraph};

pub use rand::SeedableRng;
pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random automaton with state 0 initial and a random final state. Each
/// possible transition is present with probability `density`.
pub fn random_nfa(rng: &mut impl Rng, states: usize, symbols: usize, density: f64) -> Result<Nfa> {
    let mut trans = Vec::new();
    for src in 0..states {
        for sym in 0..symbols {
            for dst in 0..states {
                if rng.gen_bool(density) {
                    trans.push((src, sym, dst));
                }
            }
        }
    }
    let fin = rng.gen_range(0..states);
    Nfa::with_state_count(states, symbols, 0, fin, trans)
}

/// Size bounds for [`random_smcp`]. State counts are drawn from `1..=max`.
#[derive(Debug, Clone)]
pub struct SmcpShape {
    pub max_memory: usize,
    pub max_threads: usize,
    pub max_thread_states: usize,
    pub max_symbols: usize,
    pub density: f64,
}

impl Default for SmcpShape {
    fn default() -> Self {
        SmcpShape {
            max_memory: 4,
            max_threads: 3,
            max_thread_states: 4,
            max_symbols: 3,
            density: 0.25,
        }
    }
}

/// Random program. The memory gets a final state distinct from its initial
/// one whenever it has at least two states, so ε does not decide most
/// instances.
pub fn random_smcp(rng: &mut impl Rng, shape: &SmcpShape) -> Result<Smcp> {
    let symbols = rng.gen_range(1..=shape.max_symbols);
    let m_states = rng.gen_range(1..=shape.max_memory);
    let mut memory = random_nfa(rng, m_states, symbols, shape.density)?;
    if m_states > 1 && memory.final_state() == 0 {
        memory = memory.rerooted(0, rng.gen_range(1..m_states))?;
    }
    let t = rng.gen_range(1..=shape.max_threads);
    let threads = (0..t)
        .map(|_| {
            let n = rng.gen_range(1..=shape.max_thread_states);
            random_nfa(rng, n, symbols, shape.density)
        })
        .collect::<Result<Vec<_>>>()?;
    let alphabet = (0..symbols)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    Smcp::new(alphabet, memory, threads)
}

/// Random word over `symbols` letters.
pub fn random_word(rng: &mut impl Rng, len: usize, symbols: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..symbols)).collect()
}

/// Random directed multigraph on nodes `1..=n` with arc weights in
/// `0..=max_weight`.
pub fn random_sched_graph(rng: &mut impl Rng, n: usize, max_weight: u64) -> Result<SchedGraph> {
    let mut arcs = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if u != v {
                arcs.push((u, v, rng.gen_range(0..=max_weight)));
            }
        }
    }
    SchedGraph::new(1..=n, arcs)
}

/// Every directed graph on nodes `1..=n` with weights in `0..=max_weight`,
/// in a fixed order.
pub fn all_sched_graphs(n: usize, max_weight: u64) -> Vec<SchedGraph> {
    let pairs: Vec<(NodeId, NodeId)> = (1..=n)
        .flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let base = max_weight + 1;
    let total = base.pow(pairs.len() as u32);
    (0..total)
        .map(|mut code| {
            let arcs: Vec<_> = pairs
                .iter()
                .map(|&(u, v)| {
                    let w = code % base;
                    code /= base;
                    (u, v, w)
                })
                .collect();
            SchedGraph::new(1..=n, arcs).expect("enumerated graph")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_deterministic() {
        let shape = SmcpShape::default();
        let a = random_smcp(&mut rng(7), &shape).unwrap();
        let b = random_smcp(&mut rng(7), &shape).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn graph_enumeration_sizes() {
        assert_eq!(all_sched_graphs(1, 2).len(), 1);
        assert_eq!(all_sched_graphs(2, 2).len(), 9);
        assert_eq!(all_sched_graphs(3, 1).len(), 64);
    }
}
