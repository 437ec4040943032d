//! Shuffle membership via fast subset convolution.
//!
//! Each automaton `B_i` contributes the 0/1 set function "the positions in S
//! spell a word of `L(B_i) ∪ {ε}`". The subset convolution of all of them,
//! evaluated at the full position set, counts the ways to split the word
//! among the automata.

use rayon::prelude::*;

use crate::automata::{Nfa, SymbolId};
use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_K: usize = 30;

/// An integer-valued function on the subsets of `{0..k}`; subset `S` lives at
/// index `S` read as a bit mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunction {
    k: usize,
    table: Vec<i128>,
}

impl SetFunction {
    pub fn new(k: usize, table: Vec<i128>) -> Result<Self> {
        if k > MAX_K {
            return Err(Error::resource("set function ground set", MAX_K as u64));
        }
        if table.len() != 1usize << k {
            return Err(Error::input(format!(
                "table has {} entries, expected 2^{k}",
                table.len()
            )));
        }
        Ok(SetFunction { k, table })
    }

    pub fn zero(k: usize) -> Result<Self> {
        SetFunction::new(k, vec![0; 1usize.checked_shl(k as u32).unwrap_or(0)])
    }

    /// The convolution identity: 1 at ∅, 0 elsewhere.
    pub fn unit(k: usize) -> Result<Self> {
        let mut f = SetFunction::zero(k)?;
        f.table[0] = 1;
        Ok(f)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn table(&self) -> &[i128] {
        &self.table
    }

    pub fn get(&self, mask: usize) -> i128 {
        self.table[mask]
    }

    pub fn full_mask(&self) -> usize {
        (1usize << self.k) - 1
    }
}

fn zeta_in_place(a: &mut [i128], k: usize) -> Result<()> {
    for bit in 0..k {
        let b = 1usize << bit;
        for s in 0..a.len() {
            if s & b != 0 {
                a[s] = a[s]
                    .checked_add(a[s ^ b])
                    .ok_or(Error::Overflow("zeta transform"))?;
            }
        }
    }
    Ok(())
}

fn mobius_in_place(a: &mut [i128], k: usize) -> Result<()> {
    for bit in 0..k {
        let b = 1usize << bit;
        for s in 0..a.len() {
            if s & b != 0 {
                a[s] = a[s]
                    .checked_sub(a[s ^ b])
                    .ok_or(Error::Overflow("Möbius transform"))?;
            }
        }
    }
    Ok(())
}

/// Ranked zeta transform: entry `r` is the zeta transform of `f` restricted
/// to sets of size `r`.
fn ranked_zeta(f: &SetFunction) -> Result<Vec<Vec<i128>>> {
    (0..=f.k)
        .into_par_iter()
        .map(|r| {
            let mut a: Vec<i128> = f
                .table
                .iter()
                .enumerate()
                .map(|(s, &v)| if s.count_ones() as usize == r { v } else { 0 })
                .collect();
            zeta_in_place(&mut a, f.k)?;
            Ok(a)
        })
        .collect()
}

/// `(f ∗ g)(S) = Σ_{U ⊆ S} f(U) · g(S \ U)` in `O(2^k k²)` checked
/// operations.
pub fn convolve(f: &SetFunction, g: &SetFunction) -> Result<SetFunction> {
    if f.k != g.k {
        return Err(Error::input(format!(
            "ground sets differ: {} vs {}",
            f.k, g.k
        )));
    }
    let k = f.k;
    let fz = ranked_zeta(f)?;
    let gz = ranked_zeta(g)?;
    let parts: Vec<Vec<(usize, i128)>> = (0..=k)
        .into_par_iter()
        .map(|r| {
            let mut h = vec![0i128; 1 << k];
            for (s, slot) in h.iter_mut().enumerate() {
                let mut acc: i128 = 0;
                for i in 0..=r {
                    let prod = fz[i][s]
                        .checked_mul(gz[r - i][s])
                        .ok_or(Error::Overflow("rank product"))?;
                    acc = acc
                        .checked_add(prod)
                        .ok_or(Error::Overflow("rank product"))?;
                }
                *slot = acc;
            }
            mobius_in_place(&mut h, k)?;
            Ok(h.into_iter()
                .enumerate()
                .filter(|(s, _)| s.count_ones() as usize == r)
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut table = vec![0i128; 1 << k];
    for (s, v) in parts.into_iter().flatten() {
        table[s] = v;
    }
    SetFunction::new(k, table)
}

/// Reached state set of `b` on `w[S]` for every `S`, as packed bit rows.
fn subset_reach(b: &Nfa, w: &[SymbolId]) -> Vec<u64> {
    let words = b.num_states().div_ceil(64);
    let k = w.len();
    let mut reach = vec![0u64; words << k];
    reach[b.initial() / 64] |= 1 << (b.initial() % 64);
    for s in 1usize..(1 << k) {
        let top = usize::BITS as usize - 1 - s.leading_zeros() as usize;
        let prev = s ^ (1 << top);
        let sym = w[top];
        let (done, rest) = reach.split_at_mut(s * words);
        let src = &done[prev * words..prev * words + words];
        let dst = &mut rest[..words];
        for (wi, &chunk) in src.iter().enumerate() {
            let mut bits = chunk;
            while bits != 0 {
                let p = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for &(a, q) in b.successors(p) {
                    if a == sym {
                        dst[q / 64] |= 1 << (q % 64);
                    }
                }
            }
        }
    }
    reach
}

fn check_word(b: &Nfa, w: &[SymbolId]) -> Result<()> {
    if w.len() > MAX_K {
        return Err(Error::resource("word length", MAX_K as u64));
    }
    b.check_word(w)
}

/// `f(S) = 1` iff `S = ∅` or `w[S] ∈ L(b)`.
pub fn characteristic(b: &Nfa, w: &[SymbolId]) -> Result<SetFunction> {
    check_word(b, w)?;
    let words = b.num_states().div_ceil(64);
    let reach = subset_reach(b, w);
    let fin = b.final_state();
    let table = (0..1usize << w.len())
        .map(|s| {
            let hit = reach[s * words + fin / 64] >> (fin % 64) & 1 == 1;
            i128::from(s == 0 || hit)
        })
        .collect();
    SetFunction::new(w.len(), table)
}

fn fold_all(fs: &[SetFunction]) -> Result<SetFunction> {
    let mut it = fs.iter();
    let first = it
        .next()
        .ok_or_else(|| Error::input("need at least one automaton"))?;
    it.try_fold(first.clone(), |acc, f| convolve(&acc, f))
}

/// Is `w` in the shuffle of `L(b_1) ∪ {ε}, …, L(b_t) ∪ {ε}`?
pub fn shuffle_membership(bs: &[Nfa], w: &[SymbolId]) -> Result<bool> {
    if bs.is_empty() {
        return Err(Error::input("need at least one automaton"));
    }
    if w.is_empty() {
        for b in bs {
            check_word(b, w)?;
        }
        return Ok(true);
    }
    let fs = bs
        .iter()
        .map(|b| characteristic(b, w))
        .collect::<Result<Vec<_>>>()?;
    let total = fold_all(&fs)?;
    Ok(total.get(total.full_mask()) > 0)
}

/// A split of the positions of `w` among the automata, `assignment[pos]` =
/// automaton index, or `None` if `w` is not in the shuffle.
pub fn shuffle_certificate(bs: &[Nfa], w: &[SymbolId]) -> Result<Option<Vec<usize>>> {
    if bs.is_empty() {
        return Err(Error::input("need at least one automaton"));
    }
    if w.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let fs = bs
        .iter()
        .map(|b| characteristic(b, w))
        .collect::<Result<Vec<_>>>()?;
    let t = fs.len();
    // suffix[i] = f_i ∗ … ∗ f_{t-1}
    let mut suffix: Vec<SetFunction> = vec![fs[t - 1].clone()];
    for i in (0..t - 1).rev() {
        let next = convolve(&fs[i], suffix.last().unwrap())?;
        suffix.push(next);
    }
    suffix.reverse();
    let full = (1usize << w.len()) - 1;
    if suffix[0].get(full) <= 0 {
        return Ok(None);
    }
    let mut assignment = vec![usize::MAX; w.len()];
    let mut remaining = full;
    for i in 0..t {
        let chosen = if i + 1 == t {
            remaining
        } else {
            // submasks of `remaining`, largest first
            let mut u = remaining;
            loop {
                if fs[i].get(u) == 1 && suffix[i + 1].get(remaining ^ u) > 0 {
                    break u;
                }
                if u == 0 {
                    return Err(Error::Internal("certificate extraction failed".into()));
                }
                u = (u - 1) & remaining;
            }
        };
        if fs[i].get(chosen) != 1 {
            return Err(Error::Internal("certificate extraction failed".into()));
        }
        for (pos, slot) in assignment.iter_mut().enumerate() {
            if chosen >> pos & 1 == 1 {
                *slot = i;
            }
        }
        remaining ^= chosen;
    }
    Ok(Some(assignment))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::accepts;
    use proptest::prelude::*;

    fn naive(f: &SetFunction, g: &SetFunction) -> Vec<i128> {
        (0..1usize << f.k())
            .map(|s| {
                let mut acc = 0;
                let mut u = s;
                loop {
                    acc += f.get(u) * g.get(s ^ u);
                    if u == 0 {
                        break acc;
                    }
                    u = (u - 1) & s;
                }
            })
            .collect()
    }

    fn table_strategy(k: usize) -> impl Strategy<Value = SetFunction> {
        proptest::collection::vec(-5i128..=5, 1 << k)
            .prop_map(move |t| SetFunction::new(k, t).unwrap())
    }

    #[test]
    fn unit_is_identity() {
        let f = SetFunction::new(3, (0..8).map(|x| x * 3 - 7).collect()).unwrap();
        let e = SetFunction::unit(3).unwrap();
        assert_eq!(convolve(&f, &e).unwrap(), f);
        assert_eq!(convolve(&e, &f).unwrap(), f);
    }

    #[test]
    fn constant_one_counts_splits() {
        let one = SetFunction::new(2, vec![1; 4]).unwrap();
        let h = convolve(&one, &one).unwrap();
        assert_eq!(h.table(), &[1, 2, 2, 4]);
    }

    #[test]
    fn overflow_is_an_error() {
        let big = SetFunction::new(1, vec![i128::MAX, i128::MAX]).unwrap();
        assert!(matches!(convolve(&big, &big), Err(Error::Overflow(_))));
    }

    #[test]
    fn empty_ground_set() {
        let f = SetFunction::new(0, vec![3]).unwrap();
        let g = SetFunction::new(0, vec![-2]).unwrap();
        assert_eq!(convolve(&f, &g).unwrap().table(), &[-6]);
    }

    #[test]
    fn characteristic_of_single_b() {
        // w = "ab", b accepts exactly "b"
        let b = Nfa::with_state_count(2, 2, 0, 1, [(0, 1, 1)]).unwrap();
        let f = characteristic(&b, &[0, 1]).unwrap();
        assert_eq!(f.table(), &[1, 0, 1, 0]);
    }

    #[test]
    fn characteristic_handles_wide_automata() {
        // a chain of 70 states reading symbol 0
        let edges: Vec<_> = (0..69).map(|i| (i, 0, i + 1)).collect();
        let b = Nfa::with_state_count(70, 1, 0, 69, edges).unwrap();
        let f = characteristic(&b, &[0; 3]).unwrap();
        assert!(f.table()[1..].iter().all(|&v| v == 0));
        let edges: Vec<_> = (0..69).map(|i| (i, 0, i + 1)).collect();
        let b = Nfa::with_state_count(70, 1, 66, 69, edges).unwrap();
        let f = characteristic(&b, &[0; 3]).unwrap();
        assert_eq!(f.get(7), 1);
        assert_eq!(f.get(3), 0);
    }

    #[test]
    fn shuffle_basics() {
        let a = Nfa::with_state_count(2, 2, 0, 1, [(0, 0, 1)]).unwrap();
        let b = Nfa::with_state_count(2, 2, 0, 1, [(0, 1, 1)]).unwrap();
        assert!(shuffle_membership(&[a.clone()], &[]).unwrap());
        assert!(shuffle_membership(&[a.clone(), b.clone()], &[1, 0]).unwrap());
        assert!(!shuffle_membership(&[a.clone(), b.clone()], &[0, 0]).unwrap());
        assert_eq!(
            shuffle_certificate(&[a.clone(), b.clone()], &[1, 0]).unwrap(),
            Some(vec![1, 0])
        );
        assert_eq!(shuffle_certificate(&[a, b], &[0, 0]).unwrap(), None);
    }

    fn small_nfa() -> impl Strategy<Value = Nfa> {
        (1usize..=4).prop_flat_map(|n| {
            (
                0..n,
                0..n,
                proptest::collection::vec((0..n, 0usize..2, 0..n), 0..8),
            )
                .prop_map(move |(i, f, e)| Nfa::with_state_count(n, 2, i, f, e).unwrap())
        })
    }

    proptest! {
        #[test]
        fn convolve_matches_naive((f, g) in (0usize..=6).prop_flat_map(|k| (table_strategy(k), table_strategy(k)))) {
            prop_assert_eq!(convolve(&f, &g).unwrap().table().to_vec(), naive(&f, &g));
        }

        #[test]
        fn associativity(f in table_strategy(4), g in table_strategy(4), h in table_strategy(4)) {
            let left = convolve(&convolve(&f, &g).unwrap(), &h).unwrap();
            let right = convolve(&f, &convolve(&g, &h).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn characteristic_matches_projection(b in small_nfa(), w in proptest::collection::vec(0usize..2, 0..7)) {
            let f = characteristic(&b, &w).unwrap();
            for s in 0..1usize << w.len() {
                let proj: Vec<_> = (0..w.len()).filter(|i| s >> i & 1 == 1).map(|i| w[i]).collect();
                let expect = s == 0 || accepts(&b, &proj).unwrap();
                prop_assert_eq!(f.get(s) == 1, expect);
            }
        }

        #[test]
        fn certificate_is_a_valid_split(bs in proptest::collection::vec(small_nfa(), 1..4), w in proptest::collection::vec(0usize..2, 0..7)) {
            let member = shuffle_membership(&bs, &w).unwrap();
            let cert = shuffle_certificate(&bs, &w).unwrap();
            prop_assert_eq!(member, cert.is_some());
            if let Some(assign) = cert {
                for (i, b) in bs.iter().enumerate() {
                    let proj: Vec<_> = (0..w.len()).filter(|&p| assign[p] == i).map(|p| w[p]).collect();
                    prop_assert!(proj.is_empty() || accepts(b, &proj).unwrap());
                }
            }
        }

        #[test]
        fn adding_epsilon_automaton_is_monotone(bs in proptest::collection::vec(small_nfa(), 1..3), w in proptest::collection::vec(0usize..2, 0..6)) {
            let before = shuffle_membership(&bs, &w).unwrap();
            let mut more = bs.clone();
            more.push(Nfa::with_state_count(1, 2, 0, 0, []).unwrap());
            let after = shuffle_membership(&more, &w).unwrap();
            prop_assert!(!before || after);
        }
    }
}
