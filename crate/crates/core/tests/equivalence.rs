//! Solvers against their brute-force oracles on seeded random corpora.

use bcsolve_core::automata::product_reach;
use bcsolve_core::bcs::{solve_bcs, solve_bcs_with, BcsAnswer, BcsOptions};
use bcsolve_core::local::{
    round_robin_graph, solve_bcsl_any, solve_bcsl_fix, solve_bcsl_rr, solve_bcsl_sd,
};
use bcsolve_core::oracles::{
    oracle_bcs, oracle_bcsl_any, oracle_bcsl_fix, oracle_bcsl_rr, oracle_bcsl_sd, oracle_sm,
};
use bcsolve_core::random::{random_nfa, random_smcp, random_word, rng, SmcpShape};
use bcsolve_core::sched::{scheduling_graph, sdim_exact};
use bcsolve_core::shuffle::shuffle_membership;
use rand::Rng;

fn tiny() -> SmcpShape {
    SmcpShape {
        max_memory: 3,
        max_threads: 3,
        max_thread_states: 3,
        max_symbols: 2,
        density: 0.3,
    }
}

#[test]
fn bcs_matches_oracle() {
    let mut r = rng(11);
    let mut yes = 0;
    for _ in 0..150 {
        let s = random_smcp(&mut r, &SmcpShape::default()).unwrap();
        let mut prev = false;
        for cs in 0..=4 {
            let got = solve_bcs(&s, cs).unwrap();
            assert_eq!(got.is_yes(), oracle_bcs(&s, cs).unwrap(), "cs={cs} {s:?}");
            assert!(!prev || got.is_yes(), "monotonicity");
            prev = got.is_yes();
            if let BcsAnswer::Yes { witness, .. } = &got {
                assert!(s.accepts_word(witness).unwrap());
                assert!(witness.context_switches() <= cs);
                yes += 1;
            }
        }
        let unpruned = BcsOptions {
            prune: false,
            ..Default::default()
        };
        assert_eq!(
            solve_bcs_with(&s, 2, &unpruned).unwrap().is_yes(),
            solve_bcs(&s, 2).unwrap().is_yes()
        );
    }
    assert!(yes > 50, "corpus too one-sided: {yes}");
}

#[test]
fn bcs_oracle_saturates_to_product_reach() {
    let mut r = rng(12);
    for _ in 0..100 {
        let s = random_smcp(&mut r, &tiny()).unwrap();
        let cs = s.product_size() as usize;
        assert_eq!(
            oracle_bcs(&s, cs).unwrap(),
            product_reach(&s, 1 << 20).unwrap()
        );
    }
}

#[test]
fn shuffle_matches_oracle() {
    let mut r = rng(13);
    for _ in 0..200 {
        let symbols = r.gen_range(1..=3);
        let t = r.gen_range(1..=4);
        let bs: Vec<_> = (0..t)
            .map(|_| {
                let n = r.gen_range(1..=5);
                random_nfa(&mut r, n, symbols, 0.3).unwrap()
            })
            .collect();
        let k = r.gen_range(0..=8);
        let w = random_word(&mut r, k, symbols);
        assert_eq!(
            shuffle_membership(&bs, &w).unwrap(),
            oracle_sm(&bs, &w).unwrap()
        );
    }
}

#[test]
fn bcsl_sd_matches_oracle() {
    let mut r = rng(14);
    let mut yes = 0;
    for _ in 0..120 {
        let s = random_smcp(&mut r, &tiny()).unwrap();
        for sd in 0..=2 {
            let want = oracle_bcsl_sd(&s, sd).unwrap();
            assert_eq!(
                solve_bcsl_sd(&s, sd).unwrap(),
                want.is_some(),
                "sd={sd} {s:?} {want:?}"
            );
            yes += usize::from(want.is_some());
        }
    }
    assert!(yes > 30, "corpus too one-sided: {yes}");
}

#[test]
fn bcsl_any_matches_oracle() {
    let mut r = rng(15);
    for _ in 0..120 {
        let s = random_smcp(&mut r, &tiny()).unwrap();
        for cs in 0..=2 {
            assert_eq!(
                solve_bcsl_any(&s, cs).unwrap(),
                oracle_bcsl_any(&s, cs).unwrap(),
                "cs={cs} {s:?}"
            );
        }
    }
}

#[test]
fn bcsl_fix_matches_oracle() {
    let mut r = rng(16);
    let mut yes = 0;
    for _ in 0..120 {
        let s = random_smcp(&mut r, &tiny()).unwrap();
        let t = s.num_threads();
        for _ in 0..4 {
            let len = r.gen_range(1..=5);
            let mut owners = vec![r.gen_range(1..=t)];
            while owners.len() < len && t > 1 {
                let next = r.gen_range(1..=t);
                if next != *owners.last().unwrap() {
                    owners.push(next);
                }
            }
            let g = scheduling_graph(&owners).unwrap();
            let (_, p) = sdim_exact(&g).unwrap();
            let want = oracle_bcsl_fix(&s, &g).unwrap();
            assert_eq!(
                solve_bcsl_fix(&s, &g, &p).unwrap(),
                want,
                "{owners:?} {s:?}"
            );
            yes += usize::from(want);
        }
    }
    assert!(yes > 20, "corpus too one-sided: {yes}");
}

#[test]
fn bcsl_rr_matches_oracle_and_fix() {
    let mut r = rng(17);
    for _ in 0..120 {
        let s = random_smcp(&mut r, &tiny()).unwrap();
        for cs in 1..=2 {
            let got = solve_bcsl_rr(&s, cs).unwrap();
            assert_eq!(got, oracle_bcsl_rr(&s, cs).unwrap(), "cs={cs} {s:?}");
            let (g, p) = round_robin_graph(s.num_threads(), cs).unwrap();
            assert_eq!(got, solve_bcsl_fix(&s, &g, &p).unwrap());
        }
    }
}
