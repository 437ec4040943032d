//! Generated instances: solver, oracle and source-problem brute force agree.

use std::collections::BTreeSet;

use bcsolve_core::bcs::solve_bcs;
use bcsolve_core::generators::*;
use bcsolve_core::local::solve_bcsl_rr;
use bcsolve_core::oracles::{oracle_bcs, oracle_bcsl_rr, oracle_sm};
use bcsolve_core::random::{random_nfa, rng};
use bcsolve_core::shuffle::shuffle_membership;
use rand::Rng;

fn pattern_graphs() -> Vec<SimpleGraph> {
    (2..=4)
        .flat_map(graphs_up_to_iso)
        .filter(|g| (0..g.num_vertices()).all(|v| g.degree(v) > 0))
        .collect()
}

fn host_graphs() -> Vec<SimpleGraph> {
    (1..=4).flat_map(graphs_up_to_iso).collect()
}

#[test]
fn sgi_three_way() {
    assert_eq!(pattern_graphs().len(), 10);
    assert_eq!(host_graphs().len(), 18);
    let mut yes = 0;
    for g in &pattern_graphs() {
        for h in &host_graphs() {
            let inst = gen_sgi(g, h).unwrap();
            let want = brute_force_sgi(g, h);
            let got = solve_bcs(&inst.smcp, inst.cs).unwrap().is_yes();
            let oracle = oracle_bcs(&inst.smcp, inst.cs).unwrap();
            assert_eq!((got, oracle), (want, want), "{g:?} into {h:?}");
            yes += usize::from(want);
        }
    }
    assert!(yes > 20);
}

#[test]
fn setcov_three_way() {
    let mut r = rng(21);
    for _ in 0..120 {
        let n = r.gen_range(1..=6);
        let m = r.gen_range(1..=5);
        let family: Vec<BTreeSet<usize>> = (0..m)
            .map(|_| (0..n).filter(|_| r.gen_bool(0.35)).collect())
            .collect();
        if family.iter().all(|s| s.is_empty()) {
            continue;
        }
        let t = r.gen_range(1..=3);
        let inst = gen_setcov(&family, t).unwrap();
        let want = brute_force_setcov(&family, t);
        assert_eq!(
            shuffle_membership(&inst.automata, &inst.word).unwrap(),
            want
        );
        assert_eq!(oracle_sm(&inst.automata, &inst.word).unwrap(), want);
    }
}

fn random_cnf(r: &mut impl Rng, k: usize, l: usize) -> Cnf {
    let clauses = (0..l)
        .map(|_| {
            let width = r.gen_range(1..=3);
            (0..width)
                .map(|_| {
                    let v = r.gen_range(1..=k as i64);
                    if r.gen_bool(0.5) {
                        v
                    } else {
                        -v
                    }
                })
                .collect()
        })
        .collect();
    Cnf::new(k, clauses).unwrap()
}

#[test]
fn sat_three_way_and_memory_size() {
    let mut r = rng(22);
    for _ in 0..60 {
        let k = r.gen_range(1..=4);
        let l = r.gen_range(1..=4);
        let count = r.gen_range(1..=3);
        let formulas: Vec<Cnf> = (0..count).map(|_| random_cnf(&mut r, k, l)).collect();
        let inst = gen_3sat_cc(&formulas).unwrap();
        assert_eq!(inst.smcp.memory().num_states(), 2 * k + 2);
        assert_eq!(inst.cs, 2 * l);
        let want = formulas.iter().any(brute_force_sat);
        assert_eq!(solve_bcs(&inst.smcp, inst.cs).unwrap().is_yes(), want);
        assert_eq!(oracle_bcs(&inst.smcp, inst.cs).unwrap(), want);
    }
}

#[test]
fn kkclique_three_way_and_memory_size() {
    let mut r = rng(23);
    for _ in 0..60 {
        let k = r.gen_range(1..=3);
        let n = k * k;
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| u / k != v / k)
            .collect();
        let density = r.gen_range(0.4..0.95);
        let g = SimpleGraph::new(n, edges.into_iter().filter(|_| r.gen_bool(density))).unwrap();
        let inst = gen_kkclique(&g, k).unwrap();
        assert!(inst.smcp.memory().num_states() <= 2 * k * k * k);
        let want = brute_force_kkclique(&g, k);
        assert_eq!(solve_bcsl_rr(&inst.smcp, inst.cs).unwrap(), want, "{g:?}");
        assert_eq!(oracle_bcsl_rr(&inst.smcp, inst.cs).unwrap(), want);
    }
}

#[test]
fn bdfai_three_way() {
    let mut r = rng(24);
    for _ in 0..60 {
        let gamma = r.gen_range(1..=2);
        let n = r.gen_range(1..=3);
        let m = r.gen_range(1..=4);
        let dfas: Vec<_> = (0..n)
            .map(|_| {
                let states = r.gen_range(1..=3);
                random_nfa(&mut r, states, gamma, 0.4).unwrap()
            })
            .collect();
        let names: Vec<String> = (0..gamma).map(|a| format!("a{a}")).collect();
        let inst = gen_bdfai(&names, &dfas, m).unwrap();
        let want = brute_force_bdfai(&dfas, m);
        assert_eq!(solve_bcs(&inst.smcp, inst.cs).unwrap().is_yes(), want);
        assert_eq!(oracle_bcs(&inst.smcp, inst.cs).unwrap(), want);
    }
}
