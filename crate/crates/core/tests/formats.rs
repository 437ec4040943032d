use bcsolve_core::format::*;
use bcsolve_core::generators::*;
use bcsolve_core::random::{random_smcp, rng, SmcpShape};
use proptest::prelude::*;

proptest! {
    #[test]
    fn random_programs_round_trip(seed in any::<u64>()) {
        let s = random_smcp(&mut rng(seed), &SmcpShape::default()).unwrap();
        prop_assert_eq!(parse_smcp(&emit_smcp(&s)).unwrap(), s);
    }
}

#[test]
fn generator_outputs_reparse() {
    let k3 = SimpleGraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let sgi = gen_sgi(&k3, &k3).unwrap().smcp;
    assert_eq!(parse_smcp(&emit_smcp(&sgi)).unwrap(), sgi);

    let f = Cnf::new(2, vec![vec![1, -2], vec![2]]).unwrap();
    let sat = gen_3sat_cc(&[f]).unwrap().smcp;
    assert_eq!(parse_smcp(&emit_smcp(&sat)).unwrap(), sat);

    let grid = SimpleGraph::new(4, [(0, 2), (1, 3)]).unwrap();
    let rr = gen_kkclique(&grid, 2).unwrap().smcp;
    assert_eq!(parse_smcp(&emit_smcp(&rr)).unwrap(), rr);

    let fam = vec![[0, 1].into(), [1, 2].into()];
    let sm = gen_setcov(&fam, 2).unwrap();
    assert_eq!(parse_shuffle(&emit_shuffle(&sm)).unwrap(), sm);
}

#[test]
fn whitespace_is_not_significant() {
    let text = "alphabet:a\nmemory:\nstates: q\ninit: q\nfinal: q\ntrans:q a q;;\nthread 1:\n states:p\n init:p\n final:p\n trans:\n";
    let s = parse_smcp(text).unwrap();
    assert_eq!(s.memory().transitions(), &[(0, 0, 0)]);
    assert!(s.threads()[0].transitions().is_empty());
}
