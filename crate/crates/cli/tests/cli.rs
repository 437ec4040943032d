use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn bcsolve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bcsolve"))
        .args(args)
        .output()
        .expect("run bcsolve")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

/// Writes `text` to a per-test scratch file and returns its path.
fn scratch(name: &str, text: &str) -> String {
    let mut p = std::env::temp_dir();
    p.push(format!("bcsolve-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn sgi_triangle_is_yes_for_solver_and_oracle() {
    let gen = bcsolve(&["gen", "sgi", &fixture("k3.graph"), &fixture("k3.graph")]);
    assert_eq!(code(&gen), 0);
    let text = stdout(&gen);
    assert!(text.starts_with("# cs 6\n"));
    let inst = scratch("sgi.smcp", &text);
    let solve = bcsolve(&["solve", "bcs", &inst, "--cs", "6"]);
    assert_eq!(code(&solve), 0);
    let report = stdout(&solve);
    assert!(report.contains("answer: YES"));
    assert!(report.contains("witness: "));
    assert_eq!(code(&bcsolve(&["oracle", "bcs", &inst, "--cs", "6"])), 0);

    let gen = bcsolve(&["gen", "sgi", &fixture("k3.graph"), &fixture("path3.graph")]);
    let inst = scratch("sgi-no.smcp", &stdout(&gen));
    assert_eq!(code(&bcsolve(&["solve", "bcs", &inst, "--cs", "6"])), 1);
    assert_eq!(code(&bcsolve(&["oracle", "bcs", &inst, "--cs", "6"])), 1);
}

#[test]
fn sdim_of_two_node_graph() {
    let out = bcsolve(&["sdim", &fixture("two.sg")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("sdim: 3\n"));
    let out = bcsolve(&["sdim", "--oracle", &fixture("two.sg")]);
    assert_eq!(stdout(&out), "sdim: 3\n");
    let out = bcsolve(&["cw", &fixture("two.sg"), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cw"], 3);
}

#[test]
fn local_problems_on_ping() {
    let inst = fixture("ping.smcp");
    for (args, want) in [
        (vec!["bcsl-sd", "--sdim", "0"], 1),
        (vec!["bcsl-sd", "--sdim", "1"], 0),
        (vec!["bcsl-any", "--cs", "1"], 1),
        (vec!["bcsl-any", "--cs", "2"], 0),
        (vec!["bcsl-rr", "--cs", "1"], 1),
        (vec!["bcs", "--cs", "1"], 1),
        (vec!["bcs", "--cs", "2"], 0),
        (vec!["cs"], 0),
    ] {
        for mode in ["solve", "oracle"] {
            let mut full = vec![mode, args[0], inst.as_str()];
            full.extend(&args[1..]);
            assert_eq!(code(&bcsolve(&full)), want, "{full:?}");
        }
    }
    let graph = fixture("pingpong.sg");
    for mode in ["solve", "oracle"] {
        let out = bcsolve(&[mode, "bcsl-fix", &inst, "--graph", &graph]);
        assert_eq!(code(&out), 0);
    }
    let out = bcsolve(&["oracle", "bcsl-sd", &inst, "--sdim", "1"]);
    assert!(stdout(&out).contains("owners: 1 2 1"));
}

#[test]
fn shuffle_membership_and_setcov() {
    let out = bcsolve(&["solve", "sm", &fixture("split.sm")]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("assignment: "));
    assert_eq!(code(&bcsolve(&["oracle", "sm", &fixture("split.sm")])), 0);
    let out = bcsolve(&["solve", "sm", &fixture("split.sm"), "--word", "a a"]);
    assert_eq!(code(&out), 1);

    let gen = bcsolve(&["gen", "setcov", &fixture("family.sets"), "--sets", "2"]);
    assert_eq!(code(&gen), 0);
    let inst = scratch("cover.sm", &stdout(&gen));
    assert_eq!(code(&bcsolve(&["solve", "sm", &inst])), 0);
    let gen = bcsolve(&["gen", "setcov", &fixture("family.sets"), "--sets", "1"]);
    let inst = scratch("cover-no.sm", &stdout(&gen));
    assert_eq!(code(&bcsolve(&["solve", "sm", &inst])), 1);
    assert_eq!(code(&bcsolve(&["oracle", "sm", &inst])), 1);
}

#[test]
fn other_generators() {
    let gen = bcsolve(&["gen", "3sat-cc", &fixture("unsat.cnf"), &fixture("sat.cnf")]);
    assert_eq!(code(&gen), 0);
    let inst = scratch("sat.smcp", &stdout(&gen));
    assert_eq!(code(&bcsolve(&["solve", "bcs", &inst, "--cs", "4"])), 0);
    let gen = bcsolve(&["gen", "3sat-cc", &fixture("unsat.cnf")]);
    let inst = scratch("unsat.smcp", &stdout(&gen));
    assert_eq!(code(&bcsolve(&["solve", "bcs", &inst, "--cs", "4"])), 1);

    let gen = bcsolve(&["gen", "kkclique", &fixture("grid2.graph"), "--k", "2"]);
    assert_eq!(code(&gen), 0);
    let inst = scratch("clique.smcp", &stdout(&gen));
    assert_eq!(code(&bcsolve(&["solve", "bcsl-rr", &inst, "--cs", "2"])), 0);
    assert_eq!(
        code(&bcsolve(&["oracle", "bcsl-rr", &inst, "--cs", "2"])),
        0
    );

    let gen = bcsolve(&["gen", "bdfai", &fixture("words.aut"), "--length", "2"]);
    assert_eq!(code(&gen), 0);
    let inst = scratch("bdfai.smcp", &stdout(&gen));
    assert_eq!(code(&bcsolve(&["solve", "bcs", &inst, "--cs", "4"])), 0);
    assert_eq!(
        code(&bcsolve(&[
            "gen",
            "sgi",
            &fixture("two.sg"),
            &fixture("k3.graph")
        ])),
        2
    );
}

#[test]
fn solve_and_oracle_agree_on_random_corpus() {
    for seed in 0..12u64 {
        let gen = bcsolve(&[
            "gen",
            "random",
            "--seed",
            &seed.to_string(),
            "--memory",
            "3",
            "--thread-states",
            "3",
        ]);
        let inst = scratch(&format!("rand{seed}.smcp"), &stdout(&gen));
        for args in [
            vec!["bcs", "--cs", "2"],
            vec!["bcsl-sd", "--sdim", "1"],
            vec!["bcsl-any", "--cs", "1"],
            vec!["bcsl-rr", "--cs", "1"],
            vec!["cs"],
        ] {
            let mut s = vec!["solve", args[0], inst.as_str()];
            s.extend(&args[1..]);
            let mut o = s.clone();
            o[0] = "oracle";
            assert_eq!(
                code(&bcsolve(&s)),
                code(&bcsolve(&o)),
                "seed {seed} {args:?}"
            );
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let a = bcsolve(&["gen", "random", "--seed", "5"]);
    let b = bcsolve(&["gen", "random", "--seed", "5"]);
    assert_eq!(stdout(&a), stdout(&b));
    let inst = scratch("det.smcp", &stdout(&a));
    let x = bcsolve(&["solve", "bcs", &inst, "--cs", "3", "--json", "--jobs", "1"]);
    let y = bcsolve(&["solve", "bcs", &inst, "--cs", "3", "--json", "--jobs", "4"]);
    assert_eq!(stdout(&x), stdout(&y));
}

#[test]
fn errors_map_to_exit_codes() {
    let bad = scratch(
        "bad.smcp",
        "alphabet: a\nmemory:\n  states: q\n  init: q\n  final: q\n  trans: q a\n",
    );
    let out = bcsolve(&["solve", "bcs", &bad, "--cs", "1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 6"));
    assert_eq!(code(&bcsolve(&["solve", "bcs", &fixture("ping.smcp")])), 2);
    assert_eq!(code(&bcsolve(&["frobnicate"])), 2);
    assert_eq!(
        code(&bcsolve(&["sdim", &fixture("two.sg"), "--cap", "1"])),
        3
    );
    assert_eq!(
        code(&bcsolve(&[
            "oracle",
            "cs",
            &fixture("ping.smcp"),
            "--cap",
            "2"
        ])),
        3
    );
}

#[test]
fn conversions_round_trip() {
    let g = fixture("pingpong.sg");
    let p = scratch("pp.cp", "1 2 -> 3\n");
    let out = bcsolve(&[
        "convert",
        "process-to-carving",
        "--graph",
        &g,
        "--process",
        &p,
    ]);
    assert_eq!(code(&out), 0);
    let carving = scratch("pp.carving", &stdout(&out));
    let out = bcsolve(&[
        "convert",
        "carving-to-process",
        "--graph",
        &g,
        "--carving",
        &carving,
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("1 2 -> 3"));
}

#[test]
fn bench_runs() {
    let out = bcsolve(&[
        "bench", "--seed", "3", "--kmin", "4", "--kmax", "6", "--csmax", "2", "--reps", "2",
        "--json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["shuffle"].as_array().unwrap().len(), 3);
}
