//! `bcsolve`: solvers, oracles, generators and benchmarks on the command line.
//!
//! Exit status: 0 yes or success, 1 no, 2 usage, parse or input error,
//! 3 resource cap hit.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bcsolve_core::automata::{product_reach, Smcp};
use bcsolve_core::bcs::{solve_bcs_with, BcsAnswer, BcsOptions};
use bcsolve_core::format::*;
use bcsolve_core::generators::*;
use bcsolve_core::local::*;
use bcsolve_core::oracles::*;
use bcsolve_core::random::{random_nfa, random_smcp, random_word, rng, SmcpShape};
use bcsolve_core::sched::*;
use bcsolve_core::shuffle::{shuffle_certificate, shuffle_membership};
use bcsolve_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "bcsolve",
    version,
    about = "Bounded context-switching analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a problem with the parameterized solver.
    Solve(ProblemArgs),
    /// Decide a problem with the brute-force oracle.
    Oracle(ProblemArgs),
    /// Scheduling dimension of a graph, with an optimal contraction process.
    Sdim(GraphArgs),
    /// Carving width of the undirected projection of a graph.
    Cw(GraphArgs),
    /// Convert between carving decompositions and contraction processes.
    #[command(subcommand)]
    Convert(ConvertCommand),
    /// Emit generated instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Time the solvers on seeded random instances.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    Bcs,
    Sm,
    BcslSd,
    BcslFix,
    BcslRr,
    BcslAny,
    Cs,
}

#[derive(Args)]
struct ProblemArgs {
    problem: Problem,
    /// Instance file (.smcp, or a shuffle file for `sm`).
    input: PathBuf,
    /// Context-switch budget (bcs, bcsl-rr, bcsl-any).
    #[arg(long)]
    cs: Option<usize>,
    /// Scheduling-dimension bound (bcsl-sd).
    #[arg(long)]
    sdim: Option<usize>,
    /// Scheduling graph file (bcsl-fix).
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Contraction process file (bcsl-fix); optimal one if omitted.
    #[arg(long)]
    process: Option<PathBuf>,
    /// Word for `sm`, overriding the file's `word:` line.
    #[arg(long)]
    word: Option<String>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Search cap; exceeding it exits with status 3.
    #[arg(long)]
    cap: Option<u64>,
    /// Machine-readable report.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GraphArgs {
    /// Graph file (.sg).
    graph: PathBuf,
    /// Use exhaustive enumeration instead of the subset dynamic program.
    #[arg(long)]
    oracle: bool,
    /// Node cap.
    #[arg(long)]
    cap: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum ConvertCommand {
    /// Contraction process from a carving decomposition.
    CarvingToProcess {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        carving: PathBuf,
    },
    /// Carving decomposition from a contraction process.
    ProcessToCarving {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        process: PathBuf,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Subgraph isomorphism of PATTERN into HOST.
    Sgi { pattern: PathBuf, host: PathBuf },
    /// Set cover with exactly `--sets` members (shuffle instance).
    Setcov {
        family: PathBuf,
        #[arg(long)]
        sets: usize,
    },
    /// Cross-composition of DIMACS formulas.
    #[command(name = "3sat-cc")]
    ThreeSatCc {
        #[arg(required = true)]
        formulas: Vec<PathBuf>,
    },
    /// Multicolored clique on a k×k grid graph, for round robin.
    Kkclique {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Bounded automata intersection.
    Bdfai {
        automata: PathBuf,
        /// Word length.
        #[arg(long)]
        length: usize,
    },
    /// Random program.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        memory: usize,
        #[arg(long, default_value_t = 3)]
        threads: usize,
        #[arg(long, default_value_t = 4)]
        thread_states: usize,
        #[arg(long, default_value_t = 3)]
        symbols: usize,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Word lengths for the shuffle benchmark.
    #[arg(long, default_value_t = 10)]
    kmin: usize,
    #[arg(long, default_value_t = 16)]
    kmax: usize,
    /// Largest budget for the bounded context-switching benchmark.
    #[arg(long, default_value_t = 6)]
    csmax: usize,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<Report, Failure>;

/// What a command prints, and whether it answered no.
struct Report {
    negative: bool,
    text: String,
    json: Value,
    as_json: bool,
}

impl Report {
    fn answer(yes: bool, lines: Vec<(&str, String)>, json: Value, as_json: bool) -> Self {
        let mut text = format!("answer: {}\n", if yes { "YES" } else { "NO" });
        for (k, v) in lines {
            let _ = writeln!(text, "{k}: {v}");
        }
        Report {
            negative: !yes,
            text,
            json,
            as_json,
        }
    }

    fn output(text: String, json: Value, as_json: bool) -> Self {
        Report {
            negative: false,
            text,
            json,
            as_json,
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Parses a file, prefixing parse errors with the file name.
fn load<T>(path: &Path, parse: impl FnOnce(&str) -> bcsolve_core::Result<T>) -> Result<T, Failure> {
    let text = read(path)?;
    parse(&text).map_err(|e| match e {
        Error::Parse { .. } => Failure::Usage(format!("{}: {e}", path.display())),
        other => Failure::Core(other),
    })
}

fn need<T>(value: Option<T>, flag: &str, problem: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("{problem} needs {flag}")))
}

fn cap_usize(cap: Option<u64>, default: usize) -> usize {
    cap.map_or(default, |c| usize::try_from(c).unwrap_or(usize::MAX))
}

fn owners_text(owners: &[usize]) -> String {
    owners
        .iter()
        .map(|o| o.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_problem(args: &ProblemArgs, oracle: bool) -> Outcome {
    let mode = if oracle { "oracle" } else { "solve" };
    let name = args
        .problem
        .to_possible_value()
        .unwrap()
        .get_name()
        .to_string();
    let base = |yes: bool| json!({ "command": mode, "problem": name, "answer": if yes { "yes" } else { "no" } });

    if args.problem == Problem::Sm {
        let (alphabet, automata, word) = load(&args.input, parse_shuffle_parts)?;
        let word = match &args.word {
            Some(w) => {
                parse_word(w, &alphabet).map_err(|e| Failure::Usage(format!("--word: {e}")))?
            }
            None => need(word, "a `word:` line or --word", "sm")?,
        };
        if oracle {
            let limits = OracleLimits::default();
            let yes = oracle_sm_with(&automata, &word, &limits)?;
            return Ok(Report::answer(yes, vec![], base(yes), args.json));
        }
        if shuffle_membership(&automata, &word)? {
            let cert = shuffle_certificate(&automata, &word)?
                .ok_or_else(|| Error::Internal("no certificate for a member word".into()))?;
            let owners: Vec<usize> = cert.iter().map(|t| t + 1).collect();
            let mut j = base(true);
            j["assignment"] = json!(owners);
            return Ok(Report::answer(
                true,
                vec![("assignment", owners_text(&owners))],
                j,
                args.json,
            ));
        }
        return Ok(Report::answer(false, vec![], base(false), args.json));
    }

    let s: Smcp = load(&args.input, parse_smcp)?;
    let limits = OracleLimits {
        max_configs: cap_usize(args.cap, OracleLimits::default().max_configs),
        max_schedules: cap_usize(args.cap, OracleLimits::default().max_schedules),
        ..Default::default()
    };
    let local = LocalOptions {
        cap: cap_usize(args.cap, LocalOptions::default().cap),
    };
    match args.problem {
        Problem::Bcs => {
            let cs = need(args.cs, "--cs", "bcs")?;
            if oracle {
                let yes = oracle_bcs_with(&s, cs, &limits)?;
                return Ok(Report::answer(yes, vec![], base(yes), args.json));
            }
            let opts = BcsOptions {
                jobs: args.jobs.unwrap_or(0),
                cap: args.cap.unwrap_or(BcsOptions::default().cap),
                ..Default::default()
            };
            match solve_bcs_with(&s, cs, &opts)? {
                BcsAnswer::Yes {
                    sequence,
                    assignment,
                    witness,
                } => {
                    let seq = sequence.display_with(s.memory()).to_string();
                    let owners: Vec<usize> = assignment.iter().map(|t| t + 1).collect();
                    let word = emit_witness(&witness, &s);
                    let mut j = base(true);
                    j["interface"] = json!(seq);
                    j["owners"] = json!(owners);
                    j["witness"] = json!(word);
                    j["switches"] = json!(witness.context_switches());
                    let lines = vec![
                        ("interface", seq),
                        ("owners", owners_text(&owners)),
                        ("witness", word),
                    ];
                    Ok(Report::answer(true, lines, j, args.json))
                }
                BcsAnswer::No => Ok(Report::answer(false, vec![], base(false), args.json)),
            }
        }
        Problem::BcslSd => {
            let sd = need(args.sdim, "--sdim", "bcsl-sd")?;
            if oracle {
                return Ok(match oracle_bcsl_sd_with(&s, sd, &limits)? {
                    Some(owners) => {
                        let mut j = base(true);
                        j["owners"] = json!(owners);
                        Report::answer(true, vec![("owners", owners_text(&owners))], j, args.json)
                    }
                    None => Report::answer(false, vec![], base(false), args.json),
                });
            }
            let yes = solve_bcsl_sd_with(&s, sd, &local)?;
            Ok(Report::answer(yes, vec![], base(yes), args.json))
        }
        Problem::BcslFix => {
            let g = load(
                &need(args.graph.clone(), "--graph", "bcsl-fix")?,
                parse_sched_graph,
            )?;
            let yes = if oracle {
                oracle_bcsl_fix_with(&s, &g, &limits)?
            } else {
                let p = match &args.process {
                    Some(path) => load(path, parse_process)?,
                    None => sdim_exact(&g)?.1,
                };
                solve_bcsl_fix_with(&s, &g, &p, &local)?
            };
            Ok(Report::answer(yes, vec![], base(yes), args.json))
        }
        Problem::BcslRr => {
            let cs = need(args.cs, "--cs", "bcsl-rr")?;
            let yes = if oracle {
                oracle_bcsl_rr_with(&s, cs, &limits)?
            } else {
                solve_bcsl_rr_with(&s, cs, &local)?
            };
            Ok(Report::answer(yes, vec![], base(yes), args.json))
        }
        Problem::BcslAny => {
            let cs = need(args.cs, "--cs", "bcsl-any")?;
            let yes = if oracle {
                oracle_bcsl_any_with(&s, cs, &limits)?
            } else {
                solve_bcsl_any_with(&s, cs, &local)?
            };
            Ok(Report::answer(yes, vec![], base(yes), args.json))
        }
        Problem::Cs => {
            if oracle {
                let min = oracle_min_switches(&s, &limits)?;
                let mut j = base(min.is_some());
                let mut lines = vec![];
                if let Some(m) = min {
                    j["min_switches"] = json!(m);
                    lines.push(("min switches", m.to_string()));
                }
                return Ok(Report::answer(min.is_some(), lines, j, args.json));
            }
            let yes = product_reach(&s, cap_usize(args.cap, 50_000_000))?;
            Ok(Report::answer(yes, vec![], base(yes), args.json))
        }
        Problem::Sm => unreachable!("handled above"),
    }
}

fn run_sdim(args: &GraphArgs) -> Outcome {
    let g = load(&args.graph, parse_sched_graph)?;
    if args.oracle {
        let limits = OracleLimits {
            max_graph_nodes: cap_usize(args.cap, OracleLimits::default().max_graph_nodes),
            ..Default::default()
        };
        let d = oracle_sdim_with(&g, &limits)?;
        return Ok(Report::output(
            format!("sdim: {d}\n"),
            json!({ "sdim": d }),
            args.json,
        ));
    }
    let (d, p) = sdim_exact_with_cap(&g, cap_usize(args.cap, DEFAULT_NODE_CAP))?;
    let text = format!("sdim: {d}\nprocess:\n{}", emit_process(&p));
    Ok(Report::output(
        text,
        json!({ "sdim": d, "process": p.steps }),
        args.json,
    ))
}

fn run_cw(args: &GraphArgs) -> Outcome {
    let g = to_undirected(&load(&args.graph, parse_sched_graph)?);
    if args.oracle {
        let limits = OracleLimits {
            max_graph_nodes: cap_usize(args.cap, OracleLimits::default().max_graph_nodes),
            ..Default::default()
        };
        let w = oracle_carving_width_with(&g, &limits)?;
        return Ok(Report::output(
            format!("cw: {w}\n"),
            json!({ "cw": w }),
            args.json,
        ));
    }
    let (w, d) = carving_width_with_cap(&g, cap_usize(args.cap, DEFAULT_NODE_CAP))?;
    let text = format!("cw: {w}\ndecomposition:\n{}", emit_carving(&d));
    let j = json!({ "cw": w, "leaves": d.leaves, "merges": d.merges });
    Ok(Report::output(text, j, args.json))
}

fn run_convert(cmd: &ConvertCommand) -> Outcome {
    match cmd {
        ConvertCommand::CarvingToProcess { graph, carving } => {
            let g = load(graph, parse_sched_graph)?;
            let d = load(carving, parse_carving)?;
            let width = carving_decomposition_width(&d, &to_undirected(&g))?;
            let p = carving_to_process(&d, &g)?;
            let degree = process_degree(&g, &p)?;
            let text = format!(
                "# carving width {width}, process degree {degree}\n{}",
                emit_process(&p)
            );
            Ok(Report::output(text, Value::Null, false))
        }
        ConvertCommand::ProcessToCarving { graph, process } => {
            let g = load(graph, parse_sched_graph)?;
            let p = load(process, parse_process)?;
            let degree = process_degree(&g, &p)?;
            let d = process_to_carving(&p, &g)?;
            let width = carving_decomposition_width(&d, &to_undirected(&g))?;
            let text = format!(
                "# process degree {degree}, carving width {width}\n{}",
                emit_carving(&d)
            );
            Ok(Report::output(text, Value::Null, false))
        }
    }
}

fn program_text(inst: &Generated) -> String {
    format!("# cs {}\n{}", inst.cs, emit_smcp(&inst.smcp))
}

fn run_gen(cmd: &GenCommand) -> Outcome {
    let text = match cmd {
        GenCommand::Sgi { pattern, host } => {
            let g = load(pattern, parse_simple_graph)?;
            let h = load(host, parse_simple_graph)?;
            program_text(&gen_sgi(&g, &h)?)
        }
        GenCommand::Setcov { family, sets } => {
            let fam = load(family, parse_set_family)?;
            emit_shuffle(&gen_setcov(&fam, *sets)?)
        }
        GenCommand::ThreeSatCc { formulas } => {
            let fs = formulas
                .iter()
                .map(|p| load(p, parse_cnf))
                .collect::<Result<Vec<_>, _>>()?;
            program_text(&gen_3sat_cc(&fs)?)
        }
        GenCommand::Kkclique { graph, k } => {
            let g = load(graph, parse_simple_graph)?;
            program_text(&gen_kkclique(&g, *k)?)
        }
        GenCommand::Bdfai { automata, length } => {
            let (alphabet, dfas) = load(automata, parse_automata)?;
            program_text(&gen_bdfai(&alphabet, &dfas, *length)?)
        }
        GenCommand::Random {
            seed,
            memory,
            threads,
            thread_states,
            symbols,
        } => {
            let shape = SmcpShape {
                max_memory: *memory,
                max_threads: *threads,
                max_thread_states: *thread_states,
                max_symbols: *symbols,
                ..Default::default()
            };
            if shape.max_memory == 0
                || shape.max_threads == 0
                || shape.max_thread_states == 0
                || shape.max_symbols == 0
            {
                return Err(Failure::Usage("sizes must be positive".into()));
            }
            format!(
                "# seed {seed}\n{}",
                emit_smcp(&random_smcp(&mut rng(*seed), &shape)?)
            )
        }
    };
    Ok(Report::output(text, Value::Null, false))
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.total_cmp(b));
    xs[xs.len() / 2]
}

fn run_bench(args: &BenchArgs) -> Outcome {
    if args.reps == 0 || args.kmin > args.kmax {
        return Err(Failure::Usage("need reps ≥ 1 and kmin ≤ kmax".into()));
    }
    let mut r = rng(args.seed);
    let mut text = String::from("shuffle membership (3 automata, 4 states)\n   k  median_ms\n");
    let mut sm_rows = Vec::new();
    for k in args.kmin..=args.kmax {
        let mut times = Vec::new();
        for _ in 0..args.reps {
            let bs = (0..3)
                .map(|_| random_nfa(&mut r, 4, 2, 0.4))
                .collect::<Result<Vec<_>, _>>()?;
            let w = random_word(&mut r, k, 2);
            let start = Instant::now();
            shuffle_membership(&bs, &w)?;
            times.push(start.elapsed().as_secs_f64() * 1e3);
        }
        let m = median(times);
        let _ = writeln!(text, "{k:>4}  {m:>9.3}");
        sm_rows.push(json!({ "k": k, "median_ms": m }));
    }
    let shape = SmcpShape {
        max_memory: 2,
        ..Default::default()
    };
    let instances = (0..args.reps.max(10))
        .map(|_| random_smcp(&mut r, &shape))
        .collect::<Result<Vec<_>, _>>()?;
    let opts = BcsOptions {
        jobs: args.jobs.unwrap_or(0),
        ..Default::default()
    };
    text.push_str("bounded context switching (memory ≤ 2 states)\n  cs  total_ms  yes\n");
    let mut bcs_rows = Vec::new();
    for cs in 0..=args.csmax {
        let start = Instant::now();
        let mut yes = 0;
        for s in &instances {
            yes += usize::from(solve_bcs_with(s, cs, &opts)?.is_yes());
        }
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let _ = writeln!(text, "{cs:>4}  {ms:>8.3}  {yes:>3}");
        bcs_rows.push(json!({ "cs": cs, "total_ms": ms, "yes": yes }));
    }
    let j = json!({ "seed": args.seed, "shuffle": sm_rows, "bcs": bcs_rows });
    Ok(Report::output(text, j, args.json))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = match &cli.command {
        Command::Solve(a) | Command::Oracle(a) => a.jobs,
        Command::Bench(a) => a.jobs,
        _ => None,
    };
    if let Some(j) = jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        // the pool is built once; failure only means one already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global();
    }
    let outcome = match &cli.command {
        Command::Solve(a) => run_problem(a, false),
        Command::Oracle(a) => run_problem(a, true),
        Command::Sdim(a) => run_sdim(a),
        Command::Cw(a) => run_cw(a),
        Command::Convert(c) => run_convert(c),
        Command::Gen(c) => run_gen(c),
        Command::Bench(a) => run_bench(a),
    };
    match outcome {
        Ok(report) => {
            if report.as_json {
                println!("{}", report.json);
            } else {
                print!("{}", report.text);
            }
            ExitCode::from(u8::from(report.negative))
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Resource { .. } | Error::Overflow(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
