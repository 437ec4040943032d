//! Line-oriented text formats.
//!
//! `#` starts a comment everywhere. Names are whitespace-free tokens that
//! avoid `#`, `;`, `:` and `@`. Parse errors carry 1-based line and column.
//!
//! Program (`.smcp`):
//!
//! ```text
//! alphabet: a b
//! memory:
//!   states: q0 q1
//!   init: q0
//!   final: q1
//!   trans: q0 a q1; q1 b q0
//! thread 1:
//!   states: p0 p1
//!   init: p0
//!   final: p1
//!   trans: p0 a p1
//! ```
//!
//! A shuffle instance uses the same blocks without `memory:` and adds a
//! `word:` line. Graphs (`.sg`) are a `nodes:` line followed by `u v w` arc
//! lines; processes (`.cp`) are `a b -> n` lines; carving decompositions are a
//! `leaves:` line followed by `a b -> n` lines; witnesses are `sym@thread`
//! tokens with 1-based threads.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::automata::{Nfa, Smcp, SymbolId, TaggedWord};
use crate::error::{Error, Result};
use crate::generators::{Cnf, ShuffleInstance, SimpleGraph};
use crate::sched::{CarvingDecomposition, ContractionProcess, NodeId, SchedGraph};

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.column, msg)
    }
}

#[derive(Debug)]
struct Line<'a> {
    number: usize,
    /// Text before the first `:` (whole line if there is none).
    head: &'a str,
    /// Tokens after the first `:`, or of the whole line.
    rest: Vec<Token<'a>>,
    has_colon: bool,
}

impl Line<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.number, 1, msg)
    }
}

fn tokenize(text: &str, line: usize, offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices().chain([(text.len(), ' ')]) {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &text[s..i],
                    line,
                    column: offset + text[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    out
}

fn lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let number = i + 1;
        match body.find(':') {
            Some(c) => {
                let offset = body[..=c].chars().count();
                out.push(Line {
                    number,
                    head: body[..c].trim(),
                    rest: tokenize(&body[c + 1..], number, offset),
                    has_colon: true,
                });
            }
            None => out.push(Line {
                number,
                head: body.trim(),
                rest: tokenize(body, number, 0),
                has_colon: false,
            }),
        }
    }
    out
}

fn check_name(t: &Token) -> Result<()> {
    if t.text.contains([';', '@', ':']) {
        return Err(t.error(format!("name `{}` contains a reserved character", t.text)));
    }
    Ok(())
}

/// An automaton block under construction.
struct Block<'a> {
    header: usize,
    label: String,
    states: Option<Vec<Token<'a>>>,
    init: Option<Token<'a>>,
    final_state: Option<Token<'a>>,
    trans: Vec<[Token<'a>; 3]>,
}

impl<'a> Block<'a> {
    fn new(header: usize, label: String) -> Self {
        Block {
            header,
            label,
            states: None,
            init: None,
            final_state: None,
            trans: Vec::new(),
        }
    }

    fn feed(&mut self, line: &Line<'a>) -> Result<()> {
        let single = |what: &str| -> Result<Token<'a>> {
            match line.rest.as_slice() {
                [t] => Ok(*t),
                _ => Err(line.error(format!("`{what}:` takes exactly one state"))),
            }
        };
        match line.head {
            "states" => {
                if self.states.is_some() {
                    return Err(line.error("duplicate `states:` line"));
                }
                for t in &line.rest {
                    check_name(t)?;
                }
                self.states = Some(line.rest.clone());
            }
            "init" => self.init = Some(single("init")?),
            "final" => self.final_state = Some(single("final")?),
            "trans" => {
                // split on `;` tokens or on tokens that end with `;`
                let mut group: Vec<Token<'a>> = Vec::new();
                let mut flush = |group: &mut Vec<Token<'a>>, at: Option<Token<'a>>| -> Result<()> {
                    match group.as_slice() {
                        [] => Ok(()),
                        [a, b, c] => {
                            self.trans.push([*a, *b, *c]);
                            group.clear();
                            Ok(())
                        }
                        other => {
                            let t = other.first().copied().or(at).unwrap();
                            Err(t.error(format!(
                                "transition needs `src sym dst`, found {} token(s)",
                                other.len()
                            )))
                        }
                    }
                };
                for t in &line.rest {
                    let mut text = t.text;
                    let mut col = t.column;
                    while !text.is_empty() {
                        match text.find(';') {
                            Some(0) => {
                                flush(&mut group, Some(*t))?;
                                text = &text[1..];
                                col += 1;
                            }
                            Some(p) => {
                                group.push(Token {
                                    text: &text[..p],
                                    line: t.line,
                                    column: col,
                                });
                                col += text[..p].chars().count();
                                text = &text[p..];
                            }
                            None => {
                                group.push(Token {
                                    text,
                                    line: t.line,
                                    column: col,
                                });
                                text = "";
                            }
                        }
                    }
                }
                flush(&mut group, line.rest.last().copied())?;
            }
            other => return Err(line.error(format!("unknown key `{other}` in {}", self.label))),
        }
        Ok(())
    }

    fn build(self, symbols: &HashMap<&str, SymbolId>, num_symbols: usize) -> Result<Nfa> {
        let at = |msg: String| Error::parse(self.header, 1, msg);
        let states = self
            .states
            .ok_or_else(|| at(format!("{} has no `states:` line", self.label)))?;
        let mut ids: HashMap<&str, usize> = HashMap::new();
        for t in &states {
            if ids.insert(t.text, ids.len()).is_some() {
                return Err(t.error(format!("state `{}` declared twice", t.text)));
            }
        }
        let lookup = |t: &Token| -> Result<usize> {
            ids.get(t.text)
                .copied()
                .ok_or_else(|| t.error(format!("unknown state `{}`", t.text)))
        };
        let init = self
            .init
            .ok_or_else(|| at(format!("{} has no `init:` line", self.label)))?;
        let fin = self
            .final_state
            .ok_or_else(|| at(format!("{} has no `final:` line", self.label)))?;
        let mut trans = Vec::new();
        for [s, a, d] in &self.trans {
            let sym = symbols
                .get(a.text)
                .copied()
                .ok_or_else(|| a.error(format!("unknown symbol `{}`", a.text)))?;
            trans.push((lookup(s)?, sym, lookup(d)?));
        }
        let names = states.iter().map(|t| t.text.to_string()).collect();
        Nfa::new(names, num_symbols, lookup(&init)?, lookup(&fin)?, trans)
            .map_err(|e| at(format!("{}: {e}", self.label)))
    }
}

/// Automaton blocks plus the header lines of a program or shuffle file.
struct Document<'a> {
    alphabet: Vec<Token<'a>>,
    memory: Option<Block<'a>>,
    threads: Vec<Block<'a>>,
    word: Option<Vec<Token<'a>>>,
}

fn parse_document(text: &str, allow_memory: bool, allow_word: bool) -> Result<Document<'_>> {
    let mut doc = Document {
        alphabet: Vec::new(),
        memory: None,
        threads: Vec::new(),
        word: None,
    };
    let mut have_alphabet = false;
    // which block receives key lines: None, Some(None) memory, Some(Some(i)) thread
    let mut current: Option<Option<usize>> = None;
    for line in lines(text) {
        if !line.has_colon {
            return Err(line.error("expected `key: value`"));
        }
        let head: Vec<&str> = line.head.split_whitespace().collect();
        match head.as_slice() {
            ["alphabet"] => {
                if have_alphabet {
                    return Err(line.error("duplicate `alphabet:` line"));
                }
                let mut seen = BTreeSet::new();
                for t in &line.rest {
                    check_name(t)?;
                    if !seen.insert(t.text) {
                        return Err(t.error(format!("symbol `{}` declared twice", t.text)));
                    }
                }
                doc.alphabet = line.rest.clone();
                have_alphabet = true;
                current = None;
            }
            ["word"] if allow_word => {
                if doc.word.is_some() {
                    return Err(line.error("duplicate `word:` line"));
                }
                doc.word = Some(line.rest.clone());
                current = None;
            }
            ["memory"] if allow_memory => {
                if !line.rest.is_empty() {
                    return Err(line.rest[0].error("`memory:` starts a block"));
                }
                if doc.memory.is_some() {
                    return Err(line.error("duplicate memory block"));
                }
                doc.memory = Some(Block::new(line.number, "memory".into()));
                current = Some(None);
            }
            ["thread", n] => {
                let expected = doc.threads.len() + 1;
                if n.parse::<usize>().ok() != Some(expected) {
                    return Err(line.error(format!("expected `thread {expected}:`")));
                }
                if !line.rest.is_empty() {
                    return Err(line.rest[0].error("`thread <i>:` starts a block"));
                }
                doc.threads
                    .push(Block::new(line.number, format!("thread {expected}")));
                current = Some(Some(expected - 1));
            }
            _ => match current {
                Some(None) => doc.memory.as_mut().unwrap().feed(&line)?,
                Some(Some(i)) => doc.threads[i].feed(&line)?,
                None => return Err(line.error(format!("unexpected `{}:`", line.head))),
            },
        }
    }
    if !have_alphabet {
        return Err(Error::parse(1, 1, "missing `alphabet:` line"));
    }
    Ok(doc)
}

fn symbol_table<'a>(alphabet: &[Token<'a>]) -> HashMap<&'a str, SymbolId> {
    alphabet
        .iter()
        .enumerate()
        .map(|(i, t)| (t.text, i))
        .collect()
}

pub fn parse_smcp(text: &str) -> Result<Smcp> {
    let doc = parse_document(text, true, false)?;
    let symbols = symbol_table(&doc.alphabet);
    let n = doc.alphabet.len();
    let memory = doc
        .memory
        .ok_or_else(|| Error::parse(1, 1, "missing `memory:` block"))?
        .build(&symbols, n)?;
    if doc.threads.is_empty() {
        return Err(Error::parse(1, 1, "no `thread 1:` block"));
    }
    let threads = doc
        .threads
        .into_iter()
        .map(|b| b.build(&symbols, n))
        .collect::<Result<Vec<_>>>()?;
    let alphabet = doc.alphabet.iter().map(|t| t.text.to_string()).collect();
    Smcp::new(alphabet, memory, threads)
}

fn emit_block(out: &mut String, header: &str, a: &Nfa, alphabet: &[String]) {
    let _ = writeln!(out, "{header}:");
    let _ = writeln!(out, "  states: {}", a.state_names().join(" "));
    let _ = writeln!(out, "  init: {}", a.state_name(a.initial()));
    let _ = writeln!(out, "  final: {}", a.state_name(a.final_state()));
    let trans: Vec<String> = a
        .transitions()
        .iter()
        .map(|&(s, x, d)| format!("{} {} {}", a.state_name(s), alphabet[x], a.state_name(d)))
        .collect();
    let _ = writeln!(out, "  trans: {}", trans.join("; "));
}

pub fn emit_smcp(s: &Smcp) -> String {
    let mut out = format!("alphabet: {}\n", s.alphabet().join(" "));
    emit_block(&mut out, "memory", s.memory(), s.alphabet());
    for (i, a) in s.threads().iter().enumerate() {
        emit_block(&mut out, &format!("thread {}", i + 1), a, s.alphabet());
    }
    out
}

fn parse_automata_doc(doc: Document) -> Result<(Vec<String>, Vec<Nfa>, Option<Vec<SymbolId>>)> {
    let symbols = symbol_table(&doc.alphabet);
    let n = doc.alphabet.len();
    if doc.threads.is_empty() {
        return Err(Error::parse(1, 1, "no `thread 1:` block"));
    }
    let word = doc
        .word
        .map(|w| {
            w.iter()
                .map(|t| {
                    symbols
                        .get(t.text)
                        .copied()
                        .ok_or_else(|| t.error(format!("unknown symbol `{}`", t.text)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    let automata = doc
        .threads
        .into_iter()
        .map(|b| b.build(&symbols, n))
        .collect::<Result<Vec<_>>>()?;
    let alphabet = doc.alphabet.iter().map(|t| t.text.to_string()).collect();
    Ok((alphabet, automata, word))
}

/// Shuffle membership instance: alphabet, `word:` and one block per
/// automaton.
pub fn parse_shuffle(text: &str) -> Result<ShuffleInstance> {
    let (alphabet, automata, word) = parse_shuffle_parts(text)?;
    let word = word.ok_or_else(|| Error::parse(1, 1, "missing `word:` line"))?;
    Ok(ShuffleInstance {
        alphabet,
        automata,
        word,
    })
}

/// Like [`parse_shuffle`] but the `word:` line is optional.
pub fn parse_shuffle_parts(text: &str) -> Result<(Vec<String>, Vec<Nfa>, Option<Vec<SymbolId>>)> {
    parse_automata_doc(parse_document(text, false, true)?)
}

/// A whitespace-separated word over `alphabet`.
pub fn parse_word(text: &str, alphabet: &[String]) -> Result<Vec<SymbolId>> {
    tokenize(text, 1, 0)
        .iter()
        .map(|t| {
            alphabet
                .iter()
                .position(|a| a == t.text)
                .ok_or_else(|| t.error(format!("unknown symbol `{}`", t.text)))
        })
        .collect()
}

pub fn emit_shuffle(inst: &ShuffleInstance) -> String {
    let word: Vec<&str> = inst
        .word
        .iter()
        .map(|&x| inst.alphabet[x].as_str())
        .collect();
    let mut out = format!(
        "alphabet: {}\nword: {}\n",
        inst.alphabet.join(" "),
        word.join(" ")
    );
    for (i, a) in inst.automata.iter().enumerate() {
        emit_block(&mut out, &format!("thread {}", i + 1), a, &inst.alphabet);
    }
    out
}

/// A list of automata over a shared alphabet, without memory or word.
pub fn parse_automata(text: &str) -> Result<(Vec<String>, Vec<Nfa>)> {
    let (alphabet, automata, _) = parse_automata_doc(parse_document(text, false, false)?)?;
    Ok((alphabet, automata))
}

pub fn emit_automata(alphabet: &[String], automata: &[Nfa]) -> String {
    let mut out = format!("alphabet: {}\n", alphabet.join(" "));
    for (i, a) in automata.iter().enumerate() {
        emit_block(&mut out, &format!("thread {}", i + 1), a, alphabet);
    }
    out
}

fn parse_number<T: std::str::FromStr>(t: &Token, what: &str) -> Result<T> {
    t.text
        .parse()
        .map_err(|_| t.error(format!("expected {what}, found `{}`", t.text)))
}

fn parse_nodes_line<'a>(ls: &[Line<'a>], key: &str) -> Result<Vec<NodeId>> {
    let first = ls
        .first()
        .ok_or_else(|| Error::parse(1, 1, format!("missing `{key}:` line")))?;
    if !first.has_colon || first.head != key {
        return Err(first.error(format!("expected `{key}:`")));
    }
    let mut seen = BTreeSet::new();
    first
        .rest
        .iter()
        .map(|t| {
            let n: NodeId = parse_number(t, "a node number")?;
            if !seen.insert(n) {
                return Err(t.error(format!("node {n} listed twice")));
            }
            Ok(n)
        })
        .collect()
}

pub fn parse_sched_graph(text: &str) -> Result<SchedGraph> {
    let ls = lines(text);
    let nodes = parse_nodes_line(&ls, "nodes")?;
    let declared: BTreeSet<NodeId> = nodes.iter().copied().collect();
    let mut arcs = Vec::new();
    for line in &ls[1..] {
        let [u, v, w] = line.rest.as_slice() else {
            return Err(line.error("arc line needs `u v w`"));
        };
        if line.has_colon {
            return Err(line.error("arc line needs `u v w`"));
        }
        let (a, b): (NodeId, NodeId) = (parse_number(u, "a node")?, parse_number(v, "a node")?);
        for (x, t) in [(a, u), (b, v)] {
            if !declared.contains(&x) {
                return Err(t.error(format!("node {x} is not declared")));
            }
        }
        if a == b {
            return Err(u.error(format!("self-loop on node {a}")));
        }
        arcs.push((a, b, parse_number(w, "a weight")?));
    }
    SchedGraph::new(nodes, arcs)
}

pub fn emit_sched_graph(g: &SchedGraph) -> String {
    g.to_string()
}

fn parse_merge_lines(ls: &[Line]) -> Result<Vec<(NodeId, NodeId, NodeId)>> {
    ls.iter()
        .map(|line| {
            let [a, b, arrow, n] = line.rest.as_slice() else {
                return Err(line.error("expected `a b -> n`"));
            };
            if line.has_colon || arrow.text != "->" {
                return Err(line.error("expected `a b -> n`"));
            }
            Ok((
                parse_number(a, "a node")?,
                parse_number(b, "a node")?,
                parse_number(n, "a node")?,
            ))
        })
        .collect()
}

pub fn parse_process(text: &str) -> Result<ContractionProcess> {
    Ok(ContractionProcess {
        steps: parse_merge_lines(&lines(text))?,
    })
}

pub fn emit_process(p: &ContractionProcess) -> String {
    p.to_string()
}

pub fn parse_carving(text: &str) -> Result<CarvingDecomposition> {
    let ls = lines(text);
    let leaves = parse_nodes_line(&ls, "leaves")?;
    Ok(CarvingDecomposition {
        leaves: leaves.into_iter().collect(),
        merges: parse_merge_lines(&ls[1..])?,
    })
}

pub fn emit_carving(d: &CarvingDecomposition) -> String {
    d.to_string()
}

/// Witness word: `sym@thread` tokens, threads 1-based.
pub fn parse_witness(text: &str, s: &Smcp) -> Result<TaggedWord> {
    let mut word = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        for t in tokenize(body, i + 1, 0) {
            let (sym, thread) = t
                .text
                .rsplit_once('@')
                .ok_or_else(|| t.error(format!("expected `sym@thread`, found `{}`", t.text)))?;
            let x = s
                .symbol_id(sym)
                .ok_or_else(|| t.error(format!("unknown symbol `{sym}`")))?;
            let th: usize = thread
                .parse()
                .ok()
                .filter(|&th| (1..=s.num_threads()).contains(&th))
                .ok_or_else(|| t.error(format!("no thread `{thread}`")))?;
            word.push((x, th - 1));
        }
    }
    Ok(TaggedWord(word))
}

pub fn emit_witness(w: &TaggedWord, s: &Smcp) -> String {
    let parts: Vec<String> =
        w.0.iter()
            .map(|&(x, th)| format!("{}@{}", s.alphabet()[x], th + 1))
            .collect();
    parts.join(" ")
}

/// DIMACS CNF; `c` lines are comments.
pub fn parse_cnf(text: &str) -> Result<Cnf> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let toks = tokenize(raw, i + 1, 0);
        let Some(first) = toks.first() else { continue };
        if first.text == "c" || first.text.starts_with('%') {
            continue;
        }
        if first.text == "p" {
            let [_, kind, v, c] = toks.as_slice() else {
                return Err(first.error("expected `p cnf <vars> <clauses>`"));
            };
            if kind.text != "cnf" {
                return Err(kind.error("expected `cnf`"));
            }
            header = Some((
                parse_number(v, "a variable count")?,
                parse_number(c, "a clause count")?,
            ));
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(first.error("clause before the `p cnf` header"));
        };
        for t in &toks {
            let lit: i64 = parse_number(t, "a literal")?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(t.error(format!("literal {lit} exceeds {vars} variables")));
            } else {
                current.push(lit);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| Error::parse(1, 1, "missing `p cnf` header"))?;
    if !current.is_empty() {
        clauses.push(current);
    }
    if clauses.len() != count {
        return Err(Error::parse(
            text.lines().count().max(1),
            1,
            format!("header announces {count} clauses, found {}", clauses.len()),
        ));
    }
    Cnf::new(vars, clauses)
}

pub fn emit_cnf(f: &Cnf) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars, f.clauses.len());
    for c in &f.clauses {
        for lit in c {
            let _ = write!(out, "{lit} ");
        }
        out.push_str("0\n");
    }
    out
}

/// Set family: one set per line as nonnegative integers.
pub fn parse_set_family(text: &str) -> Result<Vec<BTreeSet<usize>>> {
    let mut family = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let toks = tokenize(body, i + 1, 0);
        if toks.is_empty() {
            continue;
        }
        family.push(
            toks.iter()
                .map(|t| parse_number(t, "an element"))
                .collect::<Result<BTreeSet<usize>>>()?,
        );
    }
    Ok(family)
}

pub fn emit_set_family(family: &[BTreeSet<usize>]) -> String {
    let mut out = String::new();
    for set in family {
        let parts: Vec<String> = set.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", parts.join(" "));
    }
    out
}

/// Simple graph: a `nodes:` line, then `u v` edge lines. Vertex `i` of the
/// result is the `i`-th listed node.
pub fn parse_simple_graph(text: &str) -> Result<SimpleGraph> {
    let ls = lines(text);
    let nodes = parse_nodes_line(&ls, "nodes")?;
    let index: HashMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let mut edges = Vec::new();
    for line in &ls[1..] {
        let [u, v] = line.rest.as_slice() else {
            return Err(line.error("edge line needs `u v`"));
        };
        let mut ends = [0; 2];
        for (slot, t) in ends.iter_mut().zip([u, v]) {
            let n: NodeId = parse_number(t, "a node")?;
            *slot = *index
                .get(&n)
                .ok_or_else(|| t.error(format!("node {n} is not declared")))?;
        }
        if ends[0] == ends[1] {
            return Err(u.error("self-loop"));
        }
        edges.push((ends[0], ends[1]));
    }
    SimpleGraph::new(nodes.len(), edges)
}

/// Nodes are numbered `1..=n` in vertex order.
pub fn emit_simple_graph(g: &SimpleGraph) -> String {
    let nodes: Vec<String> = (1..=g.num_vertices()).map(|i| i.to_string()).collect();
    let mut out = format!("nodes: {}\n", nodes.join(" "));
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# two threads
alphabet: a b
memory:
  states: q0 q1 q2
  init: q0
  final: q2
  trans: q0 a q1; q1 b q2
thread 1:
  states: p0 p1
  init: p0
  final: p1
  trans: p0 a p1
thread 2:
  states: r0 r1
  init: r0
  final: r1
  trans: r0 b r1;
";

    #[test]
    fn smcp_round_trip() {
        let s = parse_smcp(SAMPLE).unwrap();
        assert_eq!(s.num_threads(), 2);
        assert_eq!(s.memory().transitions().len(), 2);
        let again = parse_smcp(&emit_smcp(&s)).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn smcp_errors_name_the_line() {
        let bad = SAMPLE.replace("trans: p0 a p1", "trans: p0 a");
        match parse_smcp(&bad) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 12);
                assert_eq!(column, 10);
            }
            other => panic!("{other:?}"),
        }
        let bad = SAMPLE.replace("trans: p0 a p1", "trans: p0 c p1");
        assert!(matches!(
            parse_smcp(&bad),
            Err(Error::Parse {
                line: 12,
                column: 13,
                ..
            })
        ));
        let bad = SAMPLE.replace("thread 2:", "thread 3:");
        assert!(matches!(
            parse_smcp(&bad),
            Err(Error::Parse { line: 13, .. })
        ));
        let bad = SAMPLE.replace("  init: p0\n", "");
        assert!(matches!(
            parse_smcp(&bad),
            Err(Error::Parse { line: 8, .. })
        ));
    }

    #[test]
    fn graph_and_process_round_trip() {
        let g = parse_sched_graph("nodes: 1 2 3\n1 2 2\n2 3 1\n3 1 1\n").unwrap();
        assert_eq!(g.weight(1, 2), 2);
        assert_eq!(parse_sched_graph(&emit_sched_graph(&g)).unwrap(), g);
        let p = parse_process("1 2 -> 4\n4 3 -> 5\n").unwrap();
        assert_eq!(p.steps, vec![(1, 2, 4), (4, 3, 5)]);
        assert_eq!(parse_process(&emit_process(&p)).unwrap(), p);
        assert!(parse_process("1 2 => 4").is_err());
        assert!(matches!(
            parse_sched_graph("nodes: 1 2\n1 3 1\n"),
            Err(Error::Parse {
                line: 2,
                column: 3,
                ..
            })
        ));
        let d = parse_carving("leaves: 1 2 3\n1 2 -> 4\n4 3 -> 5\n").unwrap();
        assert_eq!(parse_carving(&emit_carving(&d)).unwrap(), d);
    }

    #[test]
    fn witness_round_trip() {
        let s = parse_smcp(SAMPLE).unwrap();
        let w = parse_witness("a@1 b@2", &s).unwrap();
        assert_eq!(w, TaggedWord(vec![(0, 0), (1, 1)]));
        assert_eq!(emit_witness(&w, &s), "a@1 b@2");
        assert!(parse_witness("a@3", &s).is_err());
        assert!(parse_witness("a", &s).is_err());
    }

    #[test]
    fn cnf_and_family_round_trip() {
        let f = parse_cnf("c demo\np cnf 3 2\n1 -2 0\n3 0\n").unwrap();
        assert_eq!(f.clauses, vec![vec![1, -2], vec![3]]);
        assert_eq!(parse_cnf(&emit_cnf(&f)).unwrap(), f);
        assert!(parse_cnf("p cnf 1 1\n2 0\n").is_err());
        let fam = parse_set_family("1 2\n# skip\n3\n").unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(parse_set_family(&emit_set_family(&fam)).unwrap(), fam);
    }

    #[test]
    fn shuffle_and_simple_graph_round_trip() {
        let text = "alphabet: a b\nword: a b a\nthread 1:\n states: s t\n init: s\n final: t\n trans: s a s; s b t\n";
        let inst = parse_shuffle(text).unwrap();
        assert_eq!(inst.word, vec![0, 1, 0]);
        assert_eq!(parse_shuffle(&emit_shuffle(&inst)).unwrap(), inst);
        let g = parse_simple_graph("nodes: 1 2 3\n1 2\n2 3\n").unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(parse_simple_graph(&emit_simple_graph(&g)).unwrap(), g);
    }
}
