//! The `wheelerkit` command line. [`dispatch`] does all the work and never
//! exits the process, so it is testable in-process.
//!
//! Exit codes: 0 positive verdict or success, 1 negative verdict, 2
//! infeasible (budget, caps, size limits), 3 input error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::automaton::{Automaton, Edge};
use crate::dot::export_dot;
use crate::format::{parse_automaton, serialize_automaton};
use crate::gw::{
    gw_automaton_check, gw_language_check, parse_betweenness, solve_betweenness, BetweennessInstance, GwError,
    GwVerdict,
};
use crate::language::{
    check_witness_dfa, is_language_wheeler_dfa, Certificate, LanguageError, LanguageOptions, Method, SearchCaps,
    Status, DEFAULT_STATE_CAP,
};
use crate::min_wdfa::{build_min_wdfa_with, Wdfa, WdfaError, WdfaOptions, DEFAULT_WORD_CAP};
use crate::ops::{determinize_capped, minimize, trim_basic};
use crate::reductions::{
    reduce_betweenness_to_dfa, reduce_nfa_wheeler_to_gw, reduce_universality, ReductionReport,
};
use crate::wheeler::{dfa_wheeler_order, nfa_wheeler_search, WheelerError, WheelerOrder, DEFAULT_NODE_BUDGET};

pub const EXIT_POSITIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub text: String,
    /// `key: value` pairs, printed after a `---` line.
    pub structured: Vec<(String, String)>,
}

impl CommandResult {
    fn new(code: i32) -> Self {
        CommandResult {
            code,
            text: String::new(),
            structured: Vec::new(),
        }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        let mut r = CommandResult::new(EXIT_INPUT);
        r.line(format!("error: {msg}"));
        r.kv("error", "input");
        r
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn kv(&mut self, k: &str, v: impl ToString) {
        self.structured.push((k.to_string(), v.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.structured.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// The text, then the structured block if any.
    pub fn render(&self) -> String {
        let mut out = self.text.clone();
        if !self.structured.is_empty() {
            out.push_str("---\n");
            for (k, v) in &self.structured {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        out
    }
}

#[derive(Parser, Debug)]
#[command(name = "wheelerkit", version, about = "Wheeler automata and Wheeler languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is this DFA Wheeler under its alphabet order?
    CheckDfa { file: PathBuf },
    /// Search for a Wheeler order of an NFA.
    CheckNfa {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Is the accepted language Wheeler?
    CheckLang {
        file: PathBuf,
        /// Accept nondeterministic input (determinized first).
        #[arg(long)]
        nfa: bool,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        /// Override search caps, e.g. `gamma=50,cycle=16,pump=4,paths=1000`.
        #[arg(long)]
        caps: Option<String>,
        #[command(flatten)]
        wdfa: WdfaArgs,
        /// Write the WDFA certificate here, if one is produced.
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Build the minimum Wheeler DFA for the language.
    MinWdfa {
        file: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
        #[command(flatten)]
        wdfa: WdfaArgs,
    },
    /// Is there an alphabet order making the automaton (or language) Wheeler?
    CheckGw {
        file: PathBuf,
        #[arg(long, conflicts_with = "language", required_unless_present = "language")]
        automaton: bool,
        #[arg(long)]
        language: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Brute-force a betweenness instance.
    SolveBetweenness { file: PathBuf },
    /// Build a reduction gadget.
    Reduce {
        #[arg(value_enum)]
        kind: ReduceKind,
        file: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering, optionally annotated with a Wheeler order.
    ExportDot {
        file: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
        /// Compute a Wheeler order and annotate ranks.
        #[arg(long)]
        with_order: bool,
    },
}

#[derive(Args, Debug)]
struct WdfaArgs {
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_WORD_CAP)]
    word_cap: u64,
}

impl WdfaArgs {
    fn options(&self) -> WdfaOptions {
        WdfaOptions {
            depth: self.depth,
            word_cap: self.word_cap,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Witness,
    Construct,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReduceKind {
    Universality,
    NfaToGw,
    Betweenness,
}

/// Runs one command. `args` excludes the program name.
pub fn dispatch<I, S>(args: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once("wheelerkit".into()).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_POSITIVE };
            let mut r = CommandResult::new(code);
            r.text = e.render().to_string();
            return r;
        }
    };
    let result = match cli.command {
        Command::CheckDfa { file } => check_dfa(&file),
        Command::CheckNfa { file, budget } => check_nfa(&file, budget),
        Command::CheckLang {
            file,
            nfa,
            method,
            caps,
            wdfa,
            out,
        } => check_lang(&file, nfa, method, caps.as_deref(), wdfa.options(), out.as_deref()),
        Command::MinWdfa { file, out, wdfa } => min_wdfa(&file, out.as_deref(), wdfa.options()),
        Command::CheckGw {
            file,
            automaton,
            budget,
            ..
        } => check_gw(&file, automaton, budget),
        Command::SolveBetweenness { file } => solve(&file),
        Command::Reduce { kind, file, out } => reduce(kind, &file, out.as_deref()),
        Command::ExportDot { file, out, with_order } => dot(&file, out.as_deref(), with_order),
    };
    result.unwrap_or_else(|e| e)
}

type Outcome = Result<CommandResult, CommandResult>;

fn read(path: &Path) -> Result<String, CommandResult> {
    std::fs::read_to_string(path).map_err(|e| CommandResult::input_error(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Automaton, CommandResult> {
    parse_automaton(&read(path)?).map_err(|e| CommandResult::input_error(format!("{}: {e}", path.display())))
}

fn load_betweenness(path: &Path) -> Result<BetweennessInstance, CommandResult> {
    parse_betweenness(&read(path)?).map_err(|e| CommandResult::input_error(format!("{}: {e}", path.display())))
}

fn write_or_print(r: &mut CommandResult, out: Option<&Path>, contents: &str) -> Result<(), CommandResult> {
    match out {
        Some(p) => {
            std::fs::write(p, contents)
                .map_err(|e| CommandResult::input_error(format!("{}: {e}", p.display())))?;
            r.line(format!("wrote {}", p.display()));
            r.kv("output", p.display());
        }
        None => r.text.push_str(contents),
    }
    Ok(())
}

fn render_edge(a: &Automaton, &(u, s, v): &Edge) -> String {
    format!("q{u} -{}-> q{v}", a.alphabet().name(s))
}

fn order_result(r: &mut CommandResult, o: &WheelerOrder) {
    r.line("Wheeler");
    for q in o.sequence() {
        r.line(format!("q{q}"));
    }
    r.kv("verdict", "wheeler");
    r.kv("order", o.sequence().iter().map(|q| format!("q{q}")).collect::<Vec<_>>().join(" "));
}

fn wheeler_failure(r: &mut CommandResult, a: &Automaton, e: &WheelerError) {
    use crate::wheeler::WheelerViolation as V;
    match e {
        WheelerError::Violation(v) => {
            r.code = EXIT_NEGATIVE;
            r.line(format!("not Wheeler: {:?}", v.kind()));
            r.kv("verdict", "not-wheeler");
            r.kv("violation", format!("{:?}", v.kind()));
            let edges: Vec<&Edge> = match v {
                V::InitialHasInEdge { edge } => vec![edge],
                V::InputInconsistent { first, second }
                | V::ConditionI { first, second }
                | V::ConditionII { first, second } => vec![first, second],
                V::OrderContradiction { state } => {
                    r.line(format!("  at q{state}"));
                    r.kv("state", format!("q{state}"));
                    vec![]
                }
            };
            for (i, edge) in edges.iter().enumerate() {
                r.line(format!("  {}", render_edge(a, edge)));
                r.kv(&format!("edge{}", i + 1), render_edge(a, edge));
            }
        }
        WheelerError::NotWheeler => {
            r.code = EXIT_NEGATIVE;
            r.line("not Wheeler: no order exists");
            r.kv("verdict", "not-wheeler");
        }
        WheelerError::BudgetExceeded(n) => {
            r.code = EXIT_INFEASIBLE;
            r.line(format!("search budget of {n} nodes exceeded"));
            r.kv("verdict", "budget-exceeded");
            r.kv("budget", n);
        }
        WheelerError::NotDeterministic | WheelerError::NotBasic => {
            r.code = EXIT_INPUT;
            r.line(format!("error: {e}"));
            r.kv("error", "input");
        }
    }
}

fn check_dfa(file: &Path) -> Outcome {
    let a = load(file)?;
    if !a.is_deterministic() {
        return Err(CommandResult::input_error("automaton is not deterministic; use check-nfa"));
    }
    let mut r = CommandResult::new(EXIT_POSITIVE);
    match dfa_wheeler_order(&a) {
        Ok(o) => order_result(&mut r, &o),
        Err(e) => wheeler_failure(&mut r, &a, &e),
    }
    Ok(r)
}

fn check_nfa(file: &Path, budget: u64) -> Outcome {
    let a = load(file)?;
    let mut r = CommandResult::new(EXIT_POSITIVE);
    match nfa_wheeler_search(&a, budget) {
        Ok(o) => order_result(&mut r, &o),
        Err(e) => wheeler_failure(&mut r, &a, &e),
    }
    Ok(r)
}

fn parse_caps(spec: &str, n: usize) -> Result<SearchCaps, CommandResult> {
    let mut caps = SearchCaps::for_states(n);
    for part in spec.split(',').filter(|p| !p.is_empty()) {
        let bad = || CommandResult::input_error(format!("bad --caps entry `{part}`"));
        let (k, v) = part.split_once('=').ok_or_else(bad)?;
        let v: u64 = v.trim().parse().map_err(|_| bad())?;
        match k.trim() {
            "gamma" => caps.gamma_bound = v,
            "cycle" => caps.cycle_len_cap = v as usize,
            "pump" => caps.pump_cap = v as usize,
            "paths" => caps.path_count_cap = v as usize,
            _ => return Err(bad()),
        }
    }
    Ok(caps)
}

fn wdfa_summary(r: &mut CommandResult, w: &Wdfa) {
    let alphabet = w.automaton.alphabet();
    r.line(format!("minimum WDFA: {} states", w.automaton.state_count()));
    for (i, beta) in w.fingerprint.representatives.iter().enumerate() {
        r.line(format!("  q{i} = {}", alphabet.render(beta)));
    }
    r.kv("wdfa_states", w.automaton.state_count());
    r.kv("prefixes", w.prefix_count);
    r.kv("certifying", w.certifying);
}

fn wdfa_file(w: &Wdfa) -> String {
    let alphabet = w.automaton.alphabet();
    let mut out = String::from("# state representatives (co-lex order)\n");
    for (i, beta) in w.fingerprint.representatives.iter().enumerate() {
        let _ = writeln!(out, "# q{i} {}", alphabet.render(beta));
    }
    out.push_str(&serialize_automaton(&w.automaton));
    out
}

fn wdfa_error(r: &mut CommandResult, e: &WdfaError) {
    r.code = match e {
        WdfaError::InfeasibleEnumeration { .. } => EXIT_INFEASIBLE,
        WdfaError::NotDeterministic => EXIT_INPUT,
        _ => EXIT_NEGATIVE,
    };
    r.line(format!("{e}"));
    r.kv(
        "verdict",
        if r.code == EXIT_NEGATIVE { "not-wheeler" } else { "infeasible" },
    );
}

fn check_lang(
    file: &Path,
    nfa: bool,
    method: MethodArg,
    caps: Option<&str>,
    wdfa: WdfaOptions,
    out: Option<&Path>,
) -> Outcome {
    let a = load(file)?;
    if !nfa && !a.is_deterministic() {
        return Err(CommandResult::input_error("automaton is not deterministic; pass --nfa"));
    }
    let start = Instant::now();
    let mut r = CommandResult::new(EXIT_POSITIVE);
    let d = if a.is_deterministic() {
        a.clone()
    } else {
        match determinize_capped(&trim_basic(&a), DEFAULT_STATE_CAP) {
            Ok(d) => d,
            Err(e) => {
                r.code = EXIT_INFEASIBLE;
                r.line(format!("{e}"));
                r.kv("verdict", "infeasible");
                return Ok(r);
            }
        }
    };
    let min = minimize(&d).expect("deterministic");
    let options = LanguageOptions {
        method: match method {
            MethodArg::Witness => Method::WitnessSearch,
            MethodArg::Construct => Method::ConstructVerify,
            MethodArg::Both => Method::Both,
        },
        caps: caps.map(|c| parse_caps(c, min.state_count())).transpose()?,
        wdfa,
    };
    let verdict = match is_language_wheeler_dfa(&min, &options) {
        Ok(v) => v,
        Err(e @ (LanguageError::InfeasibleEnumeration(_) | LanguageError::StateBlowup(_))) => {
            r.code = EXIT_INFEASIBLE;
            r.line(format!("{e}"));
            r.kv("verdict", "infeasible");
            return Ok(r);
        }
        Err(e @ LanguageError::InternalDisagreement { .. }) => {
            r.code = EXIT_INFEASIBLE;
            r.line(format!("internal error: {e}"));
            r.kv("verdict", "disagreement");
            return Ok(r);
        }
        Err(e @ LanguageError::NotDeterministic) => return Err(CommandResult::input_error(e)),
    };
    let alphabet = min.alphabet();
    r.kv("min_dfa_states", min.state_count());
    match verdict.status {
        Status::Wheeler => {
            r.line("language is Wheeler");
            r.kv("verdict", "wheeler");
        }
        Status::NotWheeler => {
            r.code = EXIT_NEGATIVE;
            r.line("language is not Wheeler");
            r.kv("verdict", "not-wheeler");
        }
        Status::BoundedWheeler => {
            r.code = EXIT_INFEASIBLE;
            r.line("no witness within the given caps (not exhaustive)");
            r.kv("verdict", "bounded-wheeler");
        }
    }
    match &verdict.certificate {
        Certificate::Witness(w) => {
            let check = check_witness_dfa(&min, w);
            r.line(format!("  mu    = {}", alphabet.render(&w.mu)));
            r.line(format!("  nu    = {}", alphabet.render(&w.nu)));
            r.line(format!("  gamma = {}", alphabet.render(&w.gamma)));
            r.kv("mu", alphabet.render(&w.mu));
            r.kv("nu", alphabet.render(&w.nu));
            r.kv("gamma", alphabet.render(&w.gamma));
            r.kv("witness_valid", check.valid);
            r.kv("within_bound", check.within_bound);
        }
        Certificate::Wdfa(w) => {
            wdfa_summary(&mut r, w);
            if out.is_some() {
                write_or_print(&mut r, out, &wdfa_file(w))?;
            }
        }
        Certificate::Refutation(e) => {
            r.line(format!("  construction: {e}"));
            r.kv("refutation", e);
        }
        Certificate::None => {}
    }
    r.line(format!("time: {:.3} s", start.elapsed().as_secs_f64()));
    Ok(r)
}

fn min_wdfa(file: &Path, out: Option<&Path>, options: WdfaOptions) -> Outcome {
    let a = load(file)?;
    let mut r = CommandResult::new(EXIT_POSITIVE);
    let d = match determinize_capped(&trim_basic(&a), DEFAULT_STATE_CAP) {
        Ok(d) => d,
        Err(e) => {
            r.code = EXIT_INFEASIBLE;
            r.line(format!("{e}"));
            r.kv("verdict", "infeasible");
            return Ok(r);
        }
    };
    match build_min_wdfa_with(&d, &options) {
        Ok(w) => {
            r.kv("verdict", "wheeler");
            wdfa_summary(&mut r, &w);
            write_or_print(&mut r, out, &wdfa_file(&w))?;
        }
        Err(e) => wdfa_error(&mut r, &e),
    }
    Ok(r)
}

fn check_gw(file: &Path, automaton: bool, budget: u64) -> Outcome {
    let a = load(file)?;
    let mut r = CommandResult::new(EXIT_POSITIVE);
    let verdict = if automaton {
        gw_automaton_check(&a, budget)
    } else {
        gw_language_check(&a, &LanguageOptions::default())
    };
    r.kv("query", if automaton { "automaton" } else { "language" });
    match verdict {
        Ok(GwVerdict::Gw(o)) => {
            r.line(format!("GW under {}", o.render(a.alphabet())));
            r.kv("verdict", "gw");
            r.kv("order", o.0.iter().map(|&s| a.alphabet().name(s)).collect::<Vec<_>>().join(" "));
        }
        Ok(GwVerdict::NotGw) => {
            r.code = EXIT_NEGATIVE;
            r.line("not GW: no alphabet order works");
            r.kv("verdict", "not-gw");
        }
        Err(e) => {
            r.code = match e {
                GwError::Language(LanguageError::NotDeterministic) => EXIT_INPUT,
                _ => EXIT_INFEASIBLE,
            };
            r.line(format!("{e}"));
            r.kv("verdict", "infeasible");
        }
    }
    Ok(r)
}

fn solve(file: &Path) -> Outcome {
    let inst = load_betweenness(file)?;
    let mut r = CommandResult::new(EXIT_POSITIVE);
    match solve_betweenness(&inst) {
        Ok(Some(order)) => {
            let names: Vec<&str> = order.iter().map(|&i| inst.elements()[i].as_str()).collect();
            r.line(format!("satisfiable: {}", names.join(" < ")));
            r.kv("verdict", "sat");
            r.kv("order", names.join(" "));
        }
        Ok(None) => {
            r.code = EXIT_NEGATIVE;
            r.line("unsatisfiable");
            r.kv("verdict", "unsat");
        }
        Err(e) => {
            r.code = EXIT_INFEASIBLE;
            r.line(format!("{e}"));
            r.kv("verdict", "infeasible");
        }
    }
    Ok(r)
}

fn reduce(kind: ReduceKind, file: &Path, out: Option<&Path>) -> Outcome {
    let report: ReductionReport = match kind {
        ReduceKind::Universality => reduce_universality(&load(file)?).map_err(CommandResult::input_error)?,
        ReduceKind::NfaToGw => reduce_nfa_wheeler_to_gw(&load(file)?).map_err(CommandResult::input_error)?,
        ReduceKind::Betweenness => reduce_betweenness_to_dfa(&load_betweenness(file)?),
    };
    let mut r = CommandResult::new(EXIT_POSITIVE);
    let a = &report.automaton;
    r.line(format!(
        "{} states ({} added), {} symbols (added: {})",
        a.state_count(),
        report.states_added,
        a.alphabet().len(),
        report.fresh_symbols.join(" ")
    ));
    r.kv("states", a.state_count());
    r.kv("states_added", report.states_added);
    r.kv("symbols", a.alphabet().len());
    r.kv("symbols_added", report.fresh_symbols.len());
    write_or_print(&mut r, out, &serialize_automaton(a))?;
    Ok(r)
}

fn dot(file: &Path, out: Option<&Path>, with_order: bool) -> Outcome {
    let a = load(file)?;
    let mut r = CommandResult::new(EXIT_POSITIVE);
    let order = if with_order {
        let found = if a.is_deterministic() {
            dfa_wheeler_order(&a)
        } else {
            nfa_wheeler_search(&a, DEFAULT_NODE_BUDGET)
        };
        match found {
            Ok(o) => Some(o),
            Err(e) => {
                wheeler_failure(&mut r, &a, &e);
                return Ok(r);
            }
        }
    } else {
        None
    };
    write_or_print(&mut r, out, &export_dot(&a, order.as_ref()))?;
    Ok(r)
}
