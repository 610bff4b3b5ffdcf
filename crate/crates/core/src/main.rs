use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::rc::Rc;

use clap::{Args, Parser, Subcommand};

use tropical_lstar::gen::{self, GenConfig};
use tropical_lstar::hankel::{HankelMask, HankelTable};
use tropical_lstar::learner::{
    self, checks, reduce, BudgetKind, LearnConfig, LearnOutcome, Status, StrategyRegistry,
};
use tropical_lstar::oracles::{
    bounded_equivalence, BoundedEquivalence, EquivalenceOracle, LoggedEquivalence, LoggedMembership, QueryLog,
    ScriptedEquivalence, WfaMembership,
};
use tropical_lstar::{witnesses, Alphabet, Wfa, Word};

const EXIT_USAGE: u8 = 2;
const EXIT_RUNTIME: u8 = 3;
const EXIT_COUNTEREXAMPLE: u8 = 4;
const EXIT_MISMATCH: u8 = 5;

fn budget_exit(kind: BudgetKind) -> u8 {
    match kind {
        BudgetKind::Rows => 10,
        BudgetKind::Columns => 11,
        BudgetKind::Iterations => 12,
        BudgetKind::Stalled => 13,
    }
}

#[derive(Parser)]
#[command(name = "tropical-lstar", version, about = "Learn max-plus weighted automata from queries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Learn a target automaton through membership and equivalence queries.
    ///
    /// Exit status: 0 converged, 10 row budget, 11 column budget,
    /// 12 iteration budget, 13 stalled, 2 usage or input error.
    Learn(LearnArgs),
    /// Print the weight of each word.
    Eval {
        #[arg(long)]
        wfa: PathBuf,
        /// Words as comma-separated symbols; single-letter symbols may be concatenated.
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Compare two automata on every word up to a length bound.
    ///
    /// Prints `Eq.` (exit 0) or the first differing word (exit 4).
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Remove weakly dependent states, preserving all weights up to a length bound.
    Minimize {
        #[arg(long)]
        wfa: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a seeded random automaton.
    Gen(GenArgs),
    /// Walk through the three-state example and the hybrid stall.
    Demo,
}

#[derive(Args)]
struct LearnArgs {
    /// Target automaton document. `builtin:three-state` and `builtin:counter` name the shipped witnesses.
    #[arg(long)]
    target: String,
    #[arg(long, default_value = "column-closed")]
    algorithm: String,
    #[arg(long, default_value_t = 6)]
    eq_max_len: usize,
    #[arg(long, default_value_t = 50)]
    max_rows: usize,
    #[arg(long, default_value_t = 50)]
    max_cols: usize,
    #[arg(long, default_value_t = 100)]
    max_iterations: usize,
    /// Allow strategies that may loop forever.
    #[arg(long)]
    unsound: bool,
    /// Scripted equivalence answers in order (`Eq.` or a word); replaces bounded testing.
    #[arg(long = "eq-answer", value_name = "WORD")]
    eq_answers: Vec<String>,
    /// Extra initial rows, each extending an earlier one by a symbol.
    #[arg(long = "row", value_name = "WORD")]
    rows: Vec<String>,
    /// Extra initial columns, each extending an earlier one by a leading symbol.
    #[arg(long = "col", value_name = "WORD")]
    cols: Vec<String>,
    /// Where to write the learned automaton.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the learner's event log (JSON lines).
    #[arg(long)]
    log: Option<PathBuf>,
    /// Where to write the raw query log (JSON lines).
    #[arg(long)]
    query_log: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    states: usize,
    /// Alphabet size; symbols are `a`, `b`, ….
    #[arg(long, default_value_t = 2)]
    alphabet: usize,
    #[arg(long, default_value_t = 0)]
    low: i64,
    #[arg(long, default_value_t = 10)]
    high: i64,
    /// Probability of a `-inf` entry.
    #[arg(long, default_value_t = 0.0)]
    bottom_probability: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn runtime(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_RUNTIME,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Learn(args) => cmd_learn(args),
        Command::Eval { wfa, words } => cmd_eval(&wfa, &words),
        Command::Equiv { left, right, max_len } => cmd_equiv(&left, &right, max_len),
        Command::Minimize { wfa, max_len, out } => cmd_minimize(&wfa, max_len, out.as_deref()),
        Command::Gen(args) => cmd_gen(args),
        Command::Demo => cmd_demo(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_wfa(path: &Path) -> Result<Wfa, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Wfa::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_target(spec: &str) -> Result<Wfa, Failure> {
    match spec {
        "builtin:three-state" => Ok(witnesses::three_state()),
        "builtin:counter" => Ok(witnesses::counter()),
        path => read_wfa(Path::new(path)),
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| runtime(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word, Failure> {
    alphabet.parse_word(text).map_err(|e| usage(format!("word {text:?}: {e}")))
}

fn cmd_learn(args: LearnArgs) -> Result<u8, Failure> {
    let registry = StrategyRegistry::with_defaults();
    let strategy = registry.get(&args.algorithm).ok_or_else(|| {
        let names: Vec<_> = registry.names().collect();
        usage(format!("unknown algorithm {:?}; expected one of {}", args.algorithm, names.join(", ")))
    })?;
    if !strategy.is_sound() && !args.unsound {
        return Err(usage(format!("algorithm {} is unsound; pass --unsound to run it", strategy.name())));
    }
    for (flag, v) in [
        ("--max-rows", args.max_rows),
        ("--max-cols", args.max_cols),
        ("--max-iterations", args.max_iterations),
    ] {
        if v == 0 {
            return Err(usage(format!("{flag} must be positive")));
        }
    }
    let target = load_target(&args.target)?;
    let alphabet = target.alphabet().clone();

    let initial_mask = if args.rows.is_empty() && args.cols.is_empty() {
        None
    } else {
        let rows = args.rows.iter().map(|w| parse_word(&alphabet, w)).collect::<Result<Vec<_>, _>>()?;
        let cols = args.cols.iter().map(|w| parse_word(&alphabet, w)).collect::<Result<Vec<_>, _>>()?;
        Some(HankelMask::from_words(&rows, &cols).map_err(|e| usage(format!("initial mask: {e}")))?)
    };
    let script = if args.eq_answers.is_empty() {
        None
    } else {
        Some(ScriptedEquivalence::parse_entries(&target, &args.eq_answers).map_err(|e| usage(format!("--eq-answer: {e}")))?)
    };

    let cfg = LearnConfig {
        allow_unsound: args.unsound,
        eq_max_len: args.eq_max_len,
        max_rows: args.max_rows,
        max_cols: args.max_cols,
        max_iterations: args.max_iterations,
        initial_mask,
        ..LearnConfig::new(strategy)
    };

    let log = QueryLog::shared();
    let mut membership = LoggedMembership::new(WfaMembership::new(&target), &target, Rc::clone(&log));
    let inner: Box<dyn EquivalenceOracle + '_> = match script {
        Some(entries) => Box::new(ScriptedEquivalence::new(&target, entries, args.eq_max_len)),
        None => Box::new(BoundedEquivalence::new(&target, args.eq_max_len)),
    };
    let mut equivalence = LoggedEquivalence::new(inner, &target, Rc::clone(&log));
    let outcome = learner::learn(&alphabet, &mut membership, &mut equivalence, &cfg)
        .map_err(|e| runtime(format!("learning failed: {e}")))?;

    if let Some(path) = &args.log {
        fs::write(path, outcome.events_json_lines()).map_err(|e| runtime(format!("{}: {e}", path.display())))?;
    }
    if let Some(path) = &args.query_log {
        fs::write(path, log.borrow().to_json_lines()).map_err(|e| runtime(format!("{}: {e}", path.display())))?;
    }
    if let (Some(path), Some(hyp)) = (&args.out, &outcome.hypothesis) {
        fs::write(path, hyp.to_json()).map_err(|e| runtime(format!("{}: {e}", path.display())))?;
        recheck_written(path, &outcome)?;
    }
    print!("{}", summary(&outcome, &log.borrow()));
    Ok(match outcome.status {
        Status::Converged => 0,
        Status::BudgetExhausted(kind) => budget_exit(kind),
    })
}

/// Re-reads the written automaton and checks it against the table it came from.
fn recheck_written(path: &Path, outcome: &LearnOutcome) -> Result<(), Failure> {
    let reread = read_wfa(path)?;
    let (Some(hyp), Some(h)) = (&outcome.hypothesis, &outcome.hypothesis_table) else {
        return Ok(());
    };
    let relabelled = hyp
        .clone()
        .relabel_states(reread.states().clone())
        .map_err(|e| runtime(e.to_string()))?;
    if reread != relabelled {
        return Err(runtime(format!("{}: re-read automaton differs from the learned one", path.display())));
    }
    let strategy = StrategyRegistry::with_defaults().get(outcome.strategy);
    if strategy.is_some_and(|s| s.closes_columns()) {
        if let Err(v) = checks::faithfulness(&reread, h) {
            return Err(runtime(format!(
                "written automaton gives {} on {} but the table holds {}",
                v.actual,
                reread.alphabet().render(&v.word),
                v.expected
            )));
        }
    }
    Ok(())
}

fn summary(outcome: &LearnOutcome, log: &QueryLog) -> String {
    let mut s = String::new();
    let (status, budget) = match outcome.status {
        Status::Converged => ("converged", None),
        Status::BudgetExhausted(kind) => ("budget_exhausted", Some(kind.as_str())),
    };
    let _ = writeln!(s, "status: {status}");
    if let Some(b) = budget {
        let _ = writeln!(s, "budget: {b}");
    }
    let _ = writeln!(s, "algorithm: {}", outcome.strategy);
    let _ = writeln!(s, "rows: {}", outcome.mask.rows());
    let _ = writeln!(s, "columns: {}", outcome.mask.cols());
    let states = outcome.hypothesis.as_ref().map_or("none".to_string(), |h| h.dim().to_string());
    let _ = writeln!(s, "states: {states}");
    let _ = writeln!(s, "iterations: {}", outcome.stats.iterations);
    let _ = writeln!(s, "membership_queries: {}", log.membership_count());
    let _ = writeln!(s, "equivalence_queries: {}", log.equivalence_count());
    if let Some(b) = outcome.eq_bound {
        let _ = writeln!(s, "eq_max_len: {b}");
    }
    s
}

fn cmd_eval(path: &Path, words: &[String]) -> Result<u8, Failure> {
    let wfa = read_wfa(path)?;
    for text in words {
        let w = parse_word(wfa.alphabet(), text)?;
        let v = wfa.evaluate(&w).map_err(|e| usage(format!("word {text:?}: {e}")))?;
        println!("{v}");
    }
    Ok(0)
}

fn cmd_equiv(left: &Path, right: &Path, max_len: usize) -> Result<u8, Failure> {
    let a = read_wfa(left)?;
    let b = read_wfa(right)?;
    match bounded_equivalence(&a, &b, max_len).map_err(|e| usage(e.to_string()))? {
        None => {
            println!("Eq.");
            Ok(0)
        }
        Some(w) => {
            let va = a.evaluate(&w).map_err(|e| runtime(e.to_string()))?;
            let vb = b.evaluate(&w).map_err(|e| runtime(e.to_string()))?;
            println!("counterexample: {} ({va} vs {vb})", a.alphabet().render(&w));
            Ok(EXIT_COUNTEREXAMPLE)
        }
    }
}

fn cmd_minimize(path: &Path, max_len: usize, out: Option<&Path>) -> Result<u8, Failure> {
    let wfa = read_wfa(path)?;
    let r = reduce::minimize(&wfa, max_len).map_err(|e| runtime(e.to_string()))?;
    if let Some(w) = bounded_equivalence(&wfa, &r.wfa, max_len).map_err(|e| runtime(e.to_string()))? {
        eprintln!("error: reduced automaton differs at {}", wfa.alphabet().render(&w));
        return Ok(EXIT_MISMATCH);
    }
    eprintln!("states: {} -> {}", wfa.dim(), r.wfa.dim());
    write_output(out, &r.wfa.to_json())?;
    Ok(0)
}

fn cmd_gen(args: GenArgs) -> Result<u8, Failure> {
    if args.states == 0 {
        return Err(usage("--states must be positive"));
    }
    if !(1..=26).contains(&args.alphabet) {
        return Err(usage("--alphabet must be between 1 and 26"));
    }
    if args.low > args.high {
        return Err(usage("--low must not exceed --high"));
    }
    if !(0.0..=1.0).contains(&args.bottom_probability) {
        return Err(usage("--bottom-probability must lie in [0, 1]"));
    }
    let cfg = GenConfig {
        bottom_probability: args.bottom_probability,
        ..GenConfig::rational(args.states, gen::letters(args.alphabet), args.low, args.high)
    };
    write_output(args.out.as_deref(), &gen::seeded_wfa(args.seed, &cfg).to_json())?;
    Ok(0)
}

fn cmd_demo() -> Result<u8, Failure> {
    let target = witnesses::three_state();
    let al = target.alphabet().clone();
    let words = |xs: &[&str]| xs.iter().map(|x| al.parse_word(x).expect("letters")).collect::<Vec<_>>();
    let fail = |e: &dyn std::fmt::Display| runtime(e.to_string());

    let mask = HankelMask::from_words(&words(&["", "a", "ab", "b"]), &words(&["", "a"])).map_err(|e| fail(&e))?;
    let mut m = WfaMembership::new(&target);
    let mut table = HankelTable::with_mask(&mut m, mask.clone());
    table.block().map_err(|e| fail(&e))?;
    for sym in al.letters() {
        table.successor_rows(sym).map_err(|e| fail(&e))?;
    }
    println!("observation table (rows P, columns S):");
    print!("{}", table.to_tsv(&al));
    println!("successor rows:");
    for w in words(&["aa", "aba", "abb", "ba", "bb"]) {
        let row: Vec<String> = mask
            .suffixes()
            .iter()
            .map(|s| table.entry(&w, s).map(|v| v.to_string()))
            .collect::<Result<_, _>>()
            .map_err(|e| fail(&e))?;
        println!("{}\t{}", al.render(&w), row.join("\t"));
    }

    let (row_closed, _) = learner::build_hypothesis(&mut table, &al).map_err(|e| fail(&e))?;
    let ab = al.parse_word("ab").expect("letters");
    let cfg = LearnConfig::named("column-closed").expect("registered");
    let learned = learner::learn_target(&target, &cfg).map_err(|e| fail(&e))?;
    let learned = learned.hypothesis.ok_or_else(|| runtime("no hypothesis"))?;
    println!();
    println!("target f(ab) = {}", target.evaluate(&ab).map_err(|e| fail(&e))?);
    println!("row-closed table hypothesis f(ab) = {}", row_closed.evaluate(&ab).map_err(|e| fail(&e))?);
    println!("column-closed learner hypothesis f(ab) = {}", learned.evaluate(&ab).map_err(|e| fail(&e))?);

    println!();
    println!("hybrid run, every counterexample is ab:");
    let cfg = LearnConfig {
        allow_unsound: true,
        initial_mask: Some(mask),
        ..LearnConfig::named("hybrid").expect("registered")
    };
    let script = ScriptedEquivalence::parse_entries(&target, &["ab", "ab", "ab"]).map_err(|e| fail(&e))?;
    let mut m = WfaMembership::new(&target);
    let mut e = ScriptedEquivalence::new(&target, script, cfg.eq_max_len);
    let outcome = learner::learn(&al, &mut m, &mut e, &cfg).map_err(|e| fail(&e))?;
    for ev in &outcome.events {
        if !matches!(ev, learner::LearnEvent::Membership { .. }) {
            println!("  {}", serde_json::to_string(ev).expect("serializable event"));
        }
    }
    let status = match outcome.status {
        Status::Converged => "converged".to_string(),
        Status::BudgetExhausted(k) => format!("budget_exhausted ({})", k.as_str()),
    };
    println!("status: {status} after {} iterations", outcome.stats.iterations);
    Ok(0)
}
