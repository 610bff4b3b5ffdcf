//! Active learning of max-plus WFAs from membership and equivalence queries.
//!
//! The main loop alternates two phases. `extract` closes the table and reads
//! off a hypothesis. An equivalence query then either ends the run or yields a
//! counterexample, whose suffixes extend `S`. Budgets turn non-termination
//! into an outcome instead of a hang.

pub mod checks;
pub mod reduce;
pub mod strategy;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::hankel::{HankelError, HankelMask, HankelTable};
use crate::linalg::{self, LinalgError, Matrix, SolveError, Vector};
use crate::oracles::{BoundedEquivalence, EquivalenceAnswer, EquivalenceOracle, MembershipOracle, OracleError, WfaMembership};
use crate::wfa::{Wfa, WfaError};
use crate::word::{Alphabet, Word};

pub use strategy::{ColumnClosed, Hybrid, LearningStrategy, StrategyRegistry, VanHeerdt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LearnError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Hankel(#[from] HankelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Wfa(#[from] WfaError),
    #[error("strategy {0} is unsound; enable unsound mode to run it")]
    Unsound(&'static str),
    #[error("budget {0} must be positive")]
    InvalidBudget(&'static str),
    #[error("initial mask is not prefix- and suffix-closed")]
    InvalidMask,
    #[error("table is not row-closed at {0:?}")]
    NotRowClosed(Word),
    #[error("hypothesis gives {actual} on {word:?} but the table holds {expected}")]
    Unfaithful {
        word: Word,
        expected: String,
        actual: String,
    },
}

/// Which budget ended a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetKind {
    Rows,
    Columns,
    Iterations,
    /// The same counterexample came back twice in a row and changed nothing.
    Stalled,
}

impl BudgetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BudgetKind::Rows => "rows",
            BudgetKind::Columns => "columns",
            BudgetKind::Iterations => "iterations",
            BudgetKind::Stalled => "stalled",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Converged,
    BudgetExhausted(BudgetKind),
}

/// Why an enclose pass or a run stopped early.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Halt {
    Budget(BudgetKind),
    Failed(LearnError),
}

impl<E: Into<LearnError>> From<E> for Halt {
    fn from(e: E) -> Self {
        Halt::Failed(e.into())
    }
}

#[derive(Clone)]
pub struct LearnConfig {
    pub strategy: Arc<dyn LearningStrategy>,
    pub allow_unsound: bool,
    /// Bound used by [`learn_target`] for its equivalence oracle.
    pub eq_max_len: usize,
    pub max_rows: usize,
    pub max_cols: usize,
    pub max_iterations: usize,
    /// Starting mask; `({ε}, {ε})` when absent.
    pub initial_mask: Option<HankelMask>,
    /// Check every hypothesis against the table it was built from.
    pub verify: bool,
}

impl LearnConfig {
    pub fn new(strategy: Arc<dyn LearningStrategy>) -> Self {
        LearnConfig {
            strategy,
            allow_unsound: false,
            eq_max_len: 6,
            max_rows: 50,
            max_cols: 50,
            max_iterations: 100,
            initial_mask: None,
            verify: true,
        }
    }

    /// Looks `name` up in the default registry.
    pub fn named(name: &str) -> Option<Self> {
        StrategyRegistry::with_defaults().get(name).map(LearnConfig::new)
    }

    fn validate(&self) -> Result<(), LearnError> {
        for (name, v) in [
            ("max_rows", self.max_rows),
            ("max_cols", self.max_cols),
            ("max_iterations", self.max_iterations),
        ] {
            if v == 0 {
                return Err(LearnError::InvalidBudget(name));
            }
        }
        if !self.strategy.is_sound() && !self.allow_unsound {
            return Err(LearnError::Unsound(self.strategy.name()));
        }
        if let Some(mask) = &self.initial_mask {
            if !mask.is_prefix_closed() || !mask.is_suffix_closed() {
                return Err(LearnError::InvalidMask);
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for LearnConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LearnConfig")
            .field("strategy", &self.strategy.name())
            .field("allow_unsound", &self.allow_unsound)
            .field("eq_max_len", &self.eq_max_len)
            .field("max_rows", &self.max_rows)
            .field("max_cols", &self.max_cols)
            .field("max_iterations", &self.max_iterations)
            .field("initial_mask", &self.initial_mask)
            .finish()
    }
}

/// One line of the structured event log. Words are symbol arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum LearnEvent {
    Membership {
        word: Vec<String>,
        answer: String,
    },
    RowAdded {
        word: Vec<String>,
        rows: usize,
        cols: usize,
    },
    ColumnAdded {
        word: Vec<String>,
        rows: usize,
        cols: usize,
    },
    Hypothesis {
        iteration: usize,
        rows: usize,
        cols: usize,
        states: usize,
    },
    Equivalent {
        iteration: usize,
        bound: Option<usize>,
    },
    Counterexample {
        iteration: usize,
        word: Vec<String>,
        target: String,
        hypothesis: String,
        added: Vec<Vec<String>>,
    },
    Halted {
        reason: &'static str,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct LearnStats {
    /// Distinct words sent to the membership oracle.
    pub membership_queries: usize,
    pub equivalence_queries: usize,
    /// Main-loop rounds (one hypothesis each).
    pub iterations: usize,
    pub rows_added: usize,
    pub columns_added: usize,
}

/// One growth step of the mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthStep {
    pub row: bool,
    pub word: Vec<String>,
    pub rows: usize,
    pub cols: usize,
}

#[derive(Debug, Clone)]
pub struct LearnOutcome {
    pub status: Status,
    pub strategy: &'static str,
    /// Latest hypothesis, if one was built.
    pub hypothesis: Option<Wfa>,
    /// `H_{(P,S)}` the latest hypothesis was built from.
    pub hypothesis_table: Option<Matrix>,
    pub mask: HankelMask,
    pub stats: LearnStats,
    pub events: Vec<LearnEvent>,
    /// Word-length bound behind a `Converged` status.
    pub eq_bound: Option<usize>,
}

impl LearnOutcome {
    pub fn converged(&self) -> bool {
        self.status == Status::Converged
    }

    /// Row and column additions, in order.
    pub fn trace(&self) -> Vec<GrowthStep> {
        self.events
            .iter()
            .filter_map(|e| match e {
                LearnEvent::RowAdded { word, rows, cols } => Some(GrowthStep {
                    row: true,
                    word: word.clone(),
                    rows: *rows,
                    cols: *cols,
                }),
                LearnEvent::ColumnAdded { word, rows, cols } => Some(GrowthStep {
                    row: false,
                    word: word.clone(),
                    rows: *rows,
                    cols: *cols,
                }),
                _ => None,
            })
            .collect()
    }

    /// Events as JSON lines.
    pub fn events_json_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&serde_json::to_string(e).expect("serializable event"));
            out.push('\n');
        }
        out
    }
}

/// What the observer sees right after each hypothesis is built.
pub struct Checkpoint<'a> {
    pub iteration: usize,
    pub hypothesis: &'a Wfa,
    /// `H_{(P,S)}` with word-labelled axes.
    pub table: &'a Matrix,
}

struct Recorder<'a> {
    alphabet: &'a Alphabet,
    events: Vec<LearnEvent>,
}

impl Recorder<'_> {
    fn names(&self, w: &Word) -> Vec<String> {
        w.iter()
            .map(|i| self.alphabet.symbol(i).unwrap_or("?").to_string())
            .collect()
    }

    fn flush_queries(&mut self, table: &mut HankelTable<'_>) {
        for (w, v) in table.drain_fresh() {
            let word = self.names(&w);
            self.events.push(LearnEvent::Membership {
                word,
                answer: v.to_string(),
            });
        }
    }
}

fn shortlex_sorted(mut words: Vec<Word>) -> Vec<Word> {
    words.sort();
    words.dedup();
    words
}

/// Adds failing `pσ` rows until every successor row is a max-plus combination
/// of the rows of `H_{(P,S)}`. Candidates are scanned in shortlex order and the
/// scan restarts after each addition. Returns the rows added, in order.
///
/// Stops with [`BudgetKind::Rows`] instead of letting `|P|` exceed `max_rows`.
pub fn enclose_row(table: &mut HankelTable<'_>, alphabet_len: usize, max_rows: usize) -> Result<Vec<Word>, Halt> {
    let mut added = Vec::new();
    enclose_row_into(table, alphabet_len, max_rows, &mut added)?;
    Ok(added)
}

fn enclose_row_into(
    table: &mut HankelTable<'_>,
    alphabet_len: usize,
    max_rows: usize,
    added: &mut Vec<Word>,
) -> Result<(), Halt> {
    loop {
        let h = table.block()?;
        let candidates = shortlex_sorted(
            table
                .mask()
                .prefixes()
                .iter()
                .flat_map(|p| (0..alphabet_len).map(move |a| p.push(a)))
                .filter(|w| !table.mask().prefixes().contains(w))
                .collect(),
        );
        let cols: Vec<Word> = table.mask().suffixes().iter().cloned().collect();
        let mut failing = None;
        for w in candidates {
            let target = table.subblock(std::slice::from_ref(&w), &cols)?.row_vector(0);
            if linalg::solve_row(&h, &target)?.is_none() {
                failing = Some(w);
                break;
            }
        }
        let Some(w) = failing else {
            return Ok(());
        };
        if table.mask().rows() >= max_rows {
            return Err(Halt::Budget(BudgetKind::Rows));
        }
        table.add_row(w.clone())?;
        added.push(w);
    }
}

/// Dual of [`enclose_row`]: adds failing `σs` columns until every column of
/// `H_{(P,σS)}` is a combination of the columns of `H_{(P,S)}`.
pub fn enclose_column(table: &mut HankelTable<'_>, alphabet_len: usize, max_cols: usize) -> Result<Vec<Word>, Halt> {
    let mut added = Vec::new();
    enclose_column_into(table, alphabet_len, max_cols, &mut added)?;
    Ok(added)
}

fn enclose_column_into(
    table: &mut HankelTable<'_>,
    alphabet_len: usize,
    max_cols: usize,
    added: &mut Vec<Word>,
) -> Result<(), Halt> {
    loop {
        let ht = table.block()?.transpose();
        let candidates = shortlex_sorted(
            table
                .mask()
                .suffixes()
                .iter()
                .flat_map(|s| (0..alphabet_len).map(move |a| s.prepend(a)))
                .filter(|w| !table.mask().suffixes().contains(w))
                .collect(),
        );
        let rows: Vec<Word> = table.mask().prefixes().iter().cloned().collect();
        let mut failing = None;
        for w in candidates {
            let target = table.subblock(&rows, std::slice::from_ref(&w))?.column_vector(0);
            if linalg::solve_row(&ht, &target)?.is_none() {
                failing = Some(w);
                break;
            }
        }
        let Some(w) = failing else {
            return Ok(());
        };
        if table.mask().cols() >= max_cols {
            return Err(Halt::Budget(BudgetKind::Columns));
        }
        table.add_column(w.clone())?;
        added.push(w);
    }
}

/// Reads a hypothesis off a row-closed table: `α = e_ε`, `β = H(:,ε)` and
/// `A_σ` the principal solution of `X_σ ⊗ H_{(P,S)} = H_{(Pσ,S)}`. States are
/// labelled by the words of `P`.
pub fn build_hypothesis(table: &mut HankelTable<'_>, alphabet: &Alphabet) -> Result<(Wfa, Matrix), LearnError> {
    let h = table.block()?;
    let states = h.row_axis().clone();
    let mut transitions = Vec::with_capacity(alphabet.len());
    for sym in alphabet.letters() {
        let next = table.successor_rows(sym)?;
        let x = match linalg::solve_matrix(&h, &next) {
            Ok(x) => x,
            Err(SolveError::Unsolvable { row }) => {
                let w = row.as_word().cloned().unwrap_or_default();
                return Err(LearnError::NotRowClosed(w));
            }
            Err(SolveError::Shape(e)) => return Err(e.into()),
        };
        transitions.push(x.relabel(states.clone(), states.clone())?);
    }
    let initial = Vector::unit(states.clone(), 0);
    let final_weights = h.column_vector(0);
    let wfa = Wfa::new(alphabet.clone(), initial, final_weights, transitions)?;
    Ok((wfa, h))
}

/// Closes the table (rows, then columns when the strategy asks for it, until
/// neither pass changes anything) and builds the hypothesis.
fn extract(
    table: &mut HankelTable<'_>,
    alphabet: &Alphabet,
    cfg: &LearnConfig,
    rec: &mut Recorder<'_>,
    stats: &mut LearnStats,
) -> Result<(Wfa, Matrix), Halt> {
    loop {
        let mut rows = Vec::new();
        let pass = enclose_row_into(table, alphabet.len(), cfg.max_rows, &mut rows);
        rec.flush_queries(table);
        note_growth(&rows, true, table, rec, stats);
        pass?;
        let mut cols = Vec::new();
        if cfg.strategy.closes_columns() {
            let pass = enclose_column_into(table, alphabet.len(), cfg.max_cols, &mut cols);
            rec.flush_queries(table);
            note_growth(&cols, false, table, rec, stats);
            pass?;
        }
        if rows.is_empty() && cols.is_empty() {
            break;
        }
    }
    let built = build_hypothesis(table, alphabet);
    rec.flush_queries(table);
    Ok(built?)
}

/// Logs the trailing `words.len()` additions to the mask.
fn note_growth(words: &[Word], row: bool, table: &HankelTable<'_>, rec: &mut Recorder<'_>, stats: &mut LearnStats) {
    let (rows, cols) = (table.mask().rows(), table.mask().cols());
    let n = words.len();
    for (k, w) in words.iter().enumerate() {
        let (r, c) = if row { (rows - n + k + 1, cols) } else { (rows, cols - n + k + 1) };
        push_growth(rec, row, w, r, c);
    }
    if row {
        stats.rows_added += n;
    } else {
        stats.columns_added += n;
    }
}

fn push_growth(rec: &mut Recorder<'_>, row: bool, w: &Word, rows: usize, cols: usize) {
    let word = rec.names(w);
    rec.events.push(if row {
        LearnEvent::RowAdded { word, rows, cols }
    } else {
        LearnEvent::ColumnAdded { word, rows, cols }
    });
}

/// Checks a fresh hypothesis against the table it came from: every cell for
/// column-closing strategies, the `ε` row otherwise.
fn verify(strategy: &dyn LearningStrategy, hyp: &Wfa, h: &Matrix) -> Result<(), LearnError> {
    let result = if strategy.closes_columns() {
        checks::faithfulness(hyp, h)
    } else {
        checks::first_row_agreement(hyp, h)
    };
    match result {
        Ok(()) => Ok(()),
        Err(v) => Err(LearnError::Unfaithful {
            word: v.word.clone(),
            expected: v.expected.to_string(),
            actual: v.actual.to_string(),
        }),
    }
}

/// Runs the learner with a target automaton as teacher: membership by
/// evaluation, equivalence by bounded testing up to `cfg.eq_max_len`.
pub fn learn_target(target: &Wfa, cfg: &LearnConfig) -> Result<LearnOutcome, LearnError> {
    let mut m = WfaMembership::new(target);
    let mut e = BoundedEquivalence::new(target, cfg.eq_max_len);
    learn(target.alphabet(), &mut m, &mut e, cfg)
}

pub fn learn(
    alphabet: &Alphabet,
    membership: &mut dyn MembershipOracle,
    equivalence: &mut dyn EquivalenceOracle,
    cfg: &LearnConfig,
) -> Result<LearnOutcome, LearnError> {
    learn_observed(alphabet, membership, equivalence, cfg, &mut |_| {})
}

/// [`learn`], calling `observer` on every hypothesis as soon as it is built.
pub fn learn_observed(
    alphabet: &Alphabet,
    membership: &mut dyn MembershipOracle,
    equivalence: &mut dyn EquivalenceOracle,
    cfg: &LearnConfig,
    observer: &mut dyn FnMut(&Checkpoint<'_>),
) -> Result<LearnOutcome, LearnError> {
    cfg.validate()?;
    let mut table = HankelTable::with_mask(membership, cfg.initial_mask.clone().unwrap_or_default());
    let mut rec = Recorder {
        alphabet,
        events: Vec::new(),
    };
    let mut stats = LearnStats::default();
    let mut hypothesis: Option<(Wfa, Matrix)> = None;
    let mut unchanged_by: Option<Word> = None;

    let status = loop {
        if stats.iterations >= cfg.max_iterations {
            break Status::BudgetExhausted(BudgetKind::Iterations);
        }
        stats.iterations += 1;
        let iteration = stats.iterations;

        let (hyp, h) = match extract(&mut table, alphabet, cfg, &mut rec, &mut stats) {
            Ok(built) => built,
            Err(Halt::Budget(kind)) => break Status::BudgetExhausted(kind),
            Err(Halt::Failed(e)) => return Err(e),
        };
        rec.events.push(LearnEvent::Hypothesis {
            iteration,
            rows: table.mask().rows(),
            cols: table.mask().cols(),
            states: hyp.dim(),
        });
        if cfg.verify {
            verify(cfg.strategy.as_ref(), &hyp, &h)?;
        }
        observer(&Checkpoint {
            iteration,
            hypothesis: &hyp,
            table: &h,
        });

        stats.equivalence_queries += 1;
        let answer = equivalence.query(&hyp)?;
        let w = match answer {
            EquivalenceAnswer::Equivalent => {
                rec.events.push(LearnEvent::Equivalent {
                    iteration,
                    bound: equivalence.bound(),
                });
                hypothesis = Some((hyp, h));
                break Status::Converged;
            }
            EquivalenceAnswer::Counterexample(w) => w,
        };

        let target_value = table.value(&w)?;
        rec.flush_queries(&mut table);
        let tail = cfg.strategy.counterexample_suffix(table.mask(), &w);
        let missing = tail.suffixes().filter(|s| !table.mask().suffixes().contains(s)).count();
        let over_budget = table.mask().cols() + missing > cfg.max_cols;
        let added = if over_budget { Vec::new() } else { table.add_suffixes(&tail) };
        rec.events.push(LearnEvent::Counterexample {
            iteration,
            word: rec.names(&w),
            target: target_value.to_string(),
            hypothesis: hyp.evaluate(&w)?.to_string(),
            added: added.iter().map(|s| rec.names(s)).collect(),
        });
        hypothesis = Some((hyp, h));
        if over_budget {
            break Status::BudgetExhausted(BudgetKind::Columns);
        }
        note_growth(&added, false, &table, &mut rec, &mut stats);

        if added.is_empty() {
            if unchanged_by.as_ref() == Some(&w) {
                break Status::BudgetExhausted(BudgetKind::Stalled);
            }
            unchanged_by = Some(w);
        } else {
            unchanged_by = None;
        }
    };

    if let Status::BudgetExhausted(kind) = status {
        rec.events.push(LearnEvent::Halted { reason: kind.as_str() });
    }
    rec.flush_queries(&mut table);
    stats.membership_queries = table.query_count();
    let (hypothesis, hypothesis_table) = match hypothesis {
        Some((w, h)) => (Some(w), Some(h)),
        None => (None, None),
    };
    Ok(LearnOutcome {
        status,
        strategy: cfg.strategy.name(),
        hypothesis,
        hypothesis_table,
        mask: table.mask().clone(),
        stats,
        events: rec.events,
        eq_bound: equivalence.bound(),
    })
}
