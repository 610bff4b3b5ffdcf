//! Teachers: membership and equivalence oracles, and a replayable query log.
//!
//! The shipped equivalence oracle is bounded: it compares the hypothesis with
//! the target on every word up to a length bound, in shortlex order. A word it
//! returns is always a genuine counterexample. An `Equivalent` answer only
//! covers words within the bound.

use std::cell::RefCell;
use std::collections::VecDeque;
use std::rc::Rc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, Vector};
use crate::semiring::Scalar;
use crate::wfa::{Wfa, WfaError};
use crate::word::{Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Wfa(#[from] WfaError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("hypothesis alphabet {hypothesis:?} differs from target alphabet {target:?}")]
    AlphabetMismatch {
        target: Vec<String>,
        hypothesis: Vec<String>,
    },
    #[error("equivalence script exhausted after {answered} answers")]
    ScriptExhausted { answered: usize },
    #[error("scripted counterexample {word} is not a counterexample (both sides give {value})")]
    NotACounterexample { word: String, value: Scalar },
    #[error("scripted Eq. rejected: hypothesis differs from target at {word}")]
    NotEquivalent { word: String },
}

/// `m : Σ* → ℚ ∪ {−∞}`. Must be deterministic.
pub trait MembershipOracle {
    fn query(&mut self, word: &Word) -> Result<Scalar, OracleError>;
}

impl<M: MembershipOracle + ?Sized> MembershipOracle for &mut M {
    fn query(&mut self, word: &Word) -> Result<Scalar, OracleError> {
        (**self).query(word)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceAnswer {
    Equivalent,
    Counterexample(Word),
}

pub trait EquivalenceOracle {
    fn query(&mut self, hypothesis: &Wfa) -> Result<EquivalenceAnswer, OracleError>;

    /// Longest word length an `Equivalent` answer vouches for, if bounded.
    fn bound(&self) -> Option<usize>;
}

impl<E: EquivalenceOracle + ?Sized> EquivalenceOracle for &mut E {
    fn query(&mut self, hypothesis: &Wfa) -> Result<EquivalenceAnswer, OracleError> {
        (**self).query(hypothesis)
    }

    fn bound(&self) -> Option<usize> {
        (**self).bound()
    }
}

impl<E: EquivalenceOracle + ?Sized> EquivalenceOracle for Box<E> {
    fn query(&mut self, hypothesis: &Wfa) -> Result<EquivalenceAnswer, OracleError> {
        (**self).query(hypothesis)
    }

    fn bound(&self) -> Option<usize> {
        (**self).bound()
    }
}

/// Answers membership queries by evaluating a target automaton.
#[derive(Debug, Clone)]
pub struct WfaMembership<'a> {
    target: &'a Wfa,
}

impl<'a> WfaMembership<'a> {
    pub fn new(target: &'a Wfa) -> Self {
        WfaMembership { target }
    }
}

impl MembershipOracle for WfaMembership<'_> {
    fn query(&mut self, word: &Word) -> Result<Scalar, OracleError> {
        Ok(self.target.evaluate(word)?)
    }
}

fn check_alphabets(target: &Wfa, hypothesis: &Wfa) -> Result<(), OracleError> {
    if target.alphabet() != hypothesis.alphabet() {
        let names = |w: &Wfa| w.alphabet().symbols().map(str::to_string).collect();
        return Err(OracleError::AlphabetMismatch {
            target: names(target),
            hypothesis: names(hypothesis),
        });
    }
    Ok(())
}

/// First word of length at most `max_len`, in shortlex order, on which the
/// two automata disagree.
///
/// Configurations are propagated level by level, so every word costs one
/// vector-matrix product per automaton.
pub fn bounded_equivalence(target: &Wfa, hypothesis: &Wfa, max_len: usize) -> Result<Option<Word>, OracleError> {
    check_alphabets(target, hypothesis)?;
    let sigma = target.alphabet().len();
    let mut level: Vec<(Word, Vector, Vector)> = vec![(
        Word::empty(),
        target.initial().clone(),
        hypothesis.initial().clone(),
    )];
    for len in 0..=max_len {
        for (w, t, h) in &level {
            if target.weigh(t)? != hypothesis.weigh(h)? {
                return Ok(Some(w.clone()));
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::with_capacity(level.len() * sigma);
        for (w, t, h) in &level {
            for sym in 0..sigma {
                next.push((
                    w.push(sym),
                    linalg::vec_mat(t, target.transition(sym)).map_err(WfaError::from)?,
                    linalg::vec_mat(h, hypothesis.transition(sym)).map_err(WfaError::from)?,
                ));
            }
        }
        level = next;
    }
    Ok(None)
}

/// Bounded-exhaustive equivalence against a target automaton.
#[derive(Debug, Clone)]
pub struct BoundedEquivalence<'a> {
    target: &'a Wfa,
    max_len: usize,
}

impl<'a> BoundedEquivalence<'a> {
    pub fn new(target: &'a Wfa, max_len: usize) -> Self {
        BoundedEquivalence { target, max_len }
    }
}

impl EquivalenceOracle for BoundedEquivalence<'_> {
    fn query(&mut self, hypothesis: &Wfa) -> Result<EquivalenceAnswer, OracleError> {
        Ok(match bounded_equivalence(self.target, hypothesis, self.max_len)? {
            Some(w) => EquivalenceAnswer::Counterexample(w),
            None => EquivalenceAnswer::Equivalent,
        })
    }

    fn bound(&self) -> Option<usize> {
        Some(self.max_len)
    }
}

/// One scripted equivalence answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScriptEntry {
    Eq,
    Counterexample(Word),
}

/// Replays a fixed list of answers, checking each against the target first.
///
/// A scripted counterexample must really separate hypothesis and target; a
/// scripted `Eq` must survive bounded testing up to `validation_len`.
#[derive(Debug, Clone)]
pub struct ScriptedEquivalence<'a> {
    target: &'a Wfa,
    script: VecDeque<ScriptEntry>,
    validation_len: usize,
    answered: usize,
}

impl<'a> ScriptedEquivalence<'a> {
    pub fn new(target: &'a Wfa, script: Vec<ScriptEntry>, validation_len: usize) -> Self {
        ScriptedEquivalence {
            target,
            script: script.into(),
            validation_len,
            answered: 0,
        }
    }

    /// Parses entries such as `ab` or `Eq.` (also `eq`) against the target's
    /// alphabet.
    pub fn parse_entries<S: AsRef<str>>(target: &Wfa, entries: &[S]) -> Result<Vec<ScriptEntry>, OracleError> {
        entries
            .iter()
            .map(|e| {
                let e = e.as_ref().trim();
                if e.eq_ignore_ascii_case("eq") || e.eq_ignore_ascii_case("eq.") {
                    Ok(ScriptEntry::Eq)
                } else {
                    Ok(ScriptEntry::Counterexample(target.alphabet().parse_word(e)?))
                }
            })
            .collect()
    }
}

impl EquivalenceOracle for ScriptedEquivalence<'_> {
    fn query(&mut self, hypothesis: &Wfa) -> Result<EquivalenceAnswer, OracleError> {
        check_alphabets(self.target, hypothesis)?;
        let entry = self.script.pop_front().ok_or(OracleError::ScriptExhausted {
            answered: self.answered,
        })?;
        self.answered += 1;
        let render = |w: &Word| self.target.alphabet().render(w);
        match entry {
            ScriptEntry::Eq => match bounded_equivalence(self.target, hypothesis, self.validation_len)? {
                Some(w) => Err(OracleError::NotEquivalent { word: render(&w) }),
                None => Ok(EquivalenceAnswer::Equivalent),
            },
            ScriptEntry::Counterexample(w) => {
                let expected = self.target.evaluate(&w)?;
                if hypothesis.evaluate(&w)? == expected {
                    return Err(OracleError::NotACounterexample {
                        word: render(&w),
                        value: expected,
                    });
                }
                Ok(EquivalenceAnswer::Counterexample(w))
            }
        }
    }

    fn bound(&self) -> Option<usize> {
        Some(self.validation_len)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QueryKind {
    Membership,
    Equivalence,
}

/// One line of a [`QueryLog`]. `seq` is a logical clock starting at 1.
///
/// For equivalence records `word` is the counterexample (empty with answer
/// `Eq.` when none), and `answer` is the target's value on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub seq: u64,
    pub kind: QueryKind,
    pub word: Vec<String>,
    pub answer: String,
    pub membership_queries: u64,
    pub equivalence_queries: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("record {seq}: logged answer {logged} but the target gives {actual}")]
    Mismatch { seq: u64, logged: String, actual: String },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Append-only record of every query put to the wrapped oracles.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QueryLog {
    records: Vec<QueryRecord>,
    membership: u64,
    equivalence: u64,
}

impl QueryLog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Shared handle for the logging wrappers.
    pub fn shared() -> Rc<RefCell<QueryLog>> {
        Rc::new(RefCell::new(QueryLog::new()))
    }

    pub fn records(&self) -> &[QueryRecord] {
        &self.records
    }

    pub fn membership_count(&self) -> u64 {
        self.membership
    }

    pub fn equivalence_count(&self) -> u64 {
        self.equivalence
    }

    fn push(&mut self, kind: QueryKind, word: Vec<String>, answer: String) {
        match kind {
            QueryKind::Membership => self.membership += 1,
            QueryKind::Equivalence => self.equivalence += 1,
        }
        self.records.push(QueryRecord {
            seq: self.records.len() as u64 + 1,
            kind,
            word,
            answer,
            membership_queries: self.membership,
            equivalence_queries: self.equivalence,
        });
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("serializable record"));
            out.push('\n');
        }
        out
    }

    pub fn from_json_lines(text: &str) -> Result<QueryLog, ReplayError> {
        let mut log = QueryLog::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let rec: QueryRecord = serde_json::from_str(line).map_err(|e| ReplayError::Malformed {
                line: i + 1,
                message: e.to_string(),
            })?;
            match rec.kind {
                QueryKind::Membership => log.membership += 1,
                QueryKind::Equivalence => log.equivalence += 1,
            }
            log.records.push(rec);
        }
        Ok(log)
    }

    /// Re-asks every logged word of `target` and checks the recorded answer.
    pub fn replay(&self, target: &Wfa) -> Result<(), ReplayError> {
        for r in &self.records {
            if r.kind == QueryKind::Equivalence && r.answer == "Eq." {
                continue;
            }
            let w = target.alphabet().word_from_symbols(&r.word).map_err(OracleError::from)?;
            let actual = target.evaluate(&w).map_err(OracleError::from)?.to_string();
            if actual != r.answer {
                return Err(ReplayError::Mismatch {
                    seq: r.seq,
                    logged: r.answer.clone(),
                    actual,
                });
            }
        }
        Ok(())
    }
}

/// Membership oracle that records every query in a shared [`QueryLog`].
pub struct LoggedMembership<'a, M> {
    inner: M,
    target: &'a Wfa,
    log: Rc<RefCell<QueryLog>>,
}

impl<'a, M: MembershipOracle> LoggedMembership<'a, M> {
    /// `target` only supplies the alphabet used to render words.
    pub fn new(inner: M, target: &'a Wfa, log: Rc<RefCell<QueryLog>>) -> Self {
        LoggedMembership { inner, target, log }
    }
}

fn symbol_names(target: &Wfa, word: &Word) -> Result<Vec<String>, OracleError> {
    Ok(target
        .alphabet()
        .symbol_names(word)?
        .into_iter()
        .map(str::to_string)
        .collect())
}

impl<M: MembershipOracle> MembershipOracle for LoggedMembership<'_, M> {
    fn query(&mut self, word: &Word) -> Result<Scalar, OracleError> {
        let answer = self.inner.query(word)?;
        let names = symbol_names(self.target, word)?;
        self.log
            .borrow_mut()
            .push(QueryKind::Membership, names, answer.to_string());
        Ok(answer)
    }
}

/// Equivalence oracle that records every query in a shared [`QueryLog`].
pub struct LoggedEquivalence<'a, E> {
    inner: E,
    target: &'a Wfa,
    log: Rc<RefCell<QueryLog>>,
}

impl<'a, E: EquivalenceOracle> LoggedEquivalence<'a, E> {
    pub fn new(inner: E, target: &'a Wfa, log: Rc<RefCell<QueryLog>>) -> Self {
        LoggedEquivalence { inner, target, log }
    }
}

impl<E: EquivalenceOracle> EquivalenceOracle for LoggedEquivalence<'_, E> {
    fn query(&mut self, hypothesis: &Wfa) -> Result<EquivalenceAnswer, OracleError> {
        let answer = self.inner.query(hypothesis)?;
        let (names, token) = match &answer {
            EquivalenceAnswer::Equivalent => (Vec::new(), "Eq.".to_string()),
            EquivalenceAnswer::Counterexample(w) => {
                (symbol_names(self.target, w)?, self.target.evaluate(w)?.to_string())
            }
        };
        self.log.borrow_mut().push(QueryKind::Equivalence, names, token);
        Ok(answer)
    }

    fn bound(&self) -> Option<usize> {
        self.inner.bound()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Scalar;
    use crate::witnesses;

    #[test]
    fn membership_from_target() {
        let a = witnesses::three_state();
        let mut m = WfaMembership::new(&a);
        assert_eq!(m.query(&a.alphabet().parse_word("ab").unwrap()).unwrap(), Scalar::int(35));
        let eps = linalg::dot(a.initial(), a.final_weights()).unwrap();
        assert_eq!(m.query(&Word::empty()).unwrap(), eps);

        let b = witnesses::counter();
        let mut m = WfaMembership::new(&b);
        assert_eq!(m.query(&b.alphabet().parse_word("aab").unwrap()).unwrap(), Scalar::int(2));
    }

    #[test]
    fn reflexive_equivalence() {
        let a = witnesses::three_state();
        assert_eq!(bounded_equivalence(&a, &a, 5).unwrap(), None);
        let b = witnesses::counter();
        assert_eq!(bounded_equivalence(&b, &b, 4).unwrap(), None);
    }

    #[test]
    fn shifted_final_vector_differs_at_empty_word() {
        let a = witnesses::three_state();
        let shifted: Vec<Scalar> = a.final_weights().entries().iter().map(|x| x.otimes(&Scalar::int(1))).collect();
        let b = Wfa::new(
            a.alphabet().clone(),
            a.initial().clone(),
            Vector::indexed(shifted),
            a.transitions().to_vec(),
        )
        .unwrap();
        assert_eq!(bounded_equivalence(&a, &b, 3).unwrap(), Some(Word::empty()));
    }

    #[test]
    fn counterexamples_are_shortlex_first() {
        let a = witnesses::three_state();
        // Same automaton except A_b(0,0) drops from 9 to 0; ε and a still agree.
        let mut mats = a.transitions().to_vec();
        let b_rows: Vec<Vec<Scalar>> = (0..3)
            .map(|i| {
                let mut r = mats[1].row(i).to_vec();
                if i == 0 {
                    r[0] = Scalar::int(0);
                }
                r
            })
            .collect();
        mats[1] = linalg::Matrix::indexed(b_rows).unwrap();
        let h = Wfa::new(a.alphabet().clone(), a.initial().clone(), a.final_weights().clone(), mats).unwrap();
        let w = bounded_equivalence(&a, &h, 4).unwrap().unwrap();
        let earlier = a.alphabet().words_up_to(4).take_while(|x| x != &w);
        for x in earlier {
            assert_eq!(a.evaluate(&x).unwrap(), h.evaluate(&x).unwrap());
        }
        assert_ne!(a.evaluate(&w).unwrap(), h.evaluate(&w).unwrap());
    }

    #[test]
    fn script_validates_answers() {
        let a = witnesses::three_state();
        let ab = a.alphabet().parse_word("ab").unwrap();
        let mut e = ScriptedEquivalence::new(&a, vec![ScriptEntry::Counterexample(ab.clone())], 3);
        assert!(matches!(e.query(&a), Err(OracleError::NotACounterexample { .. })));

        let mut e = ScriptedEquivalence::new(&a, vec![ScriptEntry::Eq], 3);
        assert_eq!(e.query(&a).unwrap(), EquivalenceAnswer::Equivalent);
        assert!(matches!(e.query(&a), Err(OracleError::ScriptExhausted { answered: 1 })));

        let entries = ScriptedEquivalence::parse_entries(&a, &["ab", "Eq."]).unwrap();
        assert_eq!(entries, vec![ScriptEntry::Counterexample(ab), ScriptEntry::Eq]);
    }

    #[test]
    fn log_counts_and_replays() {
        let a = witnesses::three_state();
        let log = QueryLog::shared();
        let mut m = LoggedMembership::new(WfaMembership::new(&a), &a, log.clone());
        let mut e = LoggedEquivalence::new(BoundedEquivalence::new(&a, 2), &a, log.clone());
        for w in a.alphabet().words_up_to(2) {
            m.query(&w).unwrap();
        }
        e.query(&a).unwrap();
        let log = log.borrow();
        assert_eq!(log.membership_count(), 7);
        assert_eq!(log.equivalence_count(), 1);
        let text = log.to_json_lines();
        let back = QueryLog::from_json_lines(&text).unwrap();
        assert_eq!(&back, &*log);
        back.replay(&a).unwrap();
        assert!(back.replay(&witnesses::counter()).is_err());
    }
}
