//! Weighted finite automata over the max-plus semiring.
//!
//! A WFA with `d` states is a row vector `α`, a column vector `β` and one
//! `d × d` matrix `A_σ` per symbol; `A_σ(i,j)` is the weight of the edge
//! `i → j`. The weight of `w = w₁…wₙ` is `α ⊗ A_{w₁} ⊗ … ⊗ A_{wₙ} ⊗ β`.

use serde_json::{Map, Value};
use thiserror::Error;

use crate::linalg::{self, Axis, LinalgError, Matrix, Vector};
use crate::semiring::Scalar;
use crate::word::{Alphabet, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WfaError {
    #[error("{what}: expected {expected}, got {actual}")]
    Dimension {
        what: String,
        expected: usize,
        actual: usize,
    },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{location}: {message}")]
    Parse { location: String, message: String },
}

fn parse_error(location: impl Into<String>, message: impl Into<String>) -> WfaError {
    WfaError::Parse {
        location: location.into(),
        message: message.into(),
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Wfa {
    alphabet: Alphabet,
    initial: Vector,
    final_weights: Vector,
    transitions: Vec<Matrix>,
}

impl Wfa {
    /// Assembles a WFA. The state axis is taken from `initial`; `final_weights`
    /// and every transition matrix are relabelled onto it. `transitions` is
    /// indexed by alphabet position.
    pub fn new(
        alphabet: Alphabet,
        initial: Vector,
        final_weights: Vector,
        transitions: Vec<Matrix>,
    ) -> Result<Wfa, WfaError> {
        let d = initial.len();
        let states = initial.axis().clone();
        if final_weights.len() != d {
            return Err(WfaError::Dimension {
                what: "final vector length".into(),
                expected: d,
                actual: final_weights.len(),
            });
        }
        if transitions.len() != alphabet.len() {
            return Err(WfaError::Dimension {
                what: "number of transition matrices".into(),
                expected: alphabet.len(),
                actual: transitions.len(),
            });
        }
        let mut relabelled = Vec::with_capacity(transitions.len());
        for (k, m) in transitions.into_iter().enumerate() {
            let sym = alphabet.symbol(k).unwrap_or("?");
            for (what, actual) in [("rows", m.nrows()), ("columns", m.ncols())] {
                if actual != d {
                    return Err(WfaError::Dimension {
                        what: format!("transition matrix for {sym:?} {what}"),
                        expected: d,
                        actual,
                    });
                }
            }
            relabelled.push(m.relabel(states.clone(), states.clone())?);
        }
        let final_weights = final_weights.relabel(states)?;
        Ok(Wfa {
            alphabet,
            initial,
            final_weights,
            transitions: relabelled,
        })
    }

    /// Integer-weighted WFA over state indices; `None` stands for `−∞`.
    pub fn from_table(
        alphabet: Alphabet,
        initial: &[Option<i64>],
        final_weights: &[Option<i64>],
        transitions: &[&[&[Option<i64>]]],
    ) -> Result<Wfa, WfaError> {
        let lift = |v: &[Option<i64>]| -> Vec<Scalar> {
            v.iter().map(|x| x.map_or(Scalar::NegInf, Scalar::int)).collect()
        };
        let mats = transitions
            .iter()
            .map(|m| Matrix::indexed(m.iter().map(|r| lift(r)).collect()))
            .collect::<Result<Vec<_>, _>>()?;
        Wfa::new(
            alphabet,
            Vector::indexed(lift(initial)),
            Vector::indexed(lift(final_weights)),
            mats,
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &Axis {
        self.initial.axis()
    }

    /// Number of states `d`.
    pub fn dim(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &Vector {
        &self.initial
    }

    pub fn final_weights(&self) -> &Vector {
        &self.final_weights
    }

    pub fn transition(&self, symbol: usize) -> &Matrix {
        &self.transitions[symbol]
    }

    pub fn transitions(&self) -> &[Matrix] {
        &self.transitions
    }

    /// Same automaton with states relabelled onto `axis`.
    pub fn relabel_states(self, axis: Axis) -> Result<Wfa, WfaError> {
        let initial = self.initial.relabel(axis)?;
        Wfa::new(self.alphabet, initial, self.final_weights, self.transitions)
    }

    /// `v ⊗ A_{w₁} ⊗ … ⊗ A_{wₙ}` for an arbitrary start row `v`.
    pub fn run(&self, start: &Vector, word: &Word) -> Result<Vector, WfaError> {
        self.alphabet.check(word)?;
        let mut v = start.clone();
        for sym in word.iter() {
            v = linalg::vec_mat(&v, &self.transitions[sym])?;
        }
        Ok(v)
    }

    /// `δ(w) = α ⊗ A_{w₁} ⊗ … ⊗ A_{wₙ}`; `δ(ε) = α`.
    pub fn configuration(&self, word: &Word) -> Result<Vector, WfaError> {
        self.run(&self.initial, word)
    }

    /// `f(w) = δ(w) ⊗ β`.
    pub fn evaluate(&self, word: &Word) -> Result<Scalar, WfaError> {
        let v = self.configuration(word)?;
        self.weigh(&v)
    }

    /// `v ⊗ β` for a configuration `v` of this automaton.
    pub fn weigh(&self, configuration: &Vector) -> Result<Scalar, WfaError> {
        Ok(linalg::dot(configuration, &self.final_weights)?)
    }

    /// `A_{w₁} ⊗ … ⊗ A_{wₙ} ⊗ β`: the column of weights of `w` read from each state.
    pub fn futures(&self, word: &Word) -> Result<Vector, WfaError> {
        self.alphabet.check(word)?;
        let mut v = self.final_weights.clone();
        for sym in word.iter().rev() {
            v = linalg::mat_vec(&self.transitions[sym], &v)?;
        }
        Ok(v)
    }

    /// Every entry of `α`, `β` and each `A_σ` is finite.
    pub fn is_rational(&self) -> bool {
        let finite = |xs: &[Scalar]| xs.iter().all(Scalar::is_finite);
        finite(self.initial.entries())
            && finite(self.final_weights.entries())
            && self.transitions.iter().all(|m| finite(m.entries()))
    }

    /// The WFA document as a JSON value.
    pub fn to_document(&self) -> Value {
        let tokens = |xs: &[Scalar]| Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect());
        let mut transitions = Map::new();
        for (k, m) in self.transitions.iter().enumerate() {
            let rows = (0..m.nrows()).map(|i| tokens(m.row(i))).collect();
            transitions.insert(self.alphabet.symbol(k).unwrap().to_string(), Value::Array(rows));
        }
        let mut doc = Map::new();
        doc.insert(
            "alphabet".into(),
            Value::Array(self.alphabet.symbols().map(|s| Value::String(s.into())).collect()),
        );
        doc.insert("initial".into(), tokens(self.initial.entries()));
        doc.insert("final".into(), tokens(self.final_weights.entries()));
        doc.insert("transitions".into(), Value::Object(transitions));
        Value::Object(doc)
    }

    /// Pretty-printed WFA document with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_document()).expect("serializable document");
        s.push('\n');
        s
    }

    /// Parses a WFA document. Errors name the offending key path, or the line
    /// and column for malformed JSON.
    pub fn from_json(text: &str) -> Result<Wfa, WfaError> {
        let value: Value = serde_json::from_str(text).map_err(|e| {
            parse_error(format!("line {}, column {}", e.line(), e.column()), e.to_string())
        })?;
        Wfa::from_document(&value)
    }

    pub fn from_document(doc: &Value) -> Result<Wfa, WfaError> {
        let obj = doc
            .as_object()
            .ok_or_else(|| parse_error("document", "expected an object"))?;
        let field = |key: &str| obj.get(key).ok_or_else(|| parse_error(key, "missing key"));

        let symbols = field("alphabet")?
            .as_array()
            .ok_or_else(|| parse_error("alphabet", "expected an array of symbols"))?
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| parse_error(format!("alphabet[{i}]"), "expected a string"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let alphabet = Alphabet::new(symbols).map_err(|e| parse_error("alphabet", e.to_string()))?;

        let initial = parse_scalars(field("initial")?, "initial")?;
        let d = initial.len();
        let final_weights = parse_scalars(field("final")?, "final")?;
        if final_weights.len() != d {
            return Err(parse_error(
                "final",
                format!("expected {d} entries to match `initial`, got {}", final_weights.len()),
            ));
        }

        let table = field("transitions")?
            .as_object()
            .ok_or_else(|| parse_error("transitions", "expected a map from symbol to matrix"))?;
        if let Some(extra) = table.keys().find(|k| alphabet.index_of(k).is_none()) {
            return Err(parse_error(
                format!("transitions.{extra}"),
                "symbol is not in the alphabet",
            ));
        }
        let mut transitions = Vec::with_capacity(alphabet.len());
        for sym in alphabet.symbols() {
            let loc = format!("transitions.{sym}");
            let rows = table
                .get(sym)
                .ok_or_else(|| parse_error(&loc, "missing matrix"))?
                .as_array()
                .ok_or_else(|| parse_error(&loc, "expected an array of rows"))?;
            if rows.len() != d {
                return Err(parse_error(&loc, format!("expected {d} rows, got {}", rows.len())));
            }
            let mut data = Vec::with_capacity(d);
            for (i, row) in rows.iter().enumerate() {
                let row_loc = format!("{loc}[{i}]");
                let row = parse_scalars(row, &row_loc)?;
                if row.len() != d {
                    return Err(parse_error(row_loc, format!("expected {d} entries, got {}", row.len())));
                }
                data.push(row);
            }
            transitions.push(Matrix::indexed(data)?.relabel(Axis::states(d), Axis::states(d))?);
        }
        Wfa::new(
            alphabet,
            Vector::indexed(initial),
            Vector::indexed(final_weights),
            transitions,
        )
    }
}

/// Scalar tokens are strings (`"-inf"`, `"3"`, `"7/2"`); bare JSON integers
/// are accepted too.
fn parse_scalars(value: &Value, location: &str) -> Result<Vec<Scalar>, WfaError> {
    let items = value
        .as_array()
        .ok_or_else(|| parse_error(location, "expected an array of scalar tokens"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let loc = format!("{location}[{i}]");
            match item {
                Value::String(s) => s.parse::<Scalar>().map_err(|e| parse_error(loc, e.to_string())),
                Value::Number(n) => n
                    .as_i64()
                    .map(Scalar::int)
                    .ok_or_else(|| parse_error(loc, format!("{n} is not an integer; use a \"p/q\" token"))),
                _ => Err(parse_error(loc, "expected a scalar token")),
            }
        })
        .collect()
}

impl std::fmt::Debug for Wfa {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Wfa over {:?} with {} states", self.alphabet, self.dim())?;
        writeln!(f, "  initial {:?}", self.initial)?;
        writeln!(f, "  final   {:?}", self.final_weights)?;
        for (k, m) in self.transitions.iter().enumerate() {
            write!(f, "  {:?}: {:?}", self.alphabet.symbol(k).unwrap_or("?"), m)?;
        }
        Ok(())
    }
}
