//! Identities that closed tables and their hypotheses must satisfy.
//!
//! These are runtime checks, used by the learner's self-verification and by
//! the test suites; none of them is needed to learn.

use thiserror::Error;

use crate::hankel::{HankelError, HankelMask, HankelTable};
use crate::linalg::{self, Label, LinalgError, Matrix, SolveError};
use crate::semiring::Scalar;
use crate::wfa::{Wfa, WfaError};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Hankel(#[from] HankelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Wfa(#[from] WfaError),
    #[error("table is not row-closed at row {0:?}")]
    NotRowClosed(Label),
    #[error("table is not column-closed at column {0:?}")]
    NotColumnClosed(Label),
    #[error("table axes must be labelled by words")]
    UnlabelledAxis,
}

/// A word where a hypothesis and a table disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub word: Word,
    pub expected: Scalar,
    pub actual: Scalar,
}

fn word_axis(m: &Matrix, rows: bool) -> Result<Vec<Word>, CheckError> {
    let axis = if rows { m.row_axis() } else { m.col_axis() };
    axis.iter()
        .map(|l| l.as_word().cloned().ok_or(CheckError::UnlabelledAxis))
        .collect()
}

/// `f(p·s) = H(p,s)` for every cell of the word-labelled table `h`.
pub fn faithfulness(hyp: &Wfa, h: &Matrix) -> Result<(), Box<Violation>> {
    agreement(hyp, h, h.nrows())
}

/// `f(s) = H(ε,s)` for every column of `h`; `h`'s first row must be `ε`.
pub fn first_row_agreement(hyp: &Wfa, h: &Matrix) -> Result<(), Box<Violation>> {
    agreement(hyp, h, 1.min(h.nrows()))
}

fn agreement(hyp: &Wfa, h: &Matrix, rows: usize) -> Result<(), Box<Violation>> {
    let (Ok(ps), Ok(ss)) = (word_axis(h, true), word_axis(h, false)) else {
        panic!("agreement checks need word-labelled axes");
    };
    for (i, p) in ps.iter().enumerate().take(rows) {
        for (j, s) in ss.iter().enumerate() {
            let w = p.concat(s);
            let actual = hyp.evaluate(&w).expect("table words use the hypothesis alphabet");
            let expected = h.get(i, j);
            if &actual != expected {
                return Err(Box::new(Violation {
                    word: w,
                    expected: expected.clone(),
                    actual,
                }));
            }
        }
    }
    Ok(())
}

/// A table together with the principal solutions of its closedness systems:
/// `X_σ ⊗ H = H_{(Pσ,S)}` (`P × P`) and `H ⊗ Y_σ = H_{(P,σS)}` (`S × S`).
/// Both shifted blocks are indexed by `P × S`.
#[derive(Debug, Clone)]
pub struct ClosedTable {
    pub mask: HankelMask,
    pub h: Matrix,
    pub xs: Vec<Matrix>,
    pub ys: Vec<Matrix>,
}

impl ClosedTable {
    /// Solves both systems for every symbol. Fails if the table is not
    /// row-closed or not column-closed.
    pub fn build(table: &mut HankelTable<'_>, alphabet_len: usize) -> Result<ClosedTable, CheckError> {
        let h = table.block()?;
        let (rows, cols) = (h.row_axis().clone(), h.col_axis().clone());
        let ht = h.transpose();
        let mut xs = Vec::with_capacity(alphabet_len);
        let mut ys = Vec::with_capacity(alphabet_len);
        for sym in 0..alphabet_len {
            let next = table.successor_rows(sym)?;
            let x = linalg::solve_matrix(&h, &next).map_err(|e| match e {
                SolveError::Unsolvable { row } => CheckError::NotRowClosed(row),
                SolveError::Shape(e) => e.into(),
            })?;
            xs.push(x.relabel(rows.clone(), rows.clone())?);

            let prev = table.predecessor_cols(sym)?;
            let yt = linalg::solve_matrix(&ht, &prev.transpose()).map_err(|e| match e {
                SolveError::Unsolvable { row } => CheckError::NotColumnClosed(row),
                SolveError::Shape(e) => e.into(),
            })?;
            ys.push(yt.transpose().relabel(cols.clone(), cols.clone())?);
        }
        Ok(ClosedTable {
            mask: table.mask().clone(),
            h,
            xs,
            ys,
        })
    }

    /// `X_σ ⊗ H = H ⊗ Y_σ` for every `σ`. Returns the first failing symbol.
    pub fn exchange(&self) -> Result<(), usize> {
        for (sym, (x, y)) in self.xs.iter().zip(&self.ys).enumerate() {
            let left = linalg::mat_mul(x, &self.h).expect("square solutions");
            let right = linalg::mat_mul(&self.h, y).expect("square solutions");
            if left != right {
                return Err(sym);
            }
        }
        Ok(())
    }

    /// For every `u ∈ S` and split `u = s·w`:
    /// `(X_{s₁} ⊗ … ⊗ X_{sₙ} ⊗ H)(:,w) = H(:,u)`. Returns the failing `(s, w)`.
    pub fn shifting_columns(&self) -> Result<(), (Word, Word)> {
        let suffixes: Vec<&Word> = self.mask.suffixes().iter().collect();
        for u in &suffixes {
            let target = self.h.column_vector(self.col(u));
            for k in 0..=u.len() {
                let (s, w) = (u.prefix(k), u.suffix(u.len() - k));
                let mut m = self.h.clone();
                for sym in s.iter().rev() {
                    m = linalg::mat_mul(&self.xs[sym], &m).expect("square solutions");
                }
                if m.column_vector(self.col(&w)) != target {
                    return Err((s, w));
                }
            }
        }
        Ok(())
    }

    /// For every `u ∈ P` and split `u = w·p`:
    /// `(H ⊗ Y_{p₁} ⊗ … ⊗ Y_{pₙ})(w,:) = H(u,:)`. Returns the failing `(w, p)`.
    pub fn shifting_rows(&self) -> Result<(), (Word, Word)> {
        let prefixes: Vec<&Word> = self.mask.prefixes().iter().collect();
        for u in &prefixes {
            let target = self.h.row_vector(self.row(u));
            for k in 0..=u.len() {
                let (w, p) = (u.prefix(k), u.suffix(u.len() - k));
                let mut m = self.h.clone();
                for sym in p.iter() {
                    m = linalg::mat_mul(&m, &self.ys[sym]).expect("square solutions");
                }
                if m.row_vector(self.row(&w)) != target {
                    return Err((w, p));
                }
            }
        }
        Ok(())
    }

    fn row(&self, w: &Word) -> usize {
        self.mask.prefixes().get_index_of(w).expect("prefix-closed")
    }

    fn col(&self, w: &Word) -> usize {
        self.mask.suffixes().get_index_of(w).expect("suffix-closed")
    }
}
