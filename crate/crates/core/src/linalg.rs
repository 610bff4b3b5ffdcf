//! Max-plus vectors and matrices with labelled axes, and one-sided linear
//! systems `x ⊗ A = b`.
//!
//! Axes carry labels (state indices or words) in insertion order; lookups by
//! label are exact and the order is what every positional operation uses.
//! Systems are solved by residuation: compute the principal solution, then
//! substitute it back. If it fails, no solution exists.

use std::fmt;

use indexmap::IndexSet;
use thiserror::Error;

use crate::semiring::{self, Scalar, SemiringError};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{op}: dimension mismatch ({left} vs {right})")]
    DimensionMismatch {
        op: &'static str,
        left: usize,
        right: usize,
    },
    #[error("duplicate axis label {0:?}")]
    DuplicateLabel(Label),
    #[error("expected {expected} entries, got {actual}")]
    EntryCount { expected: usize, actual: usize },
    #[error(transparent)]
    Semiring(#[from] SemiringError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Shape(#[from] LinalgError),
    #[error("row {row:?} of the right-hand side is not in the row space")]
    Unsolvable { row: Label },
}

/// Axis label: a state index or a word (prefix/suffix of a Hankel table).
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Label {
    State(usize),
    Word(Word),
}

impl Label {
    pub fn as_word(&self) -> Option<&Word> {
        match self {
            Label::Word(w) => Some(w),
            Label::State(_) => None,
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::State(i) => write!(f, "#{i}"),
            Label::Word(w) => write!(f, "{w:?}"),
        }
    }
}

impl From<Word> for Label {
    fn from(w: Word) -> Self {
        Label::Word(w)
    }
}

/// Ordered list of distinct labels.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Axis(IndexSet<Label>);

impl Axis {
    /// `#0, #1, …, #(n-1)`.
    pub fn states(n: usize) -> Axis {
        Axis((0..n).map(Label::State).collect())
    }

    pub fn from_labels<I: IntoIterator<Item = Label>>(labels: I) -> Result<Axis, LinalgError> {
        let mut set = IndexSet::new();
        for l in labels {
            if let Some(dup) = set.replace(l) {
                return Err(LinalgError::DuplicateLabel(dup));
            }
        }
        Ok(Axis(set))
    }

    pub fn from_words<'a, I: IntoIterator<Item = &'a Word>>(words: I) -> Result<Axis, LinalgError> {
        Axis::from_labels(words.into_iter().cloned().map(Label::Word))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Label> {
        self.0.get_index(i)
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.0.get_index_of(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Label> {
        self.0.iter()
    }

    /// Labels at the given positions, in that order.
    pub fn select(&self, positions: &[usize]) -> Axis {
        Axis(positions.iter().map(|&i| self.0[i].clone()).collect())
    }
}

impl fmt::Debug for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// A labelled max-plus vector. Whether it acts as a row or a column depends
/// on the operation it is passed to.
#[derive(Clone, PartialEq, Eq)]
pub struct Vector {
    axis: Axis,
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(axis: Axis, entries: Vec<Scalar>) -> Result<Vector, LinalgError> {
        if axis.len() != entries.len() {
            return Err(LinalgError::EntryCount {
                expected: axis.len(),
                actual: entries.len(),
            });
        }
        Ok(Vector { axis, entries })
    }

    /// Vector over the state axis `#0..#n`.
    pub fn indexed(entries: Vec<Scalar>) -> Vector {
        Vector {
            axis: Axis::states(entries.len()),
            entries,
        }
    }

    pub fn from_ints(values: &[i64]) -> Vector {
        Vector::indexed(values.iter().map(|&v| Scalar::int(v)).collect())
    }

    /// `e_i`: `0` at `position`, `−∞` elsewhere.
    pub fn unit(axis: Axis, position: usize) -> Vector {
        let entries = (0..axis.len())
            .map(|i| if i == position { Scalar::unit() } else { Scalar::bottom() })
            .collect();
        Vector { axis, entries }
    }

    pub fn axis(&self) -> &Axis {
        &self.axis
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }

    pub fn at(&self, label: &Label) -> Option<&Scalar> {
        self.axis.position(label).map(|i| &self.entries[i])
    }

    /// Same entries under a different axis of the same length.
    pub fn relabel(self, axis: Axis) -> Result<Vector, LinalgError> {
        Vector::new(axis, self.entries)
    }

    /// `c ⊗ v`.
    pub fn scaled_by(&self, c: &Scalar) -> Vector {
        Vector {
            axis: self.axis.clone(),
            entries: self.entries.iter().map(|x| c.otimes(x)).collect(),
        }
    }

    /// Entrywise `⊕`.
    pub fn oplus(&self, other: &Vector) -> Result<Vector, LinalgError> {
        check_len("vector oplus", self.len(), other.len())?;
        Ok(Vector {
            axis: self.axis.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.oplus(b))
                .collect(),
        })
    }

    pub fn norm(&self) -> Result<Scalar, LinalgError> {
        Ok(semiring::norm(&self.entries)?)
    }

    pub fn scale(&self) -> Result<Vector, LinalgError> {
        Ok(Vector {
            axis: self.axis.clone(),
            entries: semiring::scale(&self.entries)?,
        })
    }

    pub fn height(&self) -> Result<Scalar, LinalgError> {
        Ok(semiring::height(&self.entries)?)
    }

    /// Pointwise `≤`. Vectors must have equal length.
    pub fn le(&self, other: &Vector) -> bool {
        self.len() == other.len() && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A labelled max-plus matrix, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: Axis,
    cols: Axis,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: Axis, cols: Axis, entries: Vec<Scalar>) -> Result<Matrix, LinalgError> {
        let expected = rows.len() * cols.len();
        if entries.len() != expected {
            return Err(LinalgError::EntryCount {
                expected,
                actual: entries.len(),
            });
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Axis, cols: Axis, data: Vec<Vec<Scalar>>) -> Result<Matrix, LinalgError> {
        if data.len() != rows.len() {
            return Err(LinalgError::EntryCount {
                expected: rows.len(),
                actual: data.len(),
            });
        }
        if let Some(bad) = data.iter().find(|r| r.len() != cols.len()) {
            return Err(LinalgError::EntryCount {
                expected: cols.len(),
                actual: bad.len(),
            });
        }
        Matrix::new(rows, cols, data.into_iter().flatten().collect())
    }

    /// Matrix over state axes; every row must have the same length.
    pub fn indexed(data: Vec<Vec<Scalar>>) -> Result<Matrix, LinalgError> {
        let width = data.first().map_or(0, Vec::len);
        Matrix::from_rows(Axis::states(data.len()), Axis::states(width), data)
    }

    pub fn from_ints(data: &[&[i64]]) -> Matrix {
        Matrix::indexed(
            data.iter()
                .map(|r| r.iter().map(|&v| Scalar::int(v)).collect())
                .collect(),
        )
        .expect("ragged integer matrix")
    }

    /// Stacks vectors as rows; every vector must share the first one's axis
    /// length. The column axis is taken from the first vector.
    pub fn stack(rows: Axis, vectors: &[Vector]) -> Result<Matrix, LinalgError> {
        let cols = vectors.first().map(|v| v.axis.clone()).unwrap_or_default();
        let data = vectors.iter().map(|v| v.entries.clone()).collect();
        Matrix::from_rows(rows, cols, data)
    }

    /// Diagonal `0`, off-diagonal `−∞`.
    pub fn identity(axis: Axis) -> Matrix {
        let n = axis.len();
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { Scalar::unit() } else { Scalar::bottom() })
            .collect();
        Matrix {
            rows: axis.clone(),
            cols: axis,
            entries,
        }
    }

    pub fn filled(rows: Axis, cols: Axis, value: Scalar) -> Matrix {
        let entries = vec![value; rows.len() * cols.len()];
        Matrix { rows, cols, entries }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_axis(&self) -> &Axis {
        &self.rows
    }

    pub fn col_axis(&self) -> &Axis {
        &self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.ncols() + j]
    }

    pub fn at(&self, row: &Label, col: &Label) -> Option<&Scalar> {
        let i = self.rows.position(row)?;
        let j = self.cols.position(col)?;
        Some(self.get(i, j))
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        let w = self.ncols();
        &self.entries[i * w..(i + 1) * w]
    }

    pub fn row_vector(&self, i: usize) -> Vector {
        Vector {
            axis: self.cols.clone(),
            entries: self.row(i).to_vec(),
        }
    }

    pub fn column_vector(&self, j: usize) -> Vector {
        Vector {
            axis: self.rows.clone(),
            entries: (0..self.nrows()).map(|i| self.get(i, j).clone()).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let (n, m) = (self.nrows(), self.ncols());
        let mut entries = Vec::with_capacity(n * m);
        for j in 0..m {
            for i in 0..n {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            entries,
        }
    }

    /// Same entries with new axes of the same lengths.
    pub fn relabel(self, rows: Axis, cols: Axis) -> Result<Matrix, LinalgError> {
        check_len("relabel rows", self.nrows(), rows.len())?;
        check_len("relabel cols", self.ncols(), cols.len())?;
        Ok(Matrix {
            rows,
            cols,
            entries: self.entries,
        })
    }

    /// Rows at the given positions.
    pub fn select_rows(&self, positions: &[usize]) -> Matrix {
        let entries = positions
            .iter()
            .flat_map(|&i| self.row(i).iter().cloned())
            .collect();
        Matrix {
            rows: self.rows.select(positions),
            cols: self.cols.clone(),
            entries,
        }
    }

    /// Columns at the given positions.
    pub fn select_cols(&self, positions: &[usize]) -> Matrix {
        let entries = (0..self.nrows())
            .flat_map(|i| positions.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Matrix {
            rows: self.rows.clone(),
            cols: self.cols.select(positions),
            entries,
        }
    }

    /// Entrywise `⊕`.
    pub fn oplus(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        check_len("matrix oplus rows", self.nrows(), other.nrows())?;
        check_len("matrix oplus cols", self.ncols(), other.ncols())?;
        Ok(Matrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.oplus(b))
                .collect(),
        })
    }

    /// Global maximum entry.
    pub fn norm(&self) -> Result<Scalar, LinalgError> {
        Ok(semiring::norm(&self.entries)?)
    }

    /// Every entry shifted by `−norm`, using the global maximum.
    pub fn scale(&self) -> Result<Matrix, LinalgError> {
        Ok(Matrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: semiring::scale(&self.entries)?,
        })
    }

    /// Global maximum minus global minimum.
    pub fn height(&self) -> Result<Scalar, LinalgError> {
        Ok(semiring::height(&self.entries)?)
    }

    /// True when some row is entirely `−∞`.
    pub fn has_bottom_row(&self) -> bool {
        (0..self.nrows()).any(|i| self.row(i).iter().all(Scalar::is_bottom))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {:?} x {:?}", self.rows, self.cols)?;
        for i in 0..self.nrows() {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {:?}: [{}]", self.rows.get(i).unwrap(), row.join(", "))?;
        }
        Ok(())
    }
}

fn check_len(op: &'static str, left: usize, right: usize) -> Result<(), LinalgError> {
    if left != right {
        return Err(LinalgError::DimensionMismatch { op, left, right });
    }
    Ok(())
}

/// `⊕_j x(j) ⊗ y(j)`.
pub fn dot(x: &Vector, y: &Vector) -> Result<Scalar, LinalgError> {
    check_len("dot", x.len(), y.len())?;
    Ok(dot_slices(&x.entries, &y.entries))
}

fn dot_slices(x: &[Scalar], y: &[Scalar]) -> Scalar {
    let mut acc = Scalar::bottom();
    for (a, b) in x.iter().zip(y) {
        if a.is_bottom() || b.is_bottom() {
            continue;
        }
        let t = a.otimes(b);
        if t > acc {
            acc = t;
        }
    }
    acc
}

/// `(A ⊗ B)(i,k) = ⊕_j A(i,j) ⊗ B(j,k)`, with `A`'s row axis and `B`'s
/// column axis.
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix, LinalgError> {
    check_len("mat_mul", a.ncols(), b.nrows())?;
    let bt = b.transpose();
    let mut entries = Vec::with_capacity(a.nrows() * b.ncols());
    for i in 0..a.nrows() {
        for k in 0..b.ncols() {
            entries.push(dot_slices(a.row(i), bt.row(k)));
        }
    }
    Ok(Matrix {
        rows: a.rows.clone(),
        cols: b.cols.clone(),
        entries,
    })
}

/// Row vector times matrix: `(x ⊗ A)(k) = ⊕_j x(j) ⊗ A(j,k)`.
pub fn vec_mat(x: &Vector, a: &Matrix) -> Result<Vector, LinalgError> {
    check_len("vec_mat", x.len(), a.nrows())?;
    Ok(Vector {
        axis: a.cols.clone(),
        entries: row_times(&x.entries, a),
    })
}

fn row_times(x: &[Scalar], a: &Matrix) -> Vec<Scalar> {
    let mut out = vec![Scalar::bottom(); a.ncols()];
    for (j, xj) in x.iter().enumerate() {
        if xj.is_bottom() {
            continue;
        }
        for (k, ajk) in a.row(j).iter().enumerate() {
            if ajk.is_bottom() {
                continue;
            }
            let t = xj.otimes(ajk);
            if t > out[k] {
                out[k] = t;
            }
        }
    }
    out
}

/// Matrix times column vector: `(A ⊗ v)(i) = ⊕_j A(i,j) ⊗ v(j)`.
pub fn mat_vec(a: &Matrix, v: &Vector) -> Result<Vector, LinalgError> {
    check_len("mat_vec", a.ncols(), v.len())?;
    Ok(Vector {
        axis: a.rows.clone(),
        entries: (0..a.nrows()).map(|i| dot_slices(a.row(i), &v.entries)).collect(),
    })
}

/// Residuation candidate for `x ⊗ A = b`:
/// `x(i) = min_j (b(j) − A(i,j))` over the finite `A(i,j)`.
///
/// An all-`−∞` row of `A` yields `x(i) = −∞`. A finite `A(i,j)` facing
/// `b(j) = −∞` forces `x(i) = −∞`. The result is indexed by `A`'s rows and
/// need not be a solution.
pub fn principal_solution(a: &Matrix, b: &Vector) -> Result<Vector, LinalgError> {
    check_len("principal_solution", a.ncols(), b.len())?;
    Ok(Vector {
        axis: a.rows.clone(),
        entries: principal_entries(a, &b.entries),
    })
}

fn principal_entries(a: &Matrix, b: &[Scalar]) -> Vec<Scalar> {
    (0..a.nrows())
        .map(|i| {
            let mut best: Option<Scalar> = None;
            for (aij, bj) in a.row(i).iter().zip(b) {
                let Some(aij) = aij.as_rational() else {
                    continue;
                };
                let term = match bj.as_rational() {
                    Some(bj) => Scalar::Finite(bj - aij),
                    None => return Scalar::bottom(),
                };
                if best.as_ref().is_none_or(|cur| term < *cur) {
                    best = Some(term);
                }
            }
            best.unwrap_or(Scalar::NegInf)
        })
        .collect()
}

/// Whether `x ⊗ A = b` holds exactly.
pub fn is_solution(x: &Vector, a: &Matrix, b: &Vector) -> Result<bool, LinalgError> {
    check_len("is_solution (x vs rows)", x.len(), a.nrows())?;
    check_len("is_solution (b vs cols)", b.len(), a.ncols())?;
    Ok(row_times(&x.entries, a) == b.entries)
}

/// Solves `x ⊗ A = b`. Returns the principal solution when it is a solution
/// (the greatest one if `A` has no all-`−∞` row), otherwise `None`.
pub fn solve_row(a: &Matrix, b: &Vector) -> Result<Option<Vector>, LinalgError> {
    let x = principal_solution(a, b)?;
    let ok = row_times(&x.entries, a) == b.entries;
    Ok(ok.then_some(x))
}

/// Solves `X ⊗ A = B` row by row. `X` is indexed by `B`'s rows and `A`'s rows.
/// Fails with the first row of `B` that has no solution.
pub fn solve_matrix(a: &Matrix, b: &Matrix) -> Result<Matrix, SolveError> {
    check_len("solve_matrix", a.ncols(), b.ncols())?;
    let mut entries = Vec::with_capacity(b.nrows() * a.nrows());
    for k in 0..b.nrows() {
        let target = b.row(k);
        let x = principal_entries(a, target);
        if row_times(&x, a) != target {
            return Err(SolveError::Unsolvable {
                row: b.rows.get(k).cloned().expect("row in range"),
            });
        }
        entries.extend(x);
    }
    Ok(Matrix {
        rows: b.rows.clone(),
        cols: a.rows.clone(),
        entries,
    })
}

/// Solves `A ⊗ y = b` for a column vector `y` (the dual form, via the
/// transpose).
pub fn solve_column(a: &Matrix, b: &Vector) -> Result<Option<Vector>, LinalgError> {
    solve_row(&a.transpose(), b)
}

/// Coefficients `c` with `target = ⊕_i c(i) ⊗ basis[i]`, if any. The
/// coefficient vector is indexed `#0..#n` in basis order.
pub fn combination_coeffs(basis: &[Vector], target: &Vector) -> Result<Option<Vector>, LinalgError> {
    if basis.is_empty() {
        let bottom = target.entries.iter().all(Scalar::is_bottom);
        return Ok(bottom.then(|| Vector::indexed(Vec::new())));
    }
    for v in basis {
        check_len("combination_coeffs", v.len(), target.len())?;
    }
    let a = Matrix::stack(Axis::states(basis.len()), basis)?;
    solve_row(&a, target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ninf() -> Scalar {
        Scalar::NegInf
    }

    /// `H_{(P,S)}` for `P = {ε, a, ab, b}`, `S = {ε, a}` of the worked example.
    fn table() -> Matrix {
        Matrix::from_ints(&[&[13, 26], &[26, 34], &[35, 40], &[28, 30]])
    }

    #[test]
    fn identity_is_unit() {
        let m = table();
        let id = Matrix::identity(Axis::states(4));
        assert_eq!(mat_mul(&id, &m).unwrap(), m);
        let id2 = Matrix::identity(Axis::states(2));
        assert_eq!(mat_mul(&m, &id2).unwrap(), m);
    }

    #[test]
    fn configuration_step() {
        // (6,11,1) ⊗ A_a; hand expansion: max(8,13,4)=13, max(9,11,1)=11, max(7,20,9)=20.
        let a_a = Matrix::from_ints(&[&[2, 3, 1], &[2, 0, 9], &[3, 0, 8]]);
        let x = Vector::from_ints(&[6, 11, 1]);
        assert_eq!(vec_mat(&x, &a_a).unwrap().entries(), Vector::from_ints(&[13, 11, 20]).entries());
    }

    #[test]
    fn bottom_row_annihilates() {
        let a = Matrix::indexed(vec![vec![ninf(), ninf()], vec![Scalar::int(1), Scalar::int(2)]]).unwrap();
        let b = Matrix::from_ints(&[&[4, 5, 6], &[7, 8, 9]]);
        let p = mat_mul(&a, &b).unwrap();
        assert!(p.row(0).iter().all(Scalar::is_bottom));
    }

    #[test]
    fn mat_mul_dimension_mismatch() {
        let a = Matrix::from_ints(&[&[1, 2]]);
        assert!(matches!(
            mat_mul(&a, &a),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn principal_solution_of_worked_table() {
        // min(34-13, 42-26) = 16; min(34-26, 42-34) = 8; min(34-35, 42-40) = -1; min(34-28, 42-30) = 6
        let b = Vector::from_ints(&[34, 42]);
        let x = principal_solution(&table(), &b).unwrap();
        assert_eq!(x.entries(), Vector::from_ints(&[16, 8, -1, 6]).entries());
        assert!(is_solution(&x, &table(), &b).unwrap());
        assert_eq!(solve_row(&table(), &b).unwrap().unwrap(), x);
    }

    #[test]
    fn principal_solution_against_identity() {
        let b = Vector::indexed(vec![Scalar::int(3), ninf(), Scalar::ratio(1, 2)]);
        let id = Matrix::identity(Axis::states(3));
        assert_eq!(principal_solution(&id, &b).unwrap(), b);
        assert!(is_solution(&b, &id, &b).unwrap());
        assert_eq!(solve_row(&id, &b).unwrap().unwrap(), b);
    }

    #[test]
    fn bottom_row_gets_bottom_coefficient() {
        let a = Matrix::indexed(vec![
            vec![Scalar::int(1), Scalar::int(2)],
            vec![ninf(), ninf()],
        ])
        .unwrap();
        let x = principal_solution(&a, &Vector::from_ints(&[5, 9])).unwrap();
        assert_eq!(x.get(1), &ninf());
    }

    #[test]
    fn bottom_target_forces_bottom() {
        let a = Matrix::from_ints(&[&[1, 2]]);
        let b = Vector::indexed(vec![ninf(), Scalar::int(3)]);
        let x = principal_solution(&a, &b).unwrap();
        assert_eq!(x.get(0), &ninf());
        assert!(solve_row(&a, &b).unwrap().is_none());
    }

    #[test]
    fn unsolvable_row() {
        // principal (min(35-13, 40-26), min(35-26, 40-34)) = (14, 6); max(27, 32) = 32 ≠ 35
        let a = Matrix::from_ints(&[&[13, 26], &[26, 34]]);
        let b = Vector::from_ints(&[35, 40]);
        let x = principal_solution(&a, &b).unwrap();
        assert_eq!(x.entries(), Vector::from_ints(&[14, 6]).entries());
        assert!(!is_solution(&x, &a, &b).unwrap());
        assert!(solve_row(&a, &b).unwrap().is_none());
    }

    #[test]
    fn solve_matrix_successor_rows() {
        // Successor rows a, aa, aba, ba of the worked table.
        let rhs = Matrix::from_ints(&[&[26, 34], &[34, 42], &[40, 48], &[30, 39]]);
        let x = solve_matrix(&table(), &rhs).unwrap();
        let expected = Matrix::from_ints(&[
            &[8, 0, -9, -2],
            &[16, 8, -1, 6],
            &[22, 14, 5, 12],
            &[13, 4, -5, 2],
        ]);
        assert_eq!(x, expected);
        assert_eq!(mat_mul(&x, &table()).unwrap(), rhs);
    }

    #[test]
    fn solve_matrix_self_system() {
        let h = table();
        let x = solve_matrix(&h, &h).unwrap();
        assert_eq!(mat_mul(&x, &h).unwrap(), h);
        let id = Matrix::identity(Axis::states(4));
        assert_eq!(mat_mul(&id, &h).unwrap(), h);
    }

    #[test]
    fn solve_matrix_reports_failing_row() {
        let a = Matrix::from_ints(&[&[13, 26], &[26, 34]]);
        let rhs = Matrix::from_ints(&[&[26, 34], &[35, 40]]);
        assert_eq!(
            solve_matrix(&a, &rhs),
            Err(SolveError::Unsolvable { row: Label::State(1) })
        );
    }

    #[test]
    fn combinations_from_worked_example() {
        let h = table();
        let (eps, a, ab, b) = (h.row_vector(0), h.row_vector(1), h.row_vector(2), h.row_vector(3));
        let aa = Vector::from_ints(&[34, 42]);

        let c = combination_coeffs(&[eps.clone(), a.clone(), ab.clone(), b.clone()], &aa)
            .unwrap()
            .unwrap();
        assert_eq!(c.entries(), Vector::from_ints(&[16, 8, -1, 6]).entries());
        assert_eq!(a.scaled_by(&Scalar::int(8)).entries(), aa.entries());

        let c = combination_coeffs(&[eps.clone(), ab.clone()], &a).unwrap().unwrap();
        let witness = eps.scaled_by(&Scalar::int(8)).oplus(&ab.scaled_by(&Scalar::int(-9))).unwrap();
        assert_eq!(witness.entries(), a.entries());
        let rebuilt = eps.scaled_by(c.get(0)).oplus(&ab.scaled_by(c.get(1))).unwrap();
        assert_eq!(rebuilt.entries(), a.entries());

        assert!(combination_coeffs(&[eps, a], &ab).unwrap().is_none());
    }

    #[test]
    fn empty_basis() {
        let bottom = Vector::indexed(vec![ninf(), ninf()]);
        assert!(combination_coeffs(&[], &bottom).unwrap().is_some());
        assert!(combination_coeffs(&[], &Vector::from_ints(&[1, 2])).unwrap().is_none());
    }

    #[test]
    fn column_form_solve() {
        // Column (40, 48)ᵀ of A ⊗ y where A = [[13,26],[27,34]].
        let a = Matrix::from_ints(&[&[13, 26], &[21, 34]]);
        let y = Vector::from_ints(&[1, 14]);
        let b = mat_vec(&a, &y).unwrap();
        let got = solve_column(&a, &b).unwrap().unwrap();
        assert_eq!(mat_vec(&a, &got).unwrap(), b);
    }

    #[test]
    fn matrix_scale_and_height() {
        let m = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.scale().unwrap(), Matrix::from_ints(&[&[-3, -2], &[-1, 0]]));
        assert_eq!(m.height().unwrap(), Scalar::int(3));
    }

    #[test]
    fn axis_rejects_duplicates() {
        let w = Word::empty();
        assert!(Axis::from_words([&w, &w]).is_err());
    }
}
