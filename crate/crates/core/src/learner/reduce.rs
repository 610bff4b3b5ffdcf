//! Best-effort state reduction by removing weakly dependent table rows.
//!
//! Given the table `H` behind a WFA `A` (rows indexed by `A`'s states), rows
//! that are max-plus combinations of the others are dropped one at a time.
//! With survivors `R`, let `C` hold, for each state, its coefficients over
//! `R`, and let `D` select `R`. Then `H = C ⊗ D ⊗ H` and the reduced automaton
//! is `(α ⊗ C, D ⊗ β, D ⊗ A_σ ⊗ C)`.
//!
//! The language is preserved when `H` is row- and column-closed and each row
//! is its state's future on `S`. For an arbitrary WFA, [`minimize`] uses the
//! state-future matrix over all words up to a length `k`. The result then
//! agrees with the original on every word of length at most `k`.

use thiserror::Error;

use crate::linalg::{self, Axis, LinalgError, Matrix, Vector};
use crate::semiring::Scalar;
use crate::wfa::{Wfa, WfaError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Wfa(#[from] WfaError),
    #[error("table has {rows} rows but the automaton has {states} states")]
    Shape { rows: usize, states: usize },
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub wfa: Wfa,
    /// Surviving row positions, in axis order.
    pub kept: Vec<usize>,
    /// Removed row positions, in removal order.
    pub removed: Vec<usize>,
    /// `C`: one row of coefficients over the survivors per original state.
    pub coefficients: Matrix,
}

/// Repeatedly removes the first row (in axis order) that is a combination of
/// the other remaining rows. Returns `(kept, removed)`.
pub fn eliminate_rows(h: &Matrix) -> Result<(Vec<usize>, Vec<usize>), LinalgError> {
    let mut kept: Vec<usize> = (0..h.nrows()).collect();
    let mut removed = Vec::new();
    'sweep: loop {
        for idx in 0..kept.len() {
            let basis: Vec<Vector> = kept
                .iter()
                .filter(|&&j| j != kept[idx])
                .map(|&j| h.row_vector(j))
                .collect();
            if linalg::combination_coeffs(&basis, &h.row_vector(kept[idx]))?.is_some() {
                removed.push(kept.remove(idx));
                continue 'sweep;
            }
        }
        return Ok((kept, removed));
    }
}

/// Reduces `wfa` using the table `h` whose rows correspond to its states.
/// Returns `wfa` unchanged (all rows kept) when no row is dependent.
pub fn reduce(wfa: &Wfa, h: &Matrix) -> Result<Reduction, ReduceError> {
    if h.nrows() != wfa.dim() {
        return Err(ReduceError::Shape {
            rows: h.nrows(),
            states: wfa.dim(),
        });
    }
    let (kept, removed) = eliminate_rows(h)?;
    let states = wfa.states().select(&kept);
    let survivors: Vec<Vector> = kept.iter().map(|&j| h.row_vector(j)).collect();

    let mut c_rows = Vec::with_capacity(h.nrows());
    for i in 0..h.nrows() {
        let row = match kept.iter().position(|&j| j == i) {
            Some(q) => Vector::unit(states.clone(), q).into_entries(),
            // Removed rows are combinations of survivors by transitivity of
            // dependence, and the principal solution finds some combination.
            None => linalg::combination_coeffs(&survivors, &h.row_vector(i))?
                .expect("dependent row expressible over survivors")
                .into_entries(),
        };
        c_rows.push(row);
    }
    let c = Matrix::from_rows(wfa.states().clone(), states.clone(), c_rows)?;

    let initial = linalg::vec_mat(wfa.initial(), &c)?;
    let final_entries: Vec<Scalar> = kept.iter().map(|&j| wfa.final_weights().get(j).clone()).collect();
    let final_weights = Vector::new(states.clone(), final_entries)?;
    let transitions = wfa
        .transitions()
        .iter()
        .map(|a| linalg::mat_mul(&a.select_rows(&kept), &c))
        .collect::<Result<Vec<_>, _>>()?;
    let reduced = Wfa::new(wfa.alphabet().clone(), initial, final_weights, transitions)?;
    Ok(Reduction {
        wfa: reduced,
        kept,
        removed,
        coefficients: c,
    })
}

/// `F(i, s) = e_i ⊗ A_s ⊗ β` for every word `s` of length at most `max_len`,
/// rows on the state axis, columns in shortlex order.
pub fn state_futures(wfa: &Wfa, max_len: usize) -> Result<Matrix, WfaError> {
    let words: Vec<_> = wfa.alphabet().words_up_to(max_len).collect();
    let mut cols = Vec::with_capacity(words.len());
    for w in &words {
        cols.push(wfa.futures(w)?);
    }
    let n = wfa.dim();
    let data = (0..n)
        .map(|i| cols.iter().map(|c| c.get(i).clone()).collect())
        .collect();
    let col_axis = Axis::from_words(&words)?;
    Ok(Matrix::from_rows(wfa.states().clone(), col_axis, data)?)
}

/// [`reduce`] against the state-future matrix up to `max_len`.
pub fn minimize(wfa: &Wfa, max_len: usize) -> Result<Reduction, ReduceError> {
    let f = state_futures(wfa, max_len)?;
    reduce(wfa, &f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hankel::{HankelMask, HankelTable};
    use crate::learner::build_hypothesis;
    use crate::oracles::{bounded_equivalence, WfaMembership};
    use crate::witnesses;

    fn worked_hypothesis() -> (Wfa, Matrix) {
        let target = witnesses::three_state();
        let al = target.alphabet().clone();
        let w = |xs: &[&str]| xs.iter().map(|x| al.parse_word(x).unwrap()).collect::<Vec<_>>();
        let mask = HankelMask::from_words(&w(&["", "a", "ab", "b"]), &w(&["", "a"])).unwrap();
        let mut m = WfaMembership::new(&target);
        let mut t = HankelTable::with_mask(&mut m, mask);
        build_hypothesis(&mut t, &al).unwrap()
    }

    #[test]
    fn worked_table_drops_dependent_rows() {
        let (hyp, h) = worked_hypothesis();
        let r = reduce(&hyp, &h).unwrap();
        // a = 8⊗ε ⊕ (−9)⊗ab goes first; then ab depends on {ε, b}.
        assert_eq!(r.removed.first(), Some(&1));
        assert!(r.wfa.dim() <= 3);
        assert_eq!(bounded_equivalence(&hyp, &r.wfa, 5).unwrap(), None);
    }

    #[test]
    fn independent_rows_are_kept() {
        let h = Matrix::from_ints(&[&[0, 5], &[5, 0]]);
        assert_eq!(eliminate_rows(&h).unwrap(), (vec![0, 1], vec![]));
        let a = witnesses::three_state();
        let id = Matrix::from_ints(&[&[0, -100, -100], &[-100, 0, -100], &[-100, -100, 0]]);
        let r = reduce(&a, &id).unwrap();
        assert_eq!(r.wfa, a);
    }

    #[test]
    fn duplicate_row_removed() {
        let h = Matrix::from_ints(&[&[1, 2], &[3, 1], &[1, 2]]);
        let (kept, removed) = eliminate_rows(&h).unwrap();
        assert_eq!(removed, vec![0]);
        assert_eq!(kept, vec![1, 2]);
    }

    #[test]
    fn minimize_preserves_bounded_language() {
        let a = witnesses::three_state();
        let r = minimize(&a, 4).unwrap();
        assert!(r.wfa.dim() <= a.dim());
        assert_eq!(bounded_equivalence(&a, &r.wfa, 4).unwrap(), None);
    }

    #[test]
    fn shape_mismatch() {
        let a = witnesses::three_state();
        let h = Matrix::from_ints(&[&[1]]);
        assert!(matches!(reduce(&a, &h), Err(ReduceError::Shape { .. })));
    }
}
