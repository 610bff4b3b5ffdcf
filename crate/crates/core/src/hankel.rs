//! Oracle-backed Hankel tables.
//!
//! `H(p, s) = m(p·s)`. The table tracks a mask `(P, S)` with `P`
//! prefix-closed and `S` suffix-closed, both containing `ε` first. Entries
//! are memoized per concatenated word, so each distinct word reaches the
//! oracle at most once.

use std::collections::HashMap;

use indexmap::IndexSet;
use thiserror::Error;

use crate::linalg::{Axis, LinalgError, Matrix};
use crate::oracles::{MembershipOracle, OracleError};
use crate::semiring::Scalar;
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HankelError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("row {0:?} would break prefix-closedness")]
    Detached(Word),
    #[error("column {0:?} would break suffix-closedness")]
    DetachedSuffix(Word),
    #[error("{0:?} appears twice")]
    Duplicate(Word),
}

/// Row and column index sets of an observation table, in insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HankelMask {
    prefixes: IndexSet<Word>,
    suffixes: IndexSet<Word>,
}

impl Default for HankelMask {
    fn default() -> Self {
        HankelMask::new()
    }
}

impl HankelMask {
    /// `P = S = {ε}`.
    pub fn new() -> HankelMask {
        HankelMask {
            prefixes: [Word::empty()].into_iter().collect(),
            suffixes: [Word::empty()].into_iter().collect(),
        }
    }

    /// Builds a mask from explicit lists. `ε` is inserted first if absent;
    /// each other word must extend an earlier row (resp. column) by one symbol.
    pub fn from_words(prefixes: &[Word], suffixes: &[Word]) -> Result<HankelMask, HankelError> {
        let mut mask = HankelMask::new();
        for p in prefixes.iter().filter(|p| !p.is_empty()) {
            if mask.prefixes.contains(p) {
                return Err(HankelError::Duplicate(p.clone()));
            }
            mask.add_row(p.clone())?;
        }
        for s in suffixes.iter().filter(|s| !s.is_empty()) {
            if mask.suffixes.contains(s) {
                return Err(HankelError::Duplicate(s.clone()));
            }
            if !mask.suffixes.contains(&s.suffix(s.len() - 1)) {
                return Err(HankelError::DetachedSuffix(s.clone()));
            }
            mask.suffixes.insert(s.clone());
        }
        Ok(mask)
    }

    pub fn prefixes(&self) -> &IndexSet<Word> {
        &self.prefixes
    }

    pub fn suffixes(&self) -> &IndexSet<Word> {
        &self.suffixes
    }

    pub fn rows(&self) -> usize {
        self.prefixes.len()
    }

    pub fn cols(&self) -> usize {
        self.suffixes.len()
    }

    pub fn row_axis(&self) -> Axis {
        Axis::from_words(&self.prefixes).expect("mask rows are distinct")
    }

    pub fn col_axis(&self) -> Axis {
        Axis::from_words(&self.suffixes).expect("mask columns are distinct")
    }

    /// Appends `p`, whose parent must already be a row. Returns false if `p`
    /// is already present.
    pub fn add_row(&mut self, p: Word) -> Result<bool, HankelError> {
        if self.prefixes.contains(&p) {
            return Ok(false);
        }
        match p.parent() {
            Some(parent) if self.prefixes.contains(&parent) => {
                self.prefixes.insert(p);
                Ok(true)
            }
            _ => Err(HankelError::Detached(p)),
        }
    }

    /// Appends every suffix of `s`, shortest first, skipping those present.
    /// Returns the words actually added.
    pub fn add_suffixes(&mut self, s: &Word) -> Vec<Word> {
        s.suffixes().filter(|x| self.suffixes.insert(x.clone())).collect()
    }

    /// Appends a single column `σs` whose tail `s` is already a column.
    pub fn add_column(&mut self, s: Word) -> Result<bool, HankelError> {
        if self.suffixes.contains(&s) {
            return Ok(false);
        }
        if s.is_empty() || !self.suffixes.contains(&s.suffix(s.len() - 1)) {
            return Err(HankelError::DetachedSuffix(s));
        }
        self.suffixes.insert(s);
        Ok(true)
    }

    pub fn is_prefix_closed(&self) -> bool {
        self.prefixes.contains(&Word::empty())
            && self
                .prefixes
                .iter()
                .all(|p| p.parent().is_none_or(|q| self.prefixes.contains(&q)))
    }

    pub fn is_suffix_closed(&self) -> bool {
        self.suffixes.contains(&Word::empty())
            && self
                .suffixes
                .iter()
                .all(|s| s.is_empty() || self.suffixes.contains(&s.suffix(s.len() - 1)))
    }
}

/// A memoizing view of the Hankel matrix of the language behind `oracle`.
pub struct HankelTable<'o> {
    mask: HankelMask,
    cache: HashMap<Word, Scalar>,
    oracle: &'o mut dyn MembershipOracle,
    fresh: Vec<(Word, Scalar)>,
}

impl<'o> HankelTable<'o> {
    pub fn new(oracle: &'o mut dyn MembershipOracle) -> Self {
        HankelTable::with_mask(oracle, HankelMask::new())
    }

    pub fn with_mask(oracle: &'o mut dyn MembershipOracle, mask: HankelMask) -> Self {
        HankelTable {
            mask,
            cache: HashMap::new(),
            oracle,
            fresh: Vec::new(),
        }
    }

    pub fn mask(&self) -> &HankelMask {
        &self.mask
    }

    /// Number of distinct words queried so far.
    pub fn query_count(&self) -> usize {
        self.cache.len()
    }

    pub fn cached(&self, word: &Word) -> Option<&Scalar> {
        self.cache.get(word)
    }

    /// Membership queries issued since the last call, in issue order.
    pub fn drain_fresh(&mut self) -> Vec<(Word, Scalar)> {
        std::mem::take(&mut self.fresh)
    }

    /// `m(w)`, asking the oracle only on the first request.
    pub fn value(&mut self, word: &Word) -> Result<Scalar, HankelError> {
        if let Some(v) = self.cache.get(word) {
            return Ok(v.clone());
        }
        let v = self.oracle.query(word)?;
        self.cache.insert(word.clone(), v.clone());
        self.fresh.push((word.clone(), v.clone()));
        Ok(v)
    }

    /// `H(p, s) = m(p·s)`; `p` and `s` need not be in the mask.
    pub fn entry(&mut self, p: &Word, s: &Word) -> Result<Scalar, HankelError> {
        self.value(&p.concat(s))
    }

    /// `H` restricted to the given rows and columns, labelled by them.
    pub fn subblock(&mut self, rows: &[Word], cols: &[Word]) -> Result<Matrix, HankelError> {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for p in rows {
            for s in cols {
                data.push(self.entry(p, s)?);
            }
        }
        let row_axis = Axis::from_words(rows)?;
        let col_axis = Axis::from_words(cols)?;
        Ok(Matrix::new(row_axis, col_axis, data)?)
    }

    fn rows(&self) -> Vec<Word> {
        self.mask.prefixes.iter().cloned().collect()
    }

    fn cols(&self) -> Vec<Word> {
        self.mask.suffixes.iter().cloned().collect()
    }

    /// `H_{(P,S)}`.
    pub fn block(&mut self) -> Result<Matrix, HankelError> {
        let (rows, cols) = (self.rows(), self.cols());
        self.subblock(&rows, &cols)
    }

    /// `H_{(Pσ,S)}`, rows labelled `pσ` in the order of `P`.
    pub fn successor_rows(&mut self, symbol: usize) -> Result<Matrix, HankelError> {
        let rows: Vec<Word> = self.mask.prefixes.iter().map(|p| p.push(symbol)).collect();
        let cols = self.cols();
        self.subblock(&rows, &cols)
    }

    /// `H_{(P,σS)}`, columns labelled `σs` in the order of `S`.
    pub fn predecessor_cols(&mut self, symbol: usize) -> Result<Matrix, HankelError> {
        let rows = self.rows();
        let cols: Vec<Word> = self.mask.suffixes.iter().map(|s| s.prepend(symbol)).collect();
        self.subblock(&rows, &cols)
    }

    pub fn add_row(&mut self, p: Word) -> Result<bool, HankelError> {
        self.mask.add_row(p)
    }

    pub fn add_suffixes(&mut self, s: &Word) -> Vec<Word> {
        self.mask.add_suffixes(s)
    }

    pub fn add_column(&mut self, s: Word) -> Result<bool, HankelError> {
        self.mask.add_column(s)
    }

    /// Tab-separated dump of `H_{(P,S)}`: a header of column words, then one
    /// line per row word. Only cached cells are printed; others show `?`.
    pub fn to_tsv(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("P\\S");
        for s in &self.mask.suffixes {
            out.push('\t');
            out.push_str(&alphabet.render(s));
        }
        out.push('\n');
        for p in &self.mask.prefixes {
            out.push_str(&alphabet.render(p));
            for s in &self.mask.suffixes {
                out.push('\t');
                match self.cache.get(&p.concat(s)) {
                    Some(v) => out.push_str(&v.to_string()),
                    None => out.push('?'),
                }
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::WfaMembership;
    use crate::witnesses;

    fn words(a: &Alphabet, list: &[&str]) -> Vec<Word> {
        list.iter().map(|w| a.parse_word(w).unwrap()).collect()
    }

    #[test]
    fn worked_table_entries() {
        let target = witnesses::three_state();
        let al = target.alphabet().clone();
        let mut m = WfaMembership::new(&target);
        let mask = HankelMask::from_words(&words(&al, &["", "a", "ab", "b"]), &words(&al, &["", "a"])).unwrap();
        let mut t = HankelTable::with_mask(&mut m, mask);
        let w = |s: &str| al.parse_word(s).unwrap();
        assert_eq!(t.entry(&w("ab"), &w("")).unwrap(), Scalar::int(35));
        assert_eq!(t.entry(&w("a"), &w("a")).unwrap(), Scalar::int(34));
        assert_eq!(t.block().unwrap(), t.block().unwrap());
        let h = t.block().unwrap();
        assert_eq!(h.entries(), Matrix::from_ints(&[&[13, 26], &[26, 34], &[35, 40], &[28, 30]]).entries());
        let ha = t.successor_rows(0).unwrap();
        assert_eq!(ha.entries(), Matrix::from_ints(&[&[26, 34], &[34, 42], &[40, 48], &[30, 39]]).entries());
        assert_eq!(ha.row_axis().get(2), Some(&w("aba").into()));
    }

    #[test]
    fn memoization_is_per_word() {
        let target = witnesses::three_state();
        let al = target.alphabet().clone();
        let mut m = WfaMembership::new(&target);
        let mut t = HankelTable::new(&mut m);
        let w = |s: &str| al.parse_word(s).unwrap();
        let x = t.entry(&w("ab"), &w("a")).unwrap();
        assert_eq!(t.entry(&w("a"), &w("ba")).unwrap(), x);
        assert_eq!(t.entry(&w(""), &w("aba")).unwrap(), x);
        assert_eq!(t.query_count(), 1);
        assert_eq!(t.drain_fresh().len(), 1);
        assert!(t.drain_fresh().is_empty());
    }

    #[test]
    fn empty_column_set_gives_zero_width() {
        let target = witnesses::three_state();
        let mut m = WfaMembership::new(&target);
        let mut t = HankelTable::new(&mut m);
        let b = t.subblock(&[Word::empty()], &[]).unwrap();
        assert_eq!((b.nrows(), b.ncols()), (1, 0));
    }

    #[test]
    fn suffix_insertion() {
        let al = Alphabet::from_chars("ab").unwrap();
        let mut mask = HankelMask::new();
        mask.add_suffixes(&al.parse_word("a").unwrap());
        let added = mask.add_suffixes(&al.parse_word("aba").unwrap());
        assert_eq!(added, words(&al, &["ba", "aba"]));
        assert_eq!(mask.suffixes().iter().cloned().collect::<Vec<_>>(), words(&al, &["", "a", "ba", "aba"]));
        assert!(mask.add_suffixes(&Word::empty()).is_empty());
        assert!(mask.is_suffix_closed());
    }

    #[test]
    fn row_insertion_respects_prefixes() {
        let al = Alphabet::from_chars("ab").unwrap();
        let mut mask = HankelMask::from_words(&words(&al, &["", "a"]), &[]).unwrap();
        assert!(mask.add_row(al.parse_word("ab").unwrap()).unwrap());
        assert!(mask.is_prefix_closed());
        assert_eq!(
            mask.add_row(al.parse_word("bab").unwrap()),
            Err(HankelError::Detached(al.parse_word("bab").unwrap()))
        );
        assert!(HankelMask::from_words(&words(&al, &["ab"]), &[]).is_err());
        assert!(HankelMask::from_words(&[], &words(&al, &["ab"])).is_err());
    }

    #[test]
    fn tsv_dump() {
        let target = witnesses::three_state();
        let al = target.alphabet().clone();
        let mut m = WfaMembership::new(&target);
        let mask = HankelMask::from_words(&words(&al, &["", "a"]), &words(&al, &["", "a"])).unwrap();
        let mut t = HankelTable::with_mask(&mut m, mask);
        t.block().unwrap();
        assert_eq!(t.to_tsv(&al), "P\\S\tε\ta\nε\t13\t26\na\t26\t34\n");
    }
}
