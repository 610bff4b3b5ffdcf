//! Reference arithmetic for tests: plain `Option<i64>` max-plus, written
//! without the crate's linear algebra so results can be cross-checked.

#![allow(dead_code)]

use tropical_lstar::{Scalar, Wfa, Word};

pub type Weight = Option<i64>;

pub fn weight(s: &Scalar) -> Weight {
    s.as_rational().map(|q| {
        assert!(q.is_integer(), "reference arithmetic is integral, got {s}");
        i64::try_from(q.to_integer()).expect("fits in i64")
    })
}

pub fn scalar(w: Weight) -> Scalar {
    w.map_or(Scalar::NegInf, Scalar::int)
}

pub fn plus(a: Weight, b: Weight) -> Weight {
    Some(a? + b?)
}

/// `(x ⊗ A)(j) = max_i x(i) + A(i,j)`.
pub fn row_times(x: &[Weight], a: &[Vec<Weight>]) -> Vec<Weight> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| x.iter().zip(a).map(|(&xi, row)| plus(xi, row[j])).max().flatten())
        .collect()
}

pub fn matrix(m: &tropical_lstar::linalg::Matrix) -> Vec<Vec<Weight>> {
    (0..m.nrows()).map(|i| m.row(i).iter().map(weight).collect()).collect()
}

/// `f(w)` by explicit state-vector propagation.
pub fn evaluate(wfa: &Wfa, word: &Word) -> Weight {
    let mut v: Vec<Weight> = wfa.initial().entries().iter().map(weight).collect();
    for sym in word.iter() {
        v = row_times(&v, &matrix(wfa.transition(sym)));
    }
    let beta: Vec<Weight> = wfa.final_weights().entries().iter().map(weight).collect();
    v.iter().zip(&beta).map(|(&a, &b)| plus(a, b)).max().flatten()
}

/// First word up to `max_len` (shortlex) where the two automata differ.
pub fn first_difference(a: &Wfa, b: &Wfa, max_len: usize) -> Option<Word> {
    a.alphabet().words_up_to(max_len).find(|w| evaluate(a, w) != evaluate(b, w))
}
