//! Two hand-built automata that exercise the learner's corner cases.

use crate::wfa::Wfa;
use crate::word::Alphabet;

const NONE: Option<i64> = None;

/// Three states over `{a, b}`, every weight finite.
///
/// The observation table `P = {ε, a, ab, b}`, `S = {ε, a}` built from it is
/// row-closed but not column-closed, and the hypothesis read off that table
/// disagrees with the table at `ab` (36 against 35).
pub fn three_state() -> Wfa {
    let s = Some;
    Wfa::from_table(
        Alphabet::from_chars("ab").unwrap(),
        &[s(6), s(11), s(1)],
        &[s(7), s(0), s(6)],
        &[
            &[&[s(2), s(3), s(1)], &[s(2), s(0), s(9)], &[s(3), s(0), s(8)]],
            &[&[s(9), s(6), s(2)], &[s(10), s(3), s(2)], &[s(8), s(5), s(4)]],
        ],
    )
    .expect("well-formed witness")
}

/// Three states over `{a, b, c}` with `f(aⁿ) = 0`, `f(aⁿb) = n`,
/// `f(aⁿc) = 2n`.
///
/// The rows `aⁿ` of its Hankel matrix are pairwise independent, so no finite
/// prefix set is row-closed and the learner cannot terminate.
pub fn counter() -> Wfa {
    let s = Some;
    Wfa::from_table(
        Alphabet::from_chars("abc").unwrap(),
        &[s(0), s(0), s(0)],
        &[s(0), NONE, NONE],
        &[
            &[&[s(0), NONE, NONE], &[NONE, s(1), NONE], &[NONE, NONE, s(2)]],
            &[&[NONE, NONE, NONE], &[s(0), NONE, NONE], &[NONE, NONE, NONE]],
            &[&[NONE, NONE, NONE], &[NONE, NONE, NONE], &[s(0), NONE, NONE]],
        ],
    )
    .expect("well-formed witness")
}
