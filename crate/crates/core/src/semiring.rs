//! Exact max-plus scalars.
//!
//! The carrier is `ℚ ∪ {−∞}`: `⊕` is `max`, `⊗` is ordinary addition, `−∞`
//! is the additive unit (and annihilates `⊗`), and `0` is the multiplicative
//! unit. Rationals are arbitrary precision, so every comparison is exact.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

/// An element of the max-plus semiring over the rationals.
///
/// The derived order puts [`Scalar::NegInf`] below every finite value, which
/// is exactly the order `⊕` takes the maximum of.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    #[default]
    NegInf,
    Finite(BigRational),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiringError {
    #[error("{op}: empty vector")]
    Empty { op: &'static str },
    #[error("{op}: every entry is -inf")]
    AllBottom { op: &'static str },
    #[error("{op}: entry {index} is -inf")]
    BottomEntry { op: &'static str, index: usize },
    #[error("invalid scalar token {token:?}")]
    InvalidToken { token: String },
}

impl Scalar {
    /// The additive unit `−∞`.
    pub const fn bottom() -> Scalar {
        Scalar::NegInf
    }

    /// The multiplicative unit `0`.
    pub fn unit() -> Scalar {
        Scalar::Finite(BigRational::zero())
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` in canonical form. Panics if `den` is zero.
    pub fn ratio(num: i64, den: i64) -> Scalar {
        Scalar::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Scalar::Finite(_))
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Scalar::NegInf)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::NegInf => None,
            Scalar::Finite(q) => Some(q),
        }
    }

    /// `self ⊕ other`, i.e. the maximum.
    pub fn oplus(&self, other: &Scalar) -> Scalar {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// `self ⊗ other`, i.e. the sum; `−∞` annihilates.
    pub fn otimes(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Finite(a), Scalar::Finite(b)) => Scalar::Finite(a + b),
            _ => Scalar::NegInf,
        }
    }

    /// Ordinary negation of a finite value. `−∞` has no inverse, so `None`.
    pub fn neg(&self) -> Option<Scalar> {
        self.as_rational().map(|q| Scalar::Finite(-q))
    }
}

/// `a ⊕ b`.
pub fn oplus(a: &Scalar, b: &Scalar) -> Scalar {
    a.oplus(b)
}

/// `a ⊗ b`.
pub fn otimes(a: &Scalar, b: &Scalar) -> Scalar {
    a.otimes(b)
}

/// `⊕` over an iterator; `−∞` for an empty one.
pub fn sum<'a, I>(items: I) -> Scalar
where
    I: IntoIterator<Item = &'a Scalar>,
{
    items
        .into_iter()
        .fold(Scalar::NegInf, |acc, x| if x > &acc { x.clone() } else { acc })
}

/// The largest entry. May be `−∞` when every entry is.
pub fn norm(entries: &[Scalar]) -> Result<Scalar, SemiringError> {
    if entries.is_empty() {
        return Err(SemiringError::Empty { op: "norm" });
    }
    Ok(sum(entries))
}

/// Shifts every entry by `−norm`, so the result has norm `0`.
pub fn scale(entries: &[Scalar]) -> Result<Vec<Scalar>, SemiringError> {
    let top = norm(entries)?;
    let shift = top.neg().ok_or(SemiringError::AllBottom { op: "scale" })?;
    Ok(entries.iter().map(|x| x.otimes(&shift)).collect())
}

/// Largest entry minus smallest entry. Every entry must be finite.
pub fn height(entries: &[Scalar]) -> Result<Scalar, SemiringError> {
    if entries.is_empty() {
        return Err(SemiringError::Empty { op: "height" });
    }
    let mut lo: Option<&BigRational> = None;
    let mut hi: Option<&BigRational> = None;
    for (index, x) in entries.iter().enumerate() {
        let q = x
            .as_rational()
            .ok_or(SemiringError::BottomEntry { op: "height", index })?;
        if lo.is_none_or(|l| q < l) {
            lo = Some(q);
        }
        if hi.is_none_or(|h| q > h) {
            hi = Some(q);
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) => Ok(Scalar::Finite(h - l)),
        _ => unreachable!("non-empty input"),
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Finite(q)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::NegInf => f.write_str("-inf"),
            Scalar::Finite(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Finite(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = SemiringError;

    /// Accepts `-inf`, an integer, or a fraction `p/q` with `q ≠ 0`.
    /// Non-canonical fractions such as `4/2` are reduced.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let token = s.trim();
        let invalid = || SemiringError::InvalidToken {
            token: s.to_string(),
        };
        if token == "-inf" {
            return Ok(Scalar::NegInf);
        }
        let parse_int = |t: &str| -> Result<BigInt, SemiringError> {
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(invalid());
            }
            t.parse::<BigInt>().map_err(|_| invalid())
        };
        match token.split_once('/') {
            None => Ok(Scalar::Finite(BigRational::from_integer(parse_int(token)?))),
            Some((num, den)) => {
                let num = parse_int(num)?;
                let den = parse_int(den)?;
                if den.is_zero() {
                    return Err(invalid());
                }
                Ok(Scalar::Finite(BigRational::new(num, den)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::int(n)
    }

    fn ninf() -> Scalar {
        Scalar::NegInf
    }

    #[test]
    fn oplus_examples() {
        assert_eq!(oplus(&s(3), &s(5)), s(5));
        assert_eq!(oplus(&ninf(), &s(7)), s(7));
        assert_eq!(oplus(&ninf(), &ninf()), ninf());
    }

    #[test]
    fn otimes_examples() {
        assert_eq!(otimes(&s(3), &s(5)), s(8));
        assert_eq!(otimes(&ninf(), &s(5)), ninf());
        assert_eq!(otimes(&Scalar::unit(), &Scalar::ratio(7, 2)), Scalar::ratio(7, 2));
        assert_eq!(otimes(&Scalar::unit(), &ninf()), ninf());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(&[s(1), s(2), s(3)]).unwrap(), s(3));
        assert_eq!(norm(&[ninf(), ninf()]).unwrap(), ninf());
        assert_eq!(norm(&[s(5), ninf(), s(2)]).unwrap(), s(5));
        assert!(matches!(norm(&[]), Err(SemiringError::Empty { .. })));
    }

    #[test]
    fn scale_examples() {
        assert_eq!(scale(&[s(1), s(2), s(3)]).unwrap(), vec![s(-2), s(-1), s(0)]);
        assert_eq!(scale(&[s(0), ninf()]).unwrap(), vec![s(0), ninf()]);
        assert!(matches!(
            scale(&[ninf(), ninf()]),
            Err(SemiringError::AllBottom { .. })
        ));
    }

    #[test]
    fn height_examples() {
        assert_eq!(height(&[s(1), s(3), s(2)]).unwrap(), s(2));
        assert_eq!(height(&[s(5), s(5), s(5)]).unwrap(), s(0));
        assert_eq!(height(&[s(-1), s(4)]).unwrap(), s(5));
        assert!(matches!(
            height(&[s(1), ninf()]),
            Err(SemiringError::BottomEntry { index: 1, .. })
        ));
    }

    #[test]
    fn text_form() {
        assert_eq!("-inf".parse::<Scalar>().unwrap(), ninf());
        assert_eq!("7/2".parse::<Scalar>().unwrap(), Scalar::ratio(7, 2));
        assert_eq!("4/2".parse::<Scalar>().unwrap(), s(2));
        assert_eq!("-3".parse::<Scalar>().unwrap(), s(-3));
        assert_eq!(Scalar::ratio(-14, 4).to_string(), "-7/2");
        assert_eq!(Scalar::ratio(6, -3).to_string(), "-2");
        for bad in ["", "inf", "+inf", "1.5", "3/0", "a/b", "1/", "/2", "--1"] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn bottom_sorts_first() {
        assert!(ninf() < s(-1_000_000));
        assert!(Scalar::ratio(1, 3) < Scalar::ratio(1, 2));
    }
}
