//! Exact rational scalars.
//!
//! Every number in this crate is a [`Rat`]: an arbitrary-precision rational
//! kept in lowest terms with a positive denominator. There is no floating
//! point anywhere. The text form is `p/q` with the `/q` omitted when the
//! denominator is 1; it is shared by the JSON cache format and the CLI.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// The universal scalar: an exact arbitrary-precision rational.
///
/// `BigRational` already maintains the invariants we rely on: values are
/// reduced on construction and the denominator is always positive.
pub type Rat = BigRational;

/// Shorthand for a rational from machine integers.
///
/// Panics if `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for an integer as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseRatError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Formats a rational as `p/q`, omitting `/q` when the denominator is 1.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Parses `p` or `p/q` into a rational, reducing to lowest terms.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRatError::Empty);
    }
    let parse_int = |t: &str| -> Result<BigInt, ParseRatError> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| ParseRatError::BadInteger(t.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let numer = parse_int(p)?;
            let denom = parse_int(q)?;
            if denom.is_zero() {
                return Err(ParseRatError::ZeroDenominator(s.to_string()));
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

/// True when the value is stored in lowest terms with a positive
/// denominator. Used by tests to assert the storage invariant.
pub fn is_normalized(r: &Rat) -> bool {
    let rebuilt = Rat::new(r.numer().clone(), r.denom().clone());
    r.denom().is_positive() && rebuilt.numer() == r.numer() && rebuilt.denom() == r.denom()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_omits_unit_denominator() {
        assert_eq!(format_rat(&rat(6, 3)), "2");
        assert_eq!(format_rat(&rat(1, 2)), "1/2");
        assert_eq!(format_rat(&rat(-3, 6)), "-1/2");
        assert_eq!(format_rat(&rat(0, 5)), "0");
    }

    #[test]
    fn parse_round_trips() {
        for s in ["0", "1", "-7", "1/2", "-355/113", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
            assert!(is_normalized(&r));
        }
    }

    #[test]
    fn parse_reduces_and_normalizes_sign() {
        assert_eq!(parse_rat("4/8").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("3/-6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rat(" -2/4 ").unwrap(), rat(-1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!(parse_rat(""), Err(ParseRatError::Empty));
        assert!(matches!(parse_rat("a/b"), Err(ParseRatError::BadInteger(_))));
        assert!(matches!(
            parse_rat("1/0"),
            Err(ParseRatError::ZeroDenominator(_))
        ));
        assert!(matches!(parse_rat("1/2/3"), Err(ParseRatError::BadInteger(_))));
    }
}
