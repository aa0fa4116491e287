//! Exact rational numbers for probabilities.
//!
//! Every probability in this crate is a [`Rational`] (an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator). There is no
//! floating point anywhere on a decision path: verdicts are exact yes/no
//! answers and must not depend on tolerances.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational. Value equality, lowest terms, positive
/// denominator are all guaranteed by the underlying representation.
pub type Rational = BigRational;

/// Failure to read a rational literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero or negative denominator in `{0}`")]
    BadDenominator(String),
}

/// Parses a rational literal.
///
/// Accepted forms: an integer (`2`, `-1`), a fraction `p/q` with positive
/// integer `q` (`3/4`, `-3/4`), or an exact decimal (`0.25` becomes `1/4`,
/// with no precision loss). A single leading `+` or `-` applies to the
/// whole value.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let magnitude = if let Some((n, d)) = body.split_once('/') {
        let numer = parse_digits(n, s)?;
        let denom = parse_digits(d, s)?;
        if denom.is_zero() {
            return Err(RationalParseError::BadDenominator(s.to_string()));
        }
        Rational::new(numer, denom)
    } else if let Some((int_part, frac_part)) = body.split_once('.') {
        if frac_part.is_empty() {
            return Err(RationalParseError::Invalid(s.to_string()));
        }
        let int = parse_digits(int_part, s)?;
        let frac = parse_digits(frac_part, s)?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        Rational::from_integer(int) + Rational::new(frac, scale)
    } else {
        Rational::from_integer(parse_digits(body, s)?)
    };
    Ok(if negative { -magnitude } else { magnitude })
}

fn parse_digits(part: &str, whole: &str) -> Result<BigInt, RationalParseError> {
    if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RationalParseError::Invalid(whole.to_string()));
    }
    part.parse()
        .map_err(|_| RationalParseError::Invalid(whole.to_string()))
}

/// Renders a rational in the canonical `p/q` form used by system files and
/// reports. The denominator is always written, so `1` renders as `1/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Shorthand for `numer/denom` from machine integers.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for an integer-valued rational.
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// True when `r` lies in the closed unit interval.
pub fn is_probability(r: &Rational) -> bool {
    !r.is_negative() && *r <= Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rational("-3/4").unwrap(), ratio(-3, 4));
        assert_eq!(parse_rational("2").unwrap(), int(2));
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert_eq!(parse_rational("+1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("6/8").unwrap(), ratio(3, 4));
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("-0.25").unwrap(), ratio(-1, 4));
        assert_eq!(parse_rational("1.50").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational("10.0").unwrap(), int(10));
    }

    #[test]
    fn rejects_malformed_literals() {
        assert!(matches!(parse_rational(""), Err(RationalParseError::Empty)));
        assert!(parse_rational(".5").is_err());
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("a").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("1//2").is_err());
        assert!(matches!(
            parse_rational("1/0"),
            Err(RationalParseError::BadDenominator(_))
        ));
    }

    #[test]
    fn canonical_rendering_always_shows_denominator() {
        assert_eq!(format_rational(&int(0)), "0/1");
        assert_eq!(format_rational(&int(1)), "1/1");
        assert_eq!(format_rational(&ratio(-2, 6)), "-1/3");
    }

    #[test]
    fn probability_range() {
        assert!(is_probability(&int(0)));
        assert!(is_probability(&int(1)));
        assert!(is_probability(&ratio(4, 5)));
        assert!(!is_probability(&ratio(-1, 5)));
        assert!(!is_probability(&ratio(6, 5)));
    }
}
