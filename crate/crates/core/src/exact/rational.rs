//! Arbitrary-precision rationals.
//!
//! `num_rational::BigRational` already maintains the canonical form we need
//! (always reduced, denominator positive), so the scalar type is re-exported
//! and this module only adds the `p/q` text format used by the CLI and the
//! JSON serializers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

use super::ExactError;

pub use num_rational::BigRational;

/// Parses `p` or `p/q` with optional leading `-` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<BigRational, ExactError> {
    let bad = || ExactError::BadRational(text.to_owned());
    let text = text.trim();
    if text.is_empty() || text.len() > 4096 {
        return Err(bad());
    }
    let (num_str, den_str) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num_str.trim()).map_err(|_| bad())?;
    let den = BigInt::from_str(den_str.trim()).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// Formats a rational as `p` or `p/q` (denominator always positive).
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Integer power with exact arithmetic; negative exponents invert.
///
/// Panics when asked for a negative power of zero.
pub fn rational_pow(base: &BigRational, exp: i64) -> BigRational {
    if exp == 0 {
        return BigRational::one();
    }
    if base.is_zero() {
        assert!(exp > 0, "negative power of zero");
        return BigRational::zero();
    }
    let positive = base.pow(exp.unsigned_abs() as i32);
    if exp < 0 {
        positive.recip()
    } else {
        positive
    }
}

/// True when the rational is a negative number.
pub fn is_negative(value: &BigRational) -> bool {
    value.numer().is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("7").unwrap(), BigRational::from_integer(7.into()));
        assert_eq!(
            parse_rational("-22/7").unwrap(),
            BigRational::new((-22).into(), 7.into())
        );
        // reduction happens on construction
        assert_eq!(parse_rational("6/4").unwrap(), parse_rational("3/2").unwrap());
        // sign normalizes onto the numerator
        assert_eq!(parse_rational("1/-2").unwrap(), parse_rational("-1/2").unwrap());
    }

    #[test]
    fn rejects_malformed_input() {
        for bad in ["", "1/0", "a", "1/2/3", "1.5", "--3"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn round_trips_format() {
        for text in ["0", "-5", "3/2", "-10/3"] {
            let r = parse_rational(text).unwrap();
            assert_eq!(format_rational(&r), text);
        }
    }

    #[test]
    fn integer_powers() {
        let half = parse_rational("1/2").unwrap();
        assert_eq!(rational_pow(&half, -2), parse_rational("4").unwrap());
        assert_eq!(rational_pow(&half, 0), BigRational::one());
        assert_eq!(rational_pow(&half, 3), parse_rational("1/8").unwrap());
    }
}
