use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::FormatError;

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

/// Parses `"p"` or `"p/q"` with `q > 0`. The result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational, FormatError> {
    let bad = || FormatError::Rational(s.chars().take(64).collect());
    match s.split_once('/') {
        None => parse_int(s).map(Rational::from_integer).ok_or_else(bad),
        Some((p, q)) => {
            if q.starts_with('-') {
                return Err(bad());
            }
            let num = parse_int(p).ok_or_else(bad)?;
            let den = parse_int(q).ok_or_else(bad)?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_reduces_and_rejects_garbage() {
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("0/7").unwrap(), int(0));
        for bad in ["", "1/0", "1/-2", "a", "1/2/3", " 1", "+1", "--1", "1/"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn canonical_form() {
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(0)), "0");
        let r = parse_rational("-35/12").unwrap();
        assert_eq!(format_rational(&r), "-35/12");
        assert!(r.denom() > &BigInt::zero());
    }
}
