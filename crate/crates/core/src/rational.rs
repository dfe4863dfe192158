//! Exact rational scalars.
//!
//! `Rational` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator; every coefficient in the crate is one of these.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `integer ['/' positive-integer]`, e.g. `-3`, `7/2`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) => {
            if d.starts_with('-') || d.starts_with('+') {
                return None;
            }
            d.parse().ok()?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Converts an integral rational to `i64`, if it is one and fits.
pub fn to_i64(value: &Rational) -> Option<i64> {
    if !value.is_integer() {
        return None;
    }
    i64::try_from(value.numer()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let r = rat(4, -6);
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(int(5).to_string(), "5");
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("7/2"), Some(rat(7, 2)));
        assert_eq!(parse_rational(" -3 "), Some(int(-3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
