//! Coefficient scalars.
//!
//! The polynomial and rational-function types are generic over any type that
//! behaves like a field under `num-traits`. Exact work uses [`Rational`]; the
//! float types are accepted for quick approximate experiments and for sampling.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, One, Zero};

/// Arbitrary precision rational, always stored in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// A coefficient type for [`MultiPoly`](crate::MultiPoly).
///
/// Division is only used to make denominators monic and for exact scalar
/// division, so the type should be a field for those paths to be meaningful.
pub trait Scalar: Clone + PartialEq + Debug + Num + Neg<Output = Self> + FromPrimitive + Send + Sync {}

impl<T> Scalar for T where T: Clone + PartialEq + Debug + Num + Neg<Output = T> + FromPrimitive + Send + Sync {}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(9), BigInt::from(362_880));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/6"), Some(rational(-1, 2)));
        assert_eq!(parse_rational(" 7 "), Some(integer(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&rational(4, -6)), "-2/3");
        assert_eq!(format_rational(&integer(5)), "5");
        assert!(Rational::zero().denom().is_one());
    }
}
