//! Exact rational scalars and their `"p/q"` text form.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serializer};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Builds `num / den` from machine integers.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn half() -> Rational {
    rat(1, 2)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `"p"` or `"p/q"` with decimal integers.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let trimmed = text.trim();
    let bad = || ParseRationalError(text.to_string());
    match trimmed.split_once('/') {
        None => BigInt::from_str(trimmed)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// Formats as `"p"` when integral, `"p/q"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn floor_to_int(value: &Rational) -> BigInt {
    value.floor().to_integer()
}

pub fn ceil_to_int(value: &Rational) -> BigInt {
    value.ceil().to_integer()
}

pub fn is_integral(value: &Rational) -> bool {
    value.denom().is_one()
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a rational vector to the primitive integer vector with the same
/// direction (gcd of entries is 1). The zero vector maps to itself.
pub fn primitive_integer_vector(values: &[Rational]) -> Vec<BigInt> {
    let lcm = denominator_lcm(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    divide_by_gcd(ints)
}

pub(crate) fn divide_by_gcd(mut ints: Vec<BigInt>) -> Vec<BigInt> {
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in ints.iter_mut() {
            *v /= &g;
        }
    }
    ints
}

pub mod serde_rational {
    //! `#[serde(with = ...)]` adapter storing a rational as a `"p/q"` string.
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let raw = RationalLiteral::deserialize(deserializer)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }

    /// Accepts both `"1/2"` and bare JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalLiteral {
        Text(String),
        Int(i64),
    }

    impl RationalLiteral {
        pub(crate) fn into_rational(self) -> Result<Rational, ParseRationalError> {
            match self {
                RationalLiteral::Text(s) => parse_rational(&s),
                RationalLiteral::Int(i) => Ok(int(i)),
            }
        }
    }
}
