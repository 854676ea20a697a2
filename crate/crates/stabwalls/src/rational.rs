//! Exact rational scalars and their canonical string form.
//!
//! Every quantity in this crate is an arbitrary-precision rational. The
//! interchange form is a string `"p/q"` in lowest terms with positive
//! denominator, shortened to `"p"` when the denominator is 1; floats are
//! never produced or accepted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// The scalar type used throughout the crate.
pub type Rational = BigRational;

/// Error produced when a rational string cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{input}`: {reason}")]
pub struct ParseRationalError {
    /// The offending input.
    pub input: String,
    /// Why it was rejected.
    pub reason: &'static str,
}

impl ParseRationalError {
    fn new(input: &str, reason: &'static str) -> Self {
        Self { input: input.to_owned(), reason }
    }
}

/// Builds a rational from an integer pair, reducing to lowest terms.
///
/// Panics if `den` is zero, like integer division.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds a rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` into a rational in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::new(s, "empty string"));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| ParseRationalError::new(s, "numerator is not an integer"))?;
    let den: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| ParseRationalError::new(s, "denominator is not an integer"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(ParseRationalError::new(s, "zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Formats a rational canonically: lowest terms, positive denominator,
/// `"p"` when integral, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Returns true when `r` is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Sign of a rational as -1, 0, or 1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// A rational or positive infinity; the value taken by slope functions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Slope {
    /// A finite exact slope.
    Finite(Rational),
    /// The conventional value when the charge has vanishing imaginary part.
    PlusInfinity,
}

impl Slope {
    /// The finite value, if any.
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Slope::Finite(r) => Some(r),
            Slope::PlusInfinity => None,
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Finite(r) => write!(f, "{}", format_rational(r)),
            Slope::PlusInfinity => write!(f, "inf"),
        }
    }
}

/// Serde adapter serializing a [`Rational`] as its canonical string.
pub mod rational_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    /// Serializes as `"p/q"`.
    pub fn serialize<S: Serializer>(r: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rational(r))
    }

    /// Deserializes from `"p/q"`.
    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(de)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}
