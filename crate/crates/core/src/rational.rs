//! Exact rational scalars and the extended values used for efficiency ratios.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational number used for every coefficient and utility.
pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("rational literal `{0}` overflows 64-bit range")]
    Overflow(String),
}

/// Parses `p`, `p/q` or a finite decimal such as `1.1` without going through floats.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(s.to_string());
    let overflow = || ParseRationalError::Overflow(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = parse_int(p.trim()).ok_or_else(malformed)?;
        let q: i64 = parse_int(q.trim()).ok_or_else(malformed)?;
        if q == 0 {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(p, q));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(malformed());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(malformed());
    }
    let digits = format!("{whole}{frac}");
    let numer: i64 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| overflow())? };
    let denom = 10i64
        .checked_pow(u32::try_from(frac.len()).map_err(|_| overflow())?)
        .ok_or_else(overflow)?;
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_int(s: &str) -> Option<i64> {
    if s.is_empty() || s.starts_with('+') && s.len() == 1 {
        return None;
    }
    s.parse().ok()
}

/// Renders `p` for integers and `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A nonnegative ratio that may be infinite, as needed for prices of anarchy and stability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extended {
    Finite(Rational),
    Infinite,
}

impl Extended {
    /// `num / den` with `0/0 = 1` and `x/0 = +inf` for `x > 0`.
    ///
    /// A negative denominator with a nonpositive numerator is divided as usual; welfare
    /// values in this crate are nonnegative at equilibrium, so other sign mixes do not occur.
    pub fn ratio(num: Rational, den: Rational) -> Extended {
        if den.is_zero() {
            if num.is_zero() {
                Extended::Finite(Rational::from_integer(1))
            } else {
                Extended::Infinite
            }
        } else {
            Extended::Finite(num / den)
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn finite(&self) -> Option<Rational> {
        match self {
            Extended::Finite(r) => Some(*r),
            Extended::Infinite => None,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(r) => f.write_str(&format_rational(r)),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Extended {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "+inf" => Ok(Extended::Infinite),
            other => parse_rational(other).map(Extended::Finite),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter storing a [`Rational`] as its `p/q` string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Sign of `num - alpha * deg` computed without building intermediate rationals.
pub(crate) fn gain_sign(alpha: &Rational, num: i64, deg: i64) -> std::cmp::Ordering {
    let lhs = i128::from(num) * i128::from(*alpha.denom());
    let rhs = i128::from(*alpha.numer()) * i128::from(deg);
    lhs.cmp(&rhs)
}
