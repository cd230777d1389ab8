//! Exact fractions.
//!
//! Every threshold in the crate is a [`Rational`]; nothing is ever rounded.
//! The textual form is `p/q` in lowest terms, or just `p` when `q = 1`.
//! Parsing additionally accepts terminating decimals (`"0.6"` is `3/5`).

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub const HALF: Rational = Rational(Ratio::new_raw(1, 2));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));

    /// Builds `numer / denom` reduced to lowest terms.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(Ratio::new(numer, denom))
    }

    pub fn from_integer(value: i64) -> Self {
        Rational(Ratio::from_integer(value))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn floor(&self) -> i64 {
        Integer::div_floor(&self.numer(), &self.denom())
    }

    pub fn abs(&self) -> Self {
        if self.numer() < 0 {
            Rational(-self.0)
        } else {
            *self
        }
    }

    /// True for values in the supermajority range `[1/2, 1)`.
    pub fn in_unit_supermajority_range(&self) -> bool {
        *self >= Self::HALF && *self < Self::ONE
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Self) -> Self {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Self) -> Self {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Self) -> Self {
        Rational(self.0 * rhs.0)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str, whole: &str) -> Result<i64, Error> {
    s.parse::<i64>()
        .map_err(|_| Error::Parse(format!("not a rational: {whole:?}")))
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(raw: &str) -> Result<Self, Self::Err> {
        let s = raw.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p = parse_int(p.trim(), raw)?;
            let q = parse_int(q.trim(), raw)?;
            if q == 0 {
                return Err(Error::Parse(format!("zero denominator: {raw:?}")));
            }
            return Ok(Rational::new(p, q));
        }
        if let Some((whole, frac)) = s.split_once('.') {
            let negative = whole.starts_with('-');
            let digits = whole.trim_start_matches(['-', '+']);
            if frac.is_empty() && digits.is_empty()
                || !frac.chars().all(|c| c.is_ascii_digit())
                || !digits.chars().all(|c| c.is_ascii_digit())
                || frac.len() > 15
            {
                return Err(Error::Parse(format!("not a decimal: {raw:?}")));
            }
            let scale = 10i64.pow(frac.len() as u32);
            let int_part = if digits.is_empty() {
                0
            } else {
                parse_int(digits, raw)?
            };
            let frac_part = if frac.is_empty() {
                0
            } else {
                parse_int(frac, raw)?
            };
            let magnitude = int_part
                .checked_mul(scale)
                .and_then(|v| v.checked_add(frac_part))
                .ok_or_else(|| Error::Parse(format!("decimal too large: {raw:?}")))?;
            let numer = if negative { -magnitude } else { magnitude };
            return Ok(Rational::new(numer, scale));
        }
        Ok(Rational::from_integer(parse_int(s, raw)?))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
