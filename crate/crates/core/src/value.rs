//! Exact function values.
//!
//! Vertex values are arbitrary-precision rationals. They are read from and
//! written to decimal strings (`"-1.25"`) or fraction strings (`"1/3"`), never
//! through binary floating point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};

pub type Value = BigRational;

pub fn int(n: i64) -> Value {
    Value::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Value {
    Value::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"3"`, `"-0.125"`, `"+2.5"` or `"7/3"` exactly.
pub fn parse_value(text: &str) -> Result<Value> {
    let s = text.trim();
    let bad = || invalid!("cannot parse {text:?} as an exact number");
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(invalid!("zero denominator in {text:?}"));
        }
        return Ok(Value::new(num, den));
    }
    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{whole}{frac}");
    let mantissa =
        BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    let v = Value::new(mantissa, scale);
    Ok(if negative { -v } else { v })
}

/// Canonical text form: a terminating decimal when one exists, `p/q` otherwise.
pub fn format_value(v: &Value) -> String {
    if v.is_integer() {
        return v.numer().to_string();
    }
    let mut den = v.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", v.numer(), v.denom());
    }
    let places = twos.max(fives);
    let scaled = v * Value::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.numer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    let sign = if v.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}

pub fn midpoint(a: &Value, b: &Value) -> Value {
    (a + b) / int(2)
}

/// A value on the extended real line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    NegInf,
    Finite(Value),
    PosInf,
}

impl Extended {
    pub fn finite(&self) -> Option<&Value> {
        match self {
            Extended::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl From<Value> for Extended {
    fn from(v: Value) -> Self {
        Extended::Finite(v)
    }
}

impl FromStr for Extended {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "infinity" | "+infinity" => Ok(Extended::PosInf),
            "-inf" | "-infinity" => Ok(Extended::NegInf),
            other => parse_value(other).map(Extended::Finite),
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => f.write_str("-inf"),
            Extended::Finite(v) => f.write_str(&format_value(v)),
            Extended::PosInf => f.write_str("inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Serde adapter writing a [`Value`] in its canonical text form.
pub(crate) fn serialize_value<S: Serializer>(
    v: &Value,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&format_value(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_value("5").unwrap(), int(5));
        assert_eq!(parse_value("-0.125").unwrap(), ratio(-1, 8));
        assert_eq!(parse_value("+2.50").unwrap(), ratio(5, 2));
        assert_eq!(parse_value("7/3").unwrap(), ratio(7, 3));
        assert_eq!(parse_value(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_value("0.1").unwrap(), ratio(1, 10));
        for bad in ["", "-", "1e3", "1/0", "abc", "1.2.3", "0x10"] {
            assert!(parse_value(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_value(&int(-3)), "-3");
        assert_eq!(format_value(&ratio(-1, 8)), "-0.125");
        assert_eq!(format_value(&ratio(5, 2)), "2.5");
        assert_eq!(format_value(&ratio(1, 3)), "1/3");
        assert_eq!(format_value(&ratio(-7, 20)), "-0.35");
        assert_eq!(format_value(&ratio(1, 100)), "0.01");
    }

    #[test]
    fn format_parse_round_trip() {
        for (n, d) in [
            (0, 1),
            (1, 7),
            (-22, 7),
            (3, 40),
            (-1, 1024),
            (123456, 1000),
        ] {
            let v = ratio(n, d);
            assert_eq!(parse_value(&format_value(&v)).unwrap(), v);
        }
    }

    #[test]
    fn extended_order() {
        let lo: Extended = "-inf".parse().unwrap();
        let hi: Extended = "inf".parse().unwrap();
        let mid: Extended = "1/2".parse().unwrap();
        assert!(lo < mid && mid < hi);
        assert_eq!(mid.to_string(), "0.5");
    }
}
