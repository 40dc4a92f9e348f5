//! Helpers around [`rug::Rational`], the exact rational backbone of all curve
//! arithmetic. Rationals cross file boundaries as fraction strings such as
//! `"-403/64"` or `"2"`; decimal points are rejected.

use rug::{Integer, Rational};

use crate::error::{Error, Result};

pub type ExactRational = Rational;

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.is_empty() || t.contains('.') || t.contains(char::is_whitespace) {
        return Err(Error::Parse(format!("`{s}` is not a fraction string p/q")));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let num: Integer = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
    let den: Integer = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
    if den == 0 {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::from((num, den)))
}

pub fn format_rational(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

/// Serde adapter for a single rational stored as a fraction string.
pub mod serde_rational {
    use super::*;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(D::Error::custom)
    }
}
