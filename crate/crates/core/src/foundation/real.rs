use std::cmp::Ordering;
use std::fmt;

use rug::float::Round;
use rug::ops::PowAssignRound;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 128;
pub const MIN_PRECISION: u32 = 53;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Upper,
    Lower,
    Nearest,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
            Direction::Nearest => "nearest",
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Direction::Upper => Direction::Lower,
            Direction::Lower => Direction::Upper,
            Direction::Nearest => Direction::Nearest,
        }
    }

    fn round(self) -> Round {
        match self {
            Direction::Upper => Round::Up,
            Direction::Lower => Round::Down,
            Direction::Nearest => Round::Nearest,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub(crate) fn check_precision(prec: u32) -> Result<()> {
    if prec < MIN_PRECISION {
        return Err(Error::precondition(format!(
            "precision {prec} bits is below the minimum of {MIN_PRECISION}"
        )));
    }
    Ok(())
}

/// Closed interval `[lo, hi]` of binary floats that contains an exact real.
/// Every operation rounds `lo` toward −∞ and `hi` toward +∞.
#[derive(Debug, Clone, PartialEq)]
pub struct Enclosure {
    lo: Float,
    hi: Float,
}

impl Enclosure {
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let (lo, _) = Float::with_val_round(prec, q, Round::Down);
        let (hi, _) = Float::with_val_round(prec, q, Round::Up);
        Enclosure { lo, hi }
    }

    pub fn from_bounds(lo: Float, hi: Float) -> Self {
        debug_assert!(lo <= hi);
        Enclosure { lo, hi }
    }

    pub fn pi(prec: u32) -> Self {
        let (lo, _) = Float::with_val_round(prec, rug::float::Constant::Pi, Round::Down);
        let (hi, _) = Float::with_val_round(prec, rug::float::Constant::Pi, Round::Up);
        Enclosure { lo, hi }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn width(&self) -> Float {
        Float::with_val_round(self.prec(), &self.hi - &self.lo, Round::Up).0
    }

    pub fn contains(&self, x: &Float) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        let prec = self.prec().max(other.prec());
        Enclosure {
            lo: Float::with_val_round(prec, &self.lo + &other.lo, Round::Down).0,
            hi: Float::with_val_round(prec, &self.hi + &other.hi, Round::Up).0,
        }
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let prec = self.prec().max(other.prec());
        let pairs = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in pairs {
            let d = Float::with_val_round(prec, a * b, Round::Down).0;
            let u = Float::with_val_round(prec, a * b, Round::Up).0;
            lo = Some(match lo {
                Some(cur) if cur <= d => cur,
                _ => d,
            });
            hi = Some(match hi {
                Some(cur) if cur >= u => cur,
                _ => u,
            });
        }
        Enclosure { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    pub fn recip(&self) -> Result<Enclosure> {
        if self.lo <= 0 && self.hi >= 0 {
            return Err(Error::Indeterminate("division by an enclosure containing zero".into()));
        }
        let prec = self.prec();
        Ok(Enclosure {
            lo: Float::with_val_round(prec, 1 / &self.hi, Round::Down).0,
            hi: Float::with_val_round(prec, 1 / &self.lo, Round::Up).0,
        })
    }

    pub fn div(&self, other: &Enclosure) -> Result<Enclosure> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn powi(&self, k: i32) -> Result<Enclosure> {
        if k < 0 {
            return self.powi(-k)?.recip();
        }
        let pow = |x: &Float, r: Round| {
            let mut y = x.clone();
            y.pow_assign_round(k, r);
            y
        };
        let even = k % 2 == 0;
        let (lo, hi) = if self.lo >= 0 || !even {
            (pow(&self.lo, Round::Down), pow(&self.hi, Round::Up))
        } else if self.hi <= 0 {
            (pow(&self.hi, Round::Down), pow(&self.lo, Round::Up))
        } else {
            let m = if self.lo.clone().abs() > self.hi { self.lo.clone().abs() } else { self.hi.clone() };
            (Float::new(self.prec()), pow(&m, Round::Up))
        };
        Ok(Enclosure { lo, hi })
    }

    pub fn sqrt(&self) -> Result<Enclosure> {
        if self.lo < 0 {
            return Err(Error::Domain("square root of a possibly negative quantity".into()));
        }
        let prec = self.prec();
        Ok(Enclosure {
            lo: Float::with_val_round(prec, self.lo.sqrt_ref(), Round::Down).0,
            hi: Float::with_val_round(prec, self.hi.sqrt_ref(), Round::Up).0,
        })
    }

    pub fn ln(&self) -> Result<Enclosure> {
        if self.lo <= 0 {
            return Err(Error::Domain("logarithm of a possibly nonpositive quantity".into()));
        }
        let prec = self.prec();
        Ok(Enclosure {
            lo: Float::with_val_round(prec, self.lo.ln_ref(), Round::Down).0,
            hi: Float::with_val_round(prec, self.hi.ln_ref(), Round::Up).0,
        })
    }

    pub fn abs(&self) -> Enclosure {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            self.neg()
        } else {
            let m = if -self.lo.clone() > self.hi { -self.lo.clone() } else { self.hi.clone() };
            Enclosure { lo: Float::new(self.prec()), hi: m }
        }
    }

    /// Exact scaling by 2^k.
    pub fn mul_pow2(&self, k: i32) -> Enclosure {
        Enclosure { lo: self.lo.clone() << k, hi: self.hi.clone() << k }
    }

    pub fn max(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: if self.lo >= other.lo { self.lo.clone() } else { other.lo.clone() },
            hi: if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() },
        }
    }

    pub fn upper(&self) -> BoundedReal {
        BoundedReal { value: self.hi.clone(), direction: Direction::Upper }
    }

    pub fn lower(&self) -> BoundedReal {
        BoundedReal { value: self.lo.clone(), direction: Direction::Lower }
    }

    /// Midpoint rounded to nearest; no one-sided guarantee.
    pub fn nearest(&self) -> BoundedReal {
        let prec = self.prec();
        let sum = Float::with_val(prec + 1, &self.lo + &self.hi);
        let mid = Float::with_val_round(prec, sum / 2u32, Round::Nearest).0;
        BoundedReal { value: mid, direction: Direction::Nearest }
    }

    pub fn bound(&self, direction: Direction) -> BoundedReal {
        match direction {
            Direction::Upper => self.upper(),
            Direction::Lower => self.lower(),
            Direction::Nearest => self.nearest(),
        }
    }

    /// Strict ordering of the enclosed reals when the intervals are disjoint.
    pub fn compare(&self, other: &Enclosure) -> BoundOrdering {
        if self.hi < other.lo {
            BoundOrdering::Less
        } else if self.lo > other.hi {
            BoundOrdering::Greater
        } else {
            BoundOrdering::Indeterminate
        }
    }
}

/// A binary float together with the side from which it bounds an exact real.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedReal {
    value: Float,
    direction: Direction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundOrdering {
    Less,
    Greater,
    Indeterminate,
}

impl BoundedReal {
    /// A float that is exactly the quantity it describes may be tagged with any direction.
    pub fn exact(value: Float, direction: Direction) -> Self {
        BoundedReal { value, direction }
    }

    pub fn from_rational(q: &Rational, direction: Direction, prec: u32) -> Self {
        let value = Float::with_val_round(prec, q, direction.round()).0;
        BoundedReal { value, direction }
    }

    pub fn from_i64(v: i64, direction: Direction, prec: u32) -> Self {
        Self::from_rational(&Rational::from(v), direction, prec)
    }

    pub fn zero(direction: Direction, prec: u32) -> Self {
        BoundedReal { value: Float::new(prec), direction }
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn precision(&self) -> u32 {
        self.value.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// The stored float as an exact rational. For an `Upper` value this is an
    /// exact rational upper bound of the described quantity.
    pub fn to_rational(&self) -> Rational {
        self.value.to_rational().expect("bounded reals are finite")
    }

    pub fn is_nonnegative(&self) -> bool {
        self.value >= 0
    }

    fn combine_direction(&self, other: &BoundedReal) -> Result<Direction> {
        if self.direction == other.direction {
            Ok(self.direction)
        } else {
            Err(Error::DirectionMismatch(self.direction.as_str(), other.direction.as_str()))
        }
    }

    pub fn add(&self, other: &BoundedReal) -> Result<BoundedReal> {
        let direction = self.combine_direction(other)?;
        let prec = self.precision().max(other.precision());
        let value = Float::with_val_round(prec, &self.value + &other.value, direction.round()).0;
        Ok(BoundedReal { value, direction })
    }

    /// Product of two nonnegative bounds from the same side.
    pub fn mul(&self, other: &BoundedReal) -> Result<BoundedReal> {
        let direction = self.combine_direction(other)?;
        if direction != Direction::Nearest && (!self.is_nonnegative() || !other.is_nonnegative()) {
            return Err(Error::Domain(
                "directed product is only sound for nonnegative factors".into(),
            ));
        }
        let prec = self.precision().max(other.precision());
        let value = Float::with_val_round(prec, &self.value * &other.value, direction.round()).0;
        Ok(BoundedReal { value, direction })
    }

    pub fn scale(&self, factor: &Rational) -> Result<BoundedReal> {
        let direction = if *factor < 0 { self.direction.flip() } else { self.direction };
        let prec = self.precision();
        let f = Enclosure::from_rational(factor, prec);
        let this = Enclosure { lo: self.value.clone(), hi: self.value.clone() };
        let prod = this.mul(&f);
        Ok(prod.bound(direction))
    }

    pub fn neg(&self) -> BoundedReal {
        BoundedReal { value: -self.value.clone(), direction: self.direction.flip() }
    }

    /// Decimal string that keeps the bound's side: an `Upper` value is printed
    /// rounded up, a `Lower` value rounded down. Trailing zeros are dropped.
    pub fn to_decimal(&self, significant: usize) -> String {
        let s = self.value.to_string_radix_round(10, Some(significant), self.direction.round());
        tidy_decimal(&s)
    }

    /// Decimal rendering with the default number of digits for the precision.
    pub fn decimal(&self) -> String {
        self.to_decimal(decimal_digits(self.precision()))
    }

    /// Short rendering such as `2.364e34`, rounded in the bound's direction.
    pub fn approx(&self, significant: usize) -> String {
        self.to_decimal(significant)
    }

    /// `{"value_decimal", "direction", "precision_bits", "approx"}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "value_decimal": self.decimal(),
            "direction": self.direction.as_str(),
            "precision_bits": self.precision(),
            "approx": self.approx(4),
        })
    }
}

impl fmt::Display for BoundedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.decimal(), self.direction)
    }
}

/// Number of decimal digits carried by `prec` bits.
pub fn decimal_digits(prec: u32) -> usize {
    ((prec as f64) * std::f64::consts::LOG10_2).floor().max(1.0) as usize
}

fn tidy_decimal(s: &str) -> String {
    let (mantissa, exponent) = match s.find('e') {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    };
    let mantissa = if mantissa.contains('.') {
        mantissa.trim_end_matches('0').trim_end_matches('.')
    } else {
        mantissa
    };
    let exponent = if exponent == "e0" { "" } else { exponent };
    format!("{mantissa}{exponent}")
}

/// Orders two one-sided bounds of exact reals. Only an `Upper` bound that lies
/// strictly below a `Lower` bound (or the mirror case) yields a verdict.
pub fn compare_bound(a: &BoundedReal, b: &BoundedReal) -> BoundOrdering {
    use Direction::*;
    match (a.direction, b.direction) {
        (Upper, Lower) if a.value < b.value => BoundOrdering::Less,
        (Lower, Upper) if a.value > b.value => BoundOrdering::Greater,
        _ => BoundOrdering::Indeterminate,
    }
}

impl PartialOrd<f64> for BoundedReal {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.value.partial_cmp(other)
    }
}

impl PartialEq<f64> for BoundedReal {
    fn eq(&self, other: &f64) -> bool {
        self.value == *other
    }
}
