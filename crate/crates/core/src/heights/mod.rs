//! Weil height, the modified height h₂, the canonical height on elliptic
//! curves, and the Zhang and arithmetic Bézout combinators.

mod canonical;

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::foundation::{check_precision, BoundedReal, Direction, Enclosure};

pub use canonical::{canonical_height, canonical_height_enclosure, CanonicalHeightData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HeightKind {
    Weil,
    H2,
    Canonical,
    EssentialMinUpper,
}

impl HeightKind {
    pub fn as_str(self) -> &'static str {
        match self {
            HeightKind::Weil => "WEIL",
            HeightKind::H2 => "H2",
            HeightKind::Canonical => "CANONICAL",
            HeightKind::EssentialMinUpper => "ESSENTIAL_MIN_UPPER",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeightValue {
    pub kind: HeightKind,
    pub value: BoundedReal,
    /// Absolute error guarantee, for values that are not one-sided bounds.
    pub tolerance: Option<f64>,
}

impl HeightValue {
    pub fn new(kind: HeightKind, value: BoundedReal) -> Self {
        HeightValue { kind, value, tolerance: None }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.as_str(),
            "value_decimal": self.value.decimal(),
            "direction": self.value.direction().as_str(),
            "precision_bits": self.value.precision(),
            "tolerance": self.tolerance.map(|t| format!("{t:e}")),
        })
    }
}

/// A point of projective space over the rationals, stored as coprime integers
/// whose first nonzero coordinate is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPointQ {
    coords: Vec<Integer>,
}

impl ProjPointQ {
    pub fn new(coords: &[Rational]) -> Result<Self> {
        if coords.iter().all(|c| *c == 0) {
            return Err(Error::ZeroVector);
        }
        let mut den = Integer::from(1);
        for c in coords {
            den.lcm_mut(c.denom());
        }
        let mut ints: Vec<Integer> =
            coords.iter().map(|c| c.numer() * (Integer::from(&den / c.denom()))).collect();
        let mut g = Integer::new();
        for c in &ints {
            g.gcd_mut(c);
        }
        let first_negative = ints.iter().find(|c| **c != 0).is_some_and(|c| *c < 0);
        if first_negative {
            g = -g;
        }
        for c in &mut ints {
            *c /= &g;
        }
        Ok(ProjPointQ { coords: ints })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        let q: Vec<Rational> = coords.iter().map(|&c| Rational::from(c)).collect();
        Self::new(&q)
    }

    pub fn coords(&self) -> &[Integer] {
        &self.coords
    }

    /// Number of coordinates, m + 1 for a point of Pᵐ.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

fn half_log(q: &Integer, direction: Direction, prec: u32, halve: bool) -> Result<BoundedReal> {
    if *q == 1 {
        return Ok(BoundedReal::zero(direction, prec));
    }
    let mut enc = Enclosure::from_rational(&Rational::from(q), prec + 16).ln()?;
    if halve {
        enc = enc.mul_pow2(-1);
    }
    Ok(round_to(&enc, direction, prec))
}

fn round_to(enc: &Enclosure, direction: Direction, prec: u32) -> BoundedReal {
    let b = enc.bound(direction);
    let r = b.to_rational();
    BoundedReal::from_rational(&r, direction, prec)
}

/// h(P) = log max |Pᵢ| over coprime integer coordinates.
pub fn weil_height(p: &ProjPointQ, direction: Direction, prec: u32) -> Result<HeightValue> {
    check_precision(prec)?;
    let max = p.coords.iter().map(|c| Integer::from(c.abs_ref())).max().expect("nonempty");
    Ok(HeightValue::new(HeightKind::Weil, half_log(&max, direction, prec, false)?))
}

/// h₂(P): the archimedean maximum replaced by the Euclidean norm.
pub fn modified_height_h2(p: &ProjPointQ, direction: Direction, prec: u32) -> Result<HeightValue> {
    check_precision(prec)?;
    let mut norm2 = Integer::new();
    for c in &p.coords {
        norm2 += Integer::from(c.square_ref());
    }
    Ok(HeightValue::new(HeightKind::H2, half_log(&norm2, direction, prec, true)?))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZhangBracket {
    pub mu_lower: BoundedReal,
    pub mu_upper: BoundedReal,
}

/// (dim+1)⁻¹·h/deg ≤ μ ≤ h/deg. Both ends carry the direction of `h`.
pub fn zhang_sandwich(h: &BoundedReal, deg: u64, dim: u32) -> Result<ZhangBracket> {
    if deg == 0 {
        return Err(Error::precondition("degree must be at least 1"));
    }
    let upper = h.scale(&Rational::from((1, deg)))?;
    let lower = h.scale(&Rational::from((Integer::from(1), Integer::from(deg) * (dim + 1))))?;
    Ok(ZhangBracket { mu_lower: lower, mu_upper: upper })
}

/// h ≤ (dim+1)·deg·μ, the reversed Zhang inequality.
pub fn h_upper_from_mu(mu_upper: &BoundedReal, deg: u64, dim: u32) -> Result<HeightValue> {
    if deg == 0 {
        return Err(Error::precondition("degree must be at least 1"));
    }
    let factor = Rational::from(Integer::from(deg) * (dim + 1));
    Ok(HeightValue::new(HeightKind::Weil, mu_upper.scale(&factor)?))
}

/// deg V·h(W) + deg W·h(V) + c·deg V·deg W, rounded up.
pub fn arithmetic_bezout_upper(
    deg_v: u64,
    h_v: &BoundedReal,
    deg_w: u64,
    h_w: &BoundedReal,
    c: &BoundedReal,
) -> Result<BoundedReal> {
    if deg_v == 0 || deg_w == 0 {
        return Err(Error::precondition("degrees must be at least 1"));
    }
    if !h_v.is_nonnegative() || !h_w.is_nonnegative() {
        return Err(Error::precondition("heights must be nonnegative"));
    }
    for b in [h_v, h_w, c] {
        if b.direction() != Direction::Upper {
            return Err(Error::DirectionMismatch(b.direction().as_str(), "upper"));
        }
    }
    let dv = Rational::from(deg_v);
    let dw = Rational::from(deg_w);
    let t1 = h_w.scale(&dv)?;
    let t2 = h_v.scale(&dw)?;
    let t3 = c.scale(&(dv * dw))?;
    t1.add(&t2)?.add(&t3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::rat;

    fn near(v: &HeightValue, x: f64) -> bool {
        (v.value.to_f64() - x).abs() < 1e-14
    }

    #[test]
    fn normalization_clears_and_signs() {
        let p = ProjPointQ::new(&[rat(2, 3), rat(1, 1)]).unwrap();
        assert_eq!(p.coords(), &[Integer::from(2), Integer::from(3)]);
        let q = ProjPointQ::from_ints(&[0, -4, 6]).unwrap();
        assert_eq!(q.coords(), &[Integer::from(0), Integer::from(2), Integer::from(-3)]);
        assert!(matches!(ProjPointQ::from_ints(&[0, 0]), Err(Error::ZeroVector)));
    }

    #[test]
    fn weil_height_examples() {
        let d = Direction::Nearest;
        assert!(near(&weil_height(&ProjPointQ::from_ints(&[1, 0, 0]).unwrap(), d, 128).unwrap(), 0.0));
        let v = weil_height(&ProjPointQ::from_ints(&[1, 2, 3]).unwrap(), d, 128).unwrap();
        assert!(near(&v, 3f64.ln()));
        let v = weil_height(&ProjPointQ::new(&[rat(2, 3), rat(1, 1)]).unwrap(), d, 128).unwrap();
        assert!(near(&v, 3f64.ln()));
        assert_eq!(v.kind, HeightKind::Weil);
    }

    #[test]
    fn h2_examples() {
        let d = Direction::Nearest;
        assert!(near(&modified_height_h2(&ProjPointQ::from_ints(&[1, 0]).unwrap(), d, 128).unwrap(), 0.0));
        let v = modified_height_h2(&ProjPointQ::from_ints(&[1, 1]).unwrap(), d, 128).unwrap();
        assert!(near(&v, 0.5 * 2f64.ln()));
        let v = modified_height_h2(&ProjPointQ::from_ints(&[1, 2, 3]).unwrap(), d, 128).unwrap();
        assert!(near(&v, 0.5 * 14f64.ln()));
    }

    #[test]
    fn directed_heights_bracket_each_other() {
        let p = ProjPointQ::from_ints(&[7, 11, 13]).unwrap();
        let lo = weil_height(&p, Direction::Lower, 64).unwrap().value;
        let hi = weil_height(&p, Direction::Upper, 64).unwrap().value;
        assert!(lo.value() < hi.value());
    }

    #[test]
    fn zhang_examples() {
        let h = BoundedReal::from_i64(6, Direction::Upper, 128);
        let b = zhang_sandwich(&h, 3, 1).unwrap();
        assert_eq!(b.mu_lower.to_f64(), 1.0);
        assert_eq!(b.mu_upper.to_f64(), 2.0);
        let z = zhang_sandwich(&BoundedReal::zero(Direction::Upper, 128), 5, 2).unwrap();
        assert_eq!(z.mu_lower.to_f64(), 0.0);
        assert_eq!(z.mu_upper.to_f64(), 0.0);
        assert!(zhang_sandwich(&h, 0, 1).is_err());
    }

    #[test]
    fn reversed_zhang_at_n_equal_one() {
        let mu = 18f64.ln() + 1.5 * 24f64.ln();
        let mu_b = BoundedReal::from_rational(&Rational::from_f64(mu).unwrap(), Direction::Upper, 128);
        let h = h_upper_from_mu(&mu_b, 18, 1).unwrap();
        assert!((h.value.to_f64() - 36.0 * mu).abs() < 1e-12);
    }

    #[test]
    fn bezout_examples() {
        let up = |v: i64| BoundedReal::from_i64(v, Direction::Upper, 128);
        assert_eq!(arithmetic_bezout_upper(1, &up(0), 1, &up(0), &up(0)).unwrap().to_f64(), 0.0);
        assert_eq!(arithmetic_bezout_upper(2, &up(1), 3, &up(0), &up(1)).unwrap().to_f64(), 9.0);
        // torsion variety of height zero: deg B'·(h(V) + c·deg V)
        let b = arithmetic_bezout_upper(18, &up(5), 4, &up(0), &up(2)).unwrap();
        assert_eq!(b.to_f64(), 4.0 * (5.0 + 2.0 * 18.0));
        let lower = BoundedReal::from_i64(1, Direction::Lower, 128);
        assert!(arithmetic_bezout_upper(1, &lower, 1, &up(0), &up(0)).is_err());
    }

    #[test]
    fn json_shape() {
        let v = weil_height(&ProjPointQ::from_ints(&[1, 2]).unwrap(), Direction::Upper, 64).unwrap();
        let j = v.to_json();
        assert_eq!(j["kind"], "WEIL");
        assert_eq!(j["direction"], "upper");
        assert_eq!(j["precision_bits"], 64);
        assert!(j["tolerance"].is_null());
    }
}
