//! Short Weierstrass curves y² = x³ + a·x + b over the rationals.

mod curve_file;

use std::fmt;

use rug::ops::Pow;
use rug::Rational;

use crate::error::{Error, Result};
use crate::foundation::{eval_const, format_rational, BoundedReal, ConstExpr, Direction};

pub use curve_file::{CurveFile, PointRepr};

/// Torsion orders allowed for rational points (Mazur).
pub const MAZUR_ORDERS: [u32; 11] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EllipticCurveQ {
    a: Rational,
    b: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ECPoint {
    Infinity,
    Affine { x: Rational, y: Rational },
}

impl ECPoint {
    pub fn affine(x: Rational, y: Rational) -> Self {
        ECPoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ECPoint::Infinity)
    }

    pub fn x(&self) -> Option<&Rational> {
        match self {
            ECPoint::Affine { x, .. } => Some(x),
            ECPoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&Rational> {
        match self {
            ECPoint::Affine { y, .. } => Some(y),
            ECPoint::Infinity => None,
        }
    }

    pub fn neg(&self) -> ECPoint {
        match self {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine { x, y } => ECPoint::Affine { x: x.clone(), y: Rational::from(-y) },
        }
    }
}

impl fmt::Display for ECPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ECPoint::Infinity => f.write_str("O"),
            ECPoint::Affine { x, y } => write!(f, "({},{})", format_rational(x), format_rational(y)),
        }
    }
}

/// 4a³ + 27b², which vanishes exactly on singular cubics.
fn singular_part(a: &Rational, b: &Rational) -> Rational {
    let a3 = Rational::from(a * a) * a;
    let b2 = Rational::from(b * b);
    a3 * 4u32 + b2 * 27u32
}

pub fn validate_curve(a: Rational, b: Rational) -> Result<EllipticCurveQ> {
    let s = singular_part(&a, &b);
    if s == 0 {
        return Err(Error::SingularCurve { discriminant: s * -16 });
    }
    Ok(EllipticCurveQ { a, b })
}

impl EllipticCurveQ {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        validate_curve(a, b)
    }

    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        validate_curve(Rational::from(a), Rational::from(b))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Δ = −16(4a³ + 27b²).
    pub fn discriminant(&self) -> Rational {
        singular_part(&self.a, &self.b) * -16
    }

    pub fn j_invariant(&self) -> Rational {
        let a3 = Rational::from(&self.a * &self.a) * &self.a;
        let s = singular_part(&self.a, &self.b);
        a3 * 6912u32 / s
    }

    pub fn rhs(&self, x: &Rational) -> Rational {
        let x3 = Rational::from(x * x) * x;
        x3 + Rational::from(&self.a * x) + &self.b
    }

    pub fn contains(&self, p: &ECPoint) -> bool {
        match p {
            ECPoint::Infinity => true,
            ECPoint::Affine { x, y } => Rational::from(y * y) == self.rhs(x),
        }
    }

    pub fn point(&self, x: Rational, y: Rational) -> Result<ECPoint> {
        let p = ECPoint::Affine { x, y };
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn point_i64(&self, x: i64, y: i64) -> Result<ECPoint> {
        self.point(Rational::from(x), Rational::from(y))
    }

    /// Chord-tangent addition in exact arithmetic.
    pub fn add(&self, p: &ECPoint, q: &ECPoint) -> ECPoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (ECPoint::Infinity, _) => return q.clone(),
            (_, ECPoint::Infinity) => return p.clone(),
            (ECPoint::Affine { x: x1, y: y1 }, ECPoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let slope = if x1 == x2 {
            if *y1 != *y2 || *y1 == 0 {
                return ECPoint::Infinity;
            }
            let num = Rational::from(x1 * x1) * 3u32 + &self.a;
            num / Rational::from(y1 * 2u32)
        } else {
            Rational::from(y2 - y1) / Rational::from(x2 - x1)
        };
        let x3 = Rational::from(&slope * &slope) - x1 - x2;
        let y3 = slope * Rational::from(x1 - &x3) - y1;
        ECPoint::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, p: &ECPoint) -> ECPoint {
        self.add(p, p)
    }

    pub fn sub(&self, p: &ECPoint, q: &ECPoint) -> ECPoint {
        self.add(p, &q.neg())
    }

    pub fn scalar_mul(&self, m: i64, p: &ECPoint) -> ECPoint {
        let base = if m < 0 { p.neg() } else { p.clone() };
        let mut k = m.unsigned_abs();
        let mut acc = ECPoint::Infinity;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.double(&pow);
            }
        }
        acc
    }

    /// Order of `p` if it is torsion. Rational torsion orders are confined to
    /// [`MAZUR_ORDERS`], so checking multiples up to 12 is conclusive.
    pub fn torsion_order(&self, p: &ECPoint) -> Option<u32> {
        let mut q = ECPoint::Infinity;
        for m in 1..=12u32 {
            q = self.add(&q, p);
            if q.is_infinity() {
                return MAZUR_ORDERS.contains(&m).then_some(m);
            }
        }
        None
    }

    pub fn is_torsion(&self, p: &ECPoint) -> bool {
        self.torsion_order(p).is_some()
    }

    /// Height of the Weierstrass equation: the Weil height of (1 : a^{1/2} : b^{1/3}),
    /// as an exact expression. Multiplying all exponents by 6 turns the sum
    /// over places into (1/6)·log(L·M) with L = lcm(den(a)³, den(b)²) for the
    /// finite places and M = max(1, |a|³, |b|²) for the archimedean one.
    pub fn weierstrass_height_expr(&self) -> ConstExpr {
        let den_a3 = self.a.denom().clone().pow(3u32);
        let den_b2 = self.b.denom().clone().pow(2u32);
        let finite = den_a3.lcm(&den_b2);
        let abs_a3 = Rational::from(self.a.abs_ref()).pow_i(3);
        let abs_b2 = Rational::from(self.b.abs_ref()).pow_i(2);
        let mut arch = Rational::from(1);
        for c in [abs_a3, abs_b2] {
            if c > arch {
                arch = c;
            }
        }
        let arg = arch * finite;
        if arg == 1 {
            return ConstExpr::zero();
        }
        ConstExpr::ratio(1, 6) * ConstExpr::log(arg)
    }

    pub fn weierstrass_height(&self, direction: Direction, prec: u32) -> Result<BoundedReal> {
        eval_const(&self.weierstrass_height_expr(), direction, prec)
    }
}

trait PowI {
    fn pow_i(self, k: u32) -> Rational;
}

impl PowI for Rational {
    fn pow_i(self, k: u32) -> Rational {
        let (n, d) = self.into_numer_denom();
        Rational::from((n.pow(k), d.pow(k)))
    }
}

impl fmt::Display for EllipticCurveQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})x + ({})", format_rational(&self.a), format_rational(&self.b))
    }
}
