//! Symbolic constant expressions that are kept exact until the moment they are
//! evaluated at a chosen precision and rounding direction.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::rational::format_rational;
use super::real::{check_precision, BoundedReal, Direction, Enclosure};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ConstExpr {
    Rational(Rational),
    /// π raised to `half_exponent / 2`.
    PiPow { half_exponent: i32 },
    /// Natural logarithm of a positive rational.
    Log(Rational),
    /// Γ(k/2 + 1) for a nonnegative integer k.
    GammaHalf(u32),
    Factorial(u32),
    Sum(Vec<ConstExpr>),
    Product(Vec<ConstExpr>),
    Pow(Box<ConstExpr>, i32),
}

impl ConstExpr {
    pub fn int(v: i64) -> Self {
        ConstExpr::Rational(Rational::from(v))
    }

    pub fn rational(q: Rational) -> Self {
        ConstExpr::Rational(q)
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        ConstExpr::Rational(Rational::from((num, den)))
    }

    pub fn integer(n: Integer) -> Self {
        ConstExpr::Rational(Rational::from(n))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn pi_pow(k: i32) -> Self {
        ConstExpr::PiPow { half_exponent: 2 * k }
    }

    pub fn log(q: impl Into<Rational>) -> Self {
        ConstExpr::Log(q.into())
    }

    pub fn log_int(v: i64) -> Self {
        ConstExpr::Log(Rational::from(v))
    }

    pub fn pow(self, k: i32) -> Self {
        ConstExpr::Pow(Box::new(self), k)
    }

    /// Volume of the Euclidean unit ball in dimension `r`: π^{r/2} / Γ(r/2 + 1).
    pub fn unit_ball_volume(r: u32) -> Self {
        ConstExpr::PiPow { half_exponent: r as i32 } * ConstExpr::GammaHalf(r).pow(-1)
    }

    /// Upper bound of a real as an exact rational leaf; sound wherever the
    /// enclosing expression is nondecreasing in this argument.
    pub fn from_upper(b: &BoundedReal) -> Result<Self> {
        if b.direction() != Direction::Upper {
            return Err(Error::DirectionMismatch("upper", b.direction().as_str()));
        }
        Ok(ConstExpr::Rational(b.to_rational()))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            ConstExpr::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Exact value when the expression involves no transcendental atoms.
    pub fn exact_rational(&self) -> Option<Rational> {
        match self {
            ConstExpr::Rational(q) => Some(q.clone()),
            ConstExpr::Factorial(n) => Some(Rational::from(Integer::from(Integer::factorial(*n)))),
            ConstExpr::GammaHalf(k) if k % 2 == 0 => {
                Some(Rational::from(Integer::from(Integer::factorial(k / 2))))
            }
            ConstExpr::Sum(items) => items.iter().try_fold(Rational::new(), |acc, e| {
                Some(acc + e.exact_rational()?)
            }),
            ConstExpr::Product(items) => items.iter().try_fold(Rational::from(1), |acc, e| {
                Some(acc * e.exact_rational()?)
            }),
            ConstExpr::Pow(base, k) => {
                let b = base.exact_rational()?;
                if b == 0 && *k < 0 {
                    return None;
                }
                Some(rational_pow(&b, *k))
            }
            ConstExpr::PiPow { half_exponent: 0 } => Some(Rational::from(1)),
            ConstExpr::Log(q) if *q == 1 => Some(Rational::new()),
            _ => None,
        }
    }

    pub fn enclose(&self, prec: u32) -> Result<Enclosure> {
        match self {
            ConstExpr::Rational(q) => Ok(Enclosure::from_rational(q, prec)),
            ConstExpr::PiPow { half_exponent } => {
                let pi = Enclosure::pi(prec);
                let base = if half_exponent % 2 == 0 { pi } else { pi.sqrt()? };
                let k = if half_exponent % 2 == 0 { half_exponent / 2 } else { *half_exponent };
                base.powi(k)
            }
            ConstExpr::Log(q) => {
                if *q <= 0 {
                    return Err(Error::Domain(format!(
                        "log of nonpositive rational {}",
                        format_rational(q)
                    )));
                }
                Enclosure::from_rational(q, prec).ln()
            }
            ConstExpr::GammaHalf(k) => gamma_half(*k, prec),
            ConstExpr::Factorial(n) => {
                let f = Rational::from(Integer::from(Integer::factorial(*n)));
                Ok(Enclosure::from_rational(&f, prec))
            }
            ConstExpr::Sum(items) => {
                let mut acc = Enclosure::from_rational(&Rational::new(), prec);
                for e in items {
                    acc = acc.add(&e.enclose(prec)?);
                }
                Ok(acc)
            }
            ConstExpr::Product(items) => {
                let mut acc = Enclosure::from_rational(&Rational::from(1), prec);
                for e in items {
                    acc = acc.mul(&e.enclose(prec)?);
                }
                Ok(acc)
            }
            ConstExpr::Pow(base, k) => {
                if let Some(q) = base.exact_rational() {
                    if q == 0 && *k < 0 {
                        return Err(Error::Domain("negative power of zero".into()));
                    }
                    return Ok(Enclosure::from_rational(&rational_pow(&q, *k), prec));
                }
                base.enclose(prec)?.powi(*k)
            }
        }
    }
}

fn rational_pow(q: &Rational, k: i32) -> Rational {
    let (n, d) = (q.numer(), q.denom());
    let e = k.unsigned_abs();
    let pn = n.clone().pow(e);
    let pd = d.clone().pow(e);
    if k >= 0 {
        Rational::from((pn, pd))
    } else {
        Rational::from((pd, pn))
    }
}

/// Γ(k/2 + 1): (k/2)! for even k, and (k!!)·√π / 2^{(k+1)/2} for odd k.
fn gamma_half(k: u32, prec: u32) -> Result<Enclosure> {
    if k.is_multiple_of(2) {
        let f = Rational::from(Integer::from(Integer::factorial(k / 2)));
        return Ok(Enclosure::from_rational(&f, prec));
    }
    let double_fact = Integer::from(Integer::factorial_2(k));
    let coeff = Rational::from((double_fact, Integer::from(1) << k.div_ceil(2)));
    let sqrt_pi = Enclosure::pi(prec).sqrt()?;
    Ok(Enclosure::from_rational(&coeff, prec).mul(&sqrt_pi))
}

const GUARD_BITS: u32 = 32;

/// Evaluates `expr` so that the result bounds the exact real from `direction`.
pub fn eval_const(expr: &ConstExpr, direction: Direction, prec: u32) -> Result<BoundedReal> {
    check_precision(prec)?;
    let wide = expr.enclose(prec + GUARD_BITS)?.bound(direction);
    Ok(BoundedReal::from_rational(&wide.to_rational(), direction, prec))
}

impl Add for ConstExpr {
    type Output = ConstExpr;
    fn add(self, rhs: ConstExpr) -> ConstExpr {
        let mut items = Vec::new();
        for e in [self, rhs] {
            match e {
                ConstExpr::Sum(inner) => items.extend(inner),
                other => items.push(other),
            }
        }
        ConstExpr::Sum(items)
    }
}

impl Mul for ConstExpr {
    type Output = ConstExpr;
    fn mul(self, rhs: ConstExpr) -> ConstExpr {
        let mut items = Vec::new();
        for e in [self, rhs] {
            match e {
                ConstExpr::Product(inner) => items.extend(inner),
                other => items.push(other),
            }
        }
        ConstExpr::Product(items)
    }
}

impl Neg for ConstExpr {
    type Output = ConstExpr;
    fn neg(self) -> ConstExpr {
        ConstExpr::int(-1) * self
    }
}

impl Sub for ConstExpr {
    type Output = ConstExpr;
    fn sub(self, rhs: ConstExpr) -> ConstExpr {
        self + (-rhs)
    }
}

impl Div for ConstExpr {
    type Output = ConstExpr;
    fn div(self, rhs: ConstExpr) -> ConstExpr {
        self * rhs.pow(-1)
    }
}

impl fmt::Display for ConstExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstExpr::Rational(q) => {
                if *q.denom() == 1 && *q >= 0 {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "({})", format_rational(q))
                }
            }
            ConstExpr::PiPow { half_exponent } => {
                if half_exponent % 2 == 0 {
                    write!(f, "pi^{}", half_exponent / 2)
                } else {
                    write!(f, "pi^({}/2)", half_exponent)
                }
            }
            ConstExpr::Log(q) => write!(f, "log({})", format_rational(q)),
            ConstExpr::GammaHalf(k) => {
                if k % 2 == 0 {
                    write!(f, "Gamma({})", k / 2 + 1)
                } else {
                    write!(f, "Gamma({}/2)", k + 2)
                }
            }
            ConstExpr::Factorial(n) => write!(f, "{n}!"),
            ConstExpr::Sum(items) => {
                f.write_str("(")?;
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str(")")
            }
            ConstExpr::Product(items) => {
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
            ConstExpr::Pow(base, k) => match **base {
                ConstExpr::Sum(_) | ConstExpr::Product(_) => write!(f, "({base})^{k}"),
                _ => write!(f, "{base}^{k}"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::real::{compare_bound, BoundOrdering};

    #[test]
    fn dyadic_rational_is_exact_in_every_direction() {
        for d in [Direction::Upper, Direction::Lower, Direction::Nearest] {
            let v = eval_const(&ConstExpr::ratio(3, 2), d, 128).unwrap();
            assert_eq!(v.to_f64(), 1.5);
            assert_eq!(v.to_rational(), Rational::from((3, 2)));
        }
    }

    #[test]
    fn log_of_nonpositive_is_a_domain_error() {
        for q in [0, -3] {
            let e = ConstExpr::log_int(q);
            assert!(matches!(eval_const(&e, Direction::Upper, 64), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn precision_below_53_is_rejected() {
        assert!(matches!(
            eval_const(&ConstExpr::one(), Direction::Upper, 52),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn gamma_at_half_integers() {
        // Γ(1/2+1) = √π/2, Γ(3/2+1) = 3√π/4, Γ(3) = 2
        let g1 = ConstExpr::GammaHalf(1).enclose(128).unwrap();
        let g3 = ConstExpr::GammaHalf(3).enclose(128).unwrap();
        let g4 = ConstExpr::GammaHalf(4).enclose(128).unwrap();
        let sp = std::f64::consts::PI.sqrt();
        assert!((g1.lo().to_f64() - sp / 2.0).abs() < 1e-15);
        assert!((g3.lo().to_f64() - 3.0 * sp / 4.0).abs() < 1e-15);
        assert_eq!(g4.lo().to_f64(), 2.0);
        assert_eq!(g4.hi().to_f64(), 2.0);
    }

    #[test]
    fn unit_ball_volumes_in_low_dimension() {
        // ω_1 = 2, ω_2 = π, ω_3 = 4π/3
        let w1 = eval_const(&ConstExpr::unit_ball_volume(1), Direction::Nearest, 128).unwrap();
        let w2 = eval_const(&ConstExpr::unit_ball_volume(2), Direction::Nearest, 128).unwrap();
        let w3 = eval_const(&ConstExpr::unit_ball_volume(3), Direction::Nearest, 128).unwrap();
        assert!((w1.to_f64() - 2.0).abs() < 1e-15);
        assert!((w2.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!((w3.to_f64() - 4.0 * std::f64::consts::PI / 3.0).abs() < 1e-14);
    }

    #[test]
    fn pi_to_the_eighth_is_below_9489() {
        let p8 = eval_const(&ConstExpr::pi_pow(8), Direction::Upper, 128).unwrap();
        let n = eval_const(&ConstExpr::int(9489), Direction::Lower, 128).unwrap();
        assert_eq!(compare_bound(&p8, &n), BoundOrdering::Less);
    }

    #[test]
    fn display_is_readable() {
        let e = ConstExpr::int(2).pow(64) * ConstExpr::int(3).pow(40) / ConstExpr::pi_pow(8);
        assert_eq!(e.to_string(), "2^64*3^40*pi^8^-1");
        assert_eq!((ConstExpr::ratio(1, 3) * ConstExpr::log_int(2)).to_string(), "(1/3)*log(2)");
    }
}
