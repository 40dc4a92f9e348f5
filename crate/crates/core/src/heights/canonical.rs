//! Canonical height ĥ(P) = lim 4⁻ⁿ h(x(2ⁿP)).
//!
//! The point is moved to an integral model and replaced by a multiple Q = M·P
//! that reduces to a nonsingular point at every prime. For such points the
//! non-archimedean part of h(x(2R)) − 4h(x(R)) vanishes along the whole
//! orbit, so
//!
//!   ĥ(Q) = h(x(Q)) + Σₖ 4^{−k−1} g(x(2ᵏQ)),
//!   g(t) = log max(|φ(t)|, |ψ(t)|) − 4 log max(|t|, 1),
//!
//! with x(2R) = φ/ψ the doubling map. The real orbit is followed in interval
//! arithmetic and the tail is bounded by δ/(3·4ᴷ) where |g| ≤ δ everywhere.

use rug::float::Round;
use rug::{Float, Integer, Rational};

use super::{HeightKind, HeightValue};
use crate::elliptic::{ECPoint, EllipticCurveQ};
use crate::error::{Error, Result};
use crate::foundation::{check_precision, BoundedReal, Direction, Enclosure};

const MAX_MULTIPLIER: u32 = 10_000;
const MAX_WORK_PRECISION: u32 = 1 << 16;

/// Integral model y² = x³ + Ax + B isomorphic to the input curve over Q.
struct IntegralModel {
    a: Integer,
    b: Integer,
    u: Integer,
}

impl IntegralModel {
    fn new(e: &EllipticCurveQ) -> Self {
        let u = Integer::from(e.a().denom() * e.b().denom());
        let u2 = Integer::from(u.square_ref());
        let u4 = Integer::from(u2.square_ref());
        let u6 = Integer::from(&u4 * &u2);
        let a = Rational::from(e.a() * &u4);
        let b = Rational::from(e.b() * &u6);
        debug_assert!(*a.denom() == 1 && *b.denom() == 1);
        IntegralModel { a: a.into_numer_denom().0, b: b.into_numer_denom().0, u }
    }

    fn curve(&self) -> EllipticCurveQ {
        EllipticCurveQ::new(Rational::from(&self.a), Rational::from(&self.b))
            .expect("isomorphic to a nonsingular curve")
    }

    fn map(&self, p: &ECPoint) -> ECPoint {
        match p {
            ECPoint::Infinity => ECPoint::Infinity,
            ECPoint::Affine { x, y } => {
                let u2 = Integer::from(self.u.square_ref());
                let u3 = Integer::from(&u2 * &self.u);
                ECPoint::Affine { x: Rational::from(x * u2), y: Rational::from(y * u3) }
            }
        }
    }

    /// True when the point reduces to a nonsingular point modulo every prime.
    /// With x = n/e², y = m/e³, a prime not dividing e is singular exactly
    /// when it divides both 3n² + Ae⁴ and 2m.
    fn nonsingular_everywhere(&self, p: &ECPoint) -> bool {
        let ECPoint::Affine { x, y } = p else { return true };
        let e = Integer::from(y.denom().root_ref(3));
        let n = x.numer();
        let m = y.numer();
        let e2 = Integer::from(e.square_ref());
        let t = Integer::from(n.square_ref()) * 3u32 + (&self.a * Integer::from(e2.square_ref()));
        let mut g = t.gcd(&Integer::from(m * 2u32));
        loop {
            let h = Integer::from(g.gcd_ref(&e));
            if h == 1 {
                break;
            }
            g /= h;
        }
        g == 1
    }

    fn coeff_bounds(&self) -> (Integer, Integer, Integer) {
        let a = &self.a;
        let b = &self.b;
        let a2 = Integer::from(a * a);
        let a3 = Integer::from(&a2 * a);
        let b2 = Integer::from(b * b);
        let disc = Integer::from(&a3 * 4u32) + Integer::from(&b2 * 27u32);
        let max_abs = |v: Vec<Integer>| v.into_iter().map(|c| c.abs()).max().unwrap();
        let phi_psi = max_abs(vec![
            Integer::from(1),
            Integer::from(a * 2u32),
            Integer::from(b * 8u32),
            a2.clone(),
            Integer::from(4),
            Integer::from(a * 4u32),
            Integer::from(b * 4u32),
        ]);
        let fg = max_abs(vec![
            Integer::from(12),
            Integer::from(a * 16u32),
            Integer::from(3),
            Integer::from(a * 5u32),
            Integer::from(b * 27u32),
            Integer::from(&disc * 4u32),
            Integer::from(&a2 * b) * 4u32,
            (a * (Integer::from(&a3 * 3u32) + Integer::from(&b2 * 22u32))) * 4u32,
            (b * (Integer::from(&a3) + Integer::from(&b2 * 8u32))) * 12u32,
            Integer::from(&a2 * b),
            (a * (Integer::from(&a3 * 5u32) + Integer::from(&b2 * 32u32))),
            (b * (Integer::from(&a3 * 13u32) + Integer::from(&b2 * 96u32))) * 2u32,
            (&a2 * (Integer::from(&a3) + Integer::from(&b2 * 8u32))) * 3u32,
        ]);
        (phi_psi, fg, disc)
    }

    /// Upper bound δ for |g| on the real line, from
    /// |φ|,|ψ| ≤ 4·c·max(|X|,|Z|)⁴ and the identities
    /// 4ΔZ⁷ = f₁φ − g₁ψ, 4ΔX⁷ = f₂φ + g₂ψ with cubic fᵢ, gᵢ.
    fn delta_upper(&self) -> Rational {
        let (c, k, disc) = self.coeff_bounds();
        let prec = 64;
        let up = Enclosure::from_rational(&Rational::from(c * 4u32), prec).ln().expect("positive");
        let ratio = Rational::from((k * 8u32, (disc.abs() * 4u32)));
        let low = Enclosure::from_rational(&ratio, prec).ln().expect("positive");
        let zero = Float::new(prec);
        let m = [up.hi(), low.hi(), &zero].into_iter().max_by(|x, y| x.partial_cmp(y).unwrap()).unwrap();
        m.to_rational().unwrap()
    }
}

/// Result of a canonical height computation.
#[derive(Debug, Clone)]
pub struct CanonicalHeightData {
    /// Encloses ĥ(P).
    pub enclosure: Enclosure,
    /// M with M·P nonsingular modulo every prime; 0 for torsion points.
    pub multiplier: u32,
    /// Number of orbit terms summed.
    pub terms: u32,
}

fn zero_data(prec: u32) -> CanonicalHeightData {
    let z = Float::new(prec);
    CanonicalHeightData { enclosure: Enclosure::from_bounds(z.clone(), z), multiplier: 0, terms: 0 }
}

fn check_tolerance(tol: f64) -> Result<Rational> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::precondition(format!("tolerance must be a positive real, got {tol}")));
    }
    Ok(Rational::from_f64(tol).unwrap())
}

/// Encloses ĥ(P) in an interval of width at most 2·tol.
pub fn canonical_height_enclosure(
    e: &EllipticCurveQ,
    p: &ECPoint,
    tol: f64,
    prec: u32,
) -> Result<CanonicalHeightData> {
    check_precision(prec)?;
    let tol = check_tolerance(tol)?;
    if !e.contains(p) {
        return Err(Error::NotOnCurve);
    }
    if e.is_torsion(p) {
        return Ok(zero_data(prec));
    }
    let model = IntegralModel::new(e);
    let curve = model.curve();
    let base = model.map(p);
    let mut q = base.clone();
    let mut m = 1u32;
    while !model.nonsingular_everywhere(&q) {
        m += 1;
        if m > MAX_MULTIPLIER {
            return Err(Error::Indeterminate(
                "no small multiple of the point has everywhere nonsingular reduction".into(),
            ));
        }
        q = curve.add(&q, &base);
    }
    let m2 = Rational::from(u64::from(m) * u64::from(m));
    let tol_q = Rational::from(&tol * &m2);

    // smallest K with δ/(3·4^K) ≤ tol_q/4
    let delta = model.delta_upper();
    let mut k = 0u32;
    let mut tail = Rational::from(&delta / 3u32);
    while tail > Rational::from(&tol_q / 4u32) {
        tail /= 4u32;
        k += 1;
    }

    let tol_bits = (tol_q.denom().significant_bits() as i64 - tol_q.numer().significant_bits() as i64).max(0);
    let mut work = prec.max(64) + 2 * k + tol_bits as u32 + 32;
    loop {
        if let Some(sum) = orbit_sum(&model, &q, k, &tail, work) {
            if sum.width().to_rational().unwrap() <= Rational::from(&tol_q * 2u32) {
                let m2e = Enclosure::from_rational(&m2, work);
                let enclosure = sum.div(&m2e)?;
                return Ok(CanonicalHeightData { enclosure, multiplier: m, terms: k });
            }
        }
        if work >= MAX_WORK_PRECISION {
            return Err(Error::Indeterminate("canonical height orbit lost all precision".into()));
        }
        work *= 2;
    }
}

/// ĥ(P) within `tol`, reported as a nearest value with its tolerance.
pub fn canonical_height(e: &EllipticCurveQ, p: &ECPoint, tol: f64, prec: u32) -> Result<HeightValue> {
    let data = canonical_height_enclosure(e, p, tol, prec)?;
    let mid = data.enclosure.nearest();
    let value = BoundedReal::from_rational(&mid.to_rational(), Direction::Nearest, prec);
    Ok(HeightValue { kind: HeightKind::Canonical, value, tolerance: Some(tol) })
}

/// h(x(Q)) + Σ_{k<K} 4^{−k−1} g(x(2ᵏQ)) ± tail, or None if the intervals
/// became too wide to separate from the singularities of log.
fn orbit_sum(model: &IntegralModel, q: &ECPoint, terms: u32, tail: &Rational, prec: u32) -> Option<Enclosure> {
    let ECPoint::Affine { x, .. } = q else { return None };
    let (n, d) = (x.numer(), x.denom());
    let naive = Integer::from(n.abs_ref()).max(d.clone());
    let mut sum = Enclosure::from_rational(&Rational::from(naive), prec).ln().ok()?;

    let a = Enclosure::from_rational(&Rational::from(&model.a), prec);
    let b = Enclosure::from_rational(&Rational::from(&model.b), prec);
    let mut xs = Enclosure::from_rational(&Rational::from(n), prec);
    let mut zs = Enclosure::from_rational(&Rational::from(d), prec);
    for j in 0..terms {
        let (xn, zn) = normalize(&xs, &zs)?;
        let x2 = xn.mul(&xn);
        let z2 = zn.mul(&zn);
        let xz = xn.mul(&zn);
        // φ = X⁴ − 2AX²Z² − 8BXZ³ + A²Z⁴
        let phi = x2
            .mul(&x2)
            .sub(&a.mul(&x2).mul(&z2).mul_pow2(1))
            .sub(&b.mul(&xz).mul(&z2).mul_pow2(3))
            .add(&a.mul(&a).mul(&z2).mul(&z2));
        // ψ = 4Z(X³ + AXZ² + BZ³)
        let psi = zn
            .mul(&x2.mul(&xn).add(&a.mul(&xz).mul(&zn)).add(&b.mul(&z2).mul(&zn)))
            .mul_pow2(2);
        let top = phi.abs().max(&psi.abs()).ln().ok()?;
        let scale = xn.abs().max(&zn.abs()).ln().ok()?;
        let g = top.sub(&scale.mul_pow2(2));
        sum = sum.add(&g.mul_pow2(-2 * (j as i32 + 1)));
        xs = phi;
        zs = psi;
    }
    let t = Enclosure::from_rational(tail, prec);
    let lo = Float::with_val_round(prec, sum.lo() - t.hi(), Round::Down).0;
    let hi = Float::with_val_round(prec, sum.hi() + t.hi(), Round::Up).0;
    Some(Enclosure::from_bounds(lo, hi))
}

/// Rescales (X, Z) by a common power of two so the larger lies near 1.
fn normalize(x: &Enclosure, z: &Enclosure) -> Option<(Enclosure, Enclosure)> {
    let m = x.abs().max(&z.abs());
    if *m.lo() <= 0 {
        return None;
    }
    let exp = m.hi().get_exp()?;
    Some((x.mul_pow2(-exp), z.mul_pow2(-exp)))
}
