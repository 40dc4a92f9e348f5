//! Bounded-height enumeration of rank-one groups E(ℚ) and the search for
//! rational points of the curve families in E².

mod report;

use rug::{Float, Integer, Rational};

use crate::bounds::Family;
use crate::elliptic::{CurveFile, ECPoint, EllipticCurveQ, MAZUR_ORDERS};
use crate::error::{Error, Result};
use crate::foundation::BoundedReal;
use crate::heights::canonical_height_enclosure;

pub use report::{search_rational_points, FoundPair, SearchMetrics, SearchOptions, SearchReport};

/// Largest |a| the screen may ask for; beyond this the coordinates of a·g
/// are too large to handle exactly.
pub const MAX_MULTIPLE: i64 = 10_000;

/// A rank-one subgroup Γ = ℤ·g + T of E(ℚ).
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSpec {
    curve: EllipticCurveQ,
    generator: ECPoint,
    torsion: Vec<ECPoint>,
}

impl GammaSpec {
    /// Checks that g is a non-torsion point on the curve and that the torsion
    /// list is a subgroup of points with Mazur orders.
    pub fn new(curve: EllipticCurveQ, generator: ECPoint, torsion: Vec<ECPoint>) -> Result<Self> {
        if !curve.contains(&generator) {
            return Err(Error::NotOnCurve);
        }
        if curve.is_torsion(&generator) {
            return Err(Error::precondition("generator is a torsion point"));
        }
        let mut torsion = if torsion.is_empty() { vec![ECPoint::Infinity] } else { torsion };
        for t in &torsion {
            if !curve.contains(t) {
                return Err(Error::NotOnCurve);
            }
            match curve.torsion_order(t) {
                Some(k) if MAZUR_ORDERS.contains(&k) => {}
                _ => return Err(Error::precondition(format!("listed torsion point {t} is not torsion"))),
            }
        }
        for (i, t) in torsion.iter().enumerate() {
            if torsion[..i].contains(t) {
                return Err(Error::precondition(format!("torsion point {t} is listed twice")));
            }
        }
        for s in &torsion {
            for t in &torsion {
                if !torsion.contains(&curve.add(s, t)) {
                    return Err(Error::precondition("torsion list is not closed under addition"));
                }
            }
        }
        // Infinity first, then the listed order
        if let Some(i) = torsion.iter().position(ECPoint::is_infinity) {
            let o = torsion.remove(i);
            torsion.insert(0, o);
        } else {
            return Err(Error::precondition("torsion list must contain the identity"));
        }
        Ok(GammaSpec { curve, generator, torsion })
    }

    pub fn from_curve_file(file: &CurveFile) -> Result<Self> {
        let curve = file.curve()?;
        let g = file
            .generator(&curve)?
            .ok_or_else(|| Error::precondition("curve file has no generator"))?;
        if let Some(rank) = file.rank {
            if rank != 1 {
                return Err(Error::precondition(format!("rank must be 1, curve file states {rank}")));
            }
        }
        let torsion = file.torsion_points(&curve)?;
        GammaSpec::new(curve, g, torsion)
    }

    pub fn curve(&self) -> &EllipticCurveQ {
        &self.curve
    }

    pub fn generator(&self) -> &ECPoint {
        &self.generator
    }

    pub fn torsion(&self) -> &[ECPoint] {
        &self.torsion
    }
}

/// The point a·g + T_i together with an enclosure of its canonical height.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticePoint {
    pub a: i64,
    pub torsion_index: usize,
    pub point: ECPoint,
    pub height: BoundedReal,
    pub height_lower: Float,
}

/// Bound on |a| for ĥ(a·g) = a²·ĥ(g) ≤ B + tol, plus the certified lower
/// end of ĥ(g).
pub fn multiple_bound(gamma: &GammaSpec, b: &BoundedReal, tol: f64, prec: u32) -> Result<(i64, Float)> {
    if !b.is_nonnegative() {
        return Err(Error::precondition("height bound must be nonnegative"));
    }
    let hg = canonical_height_enclosure(&gamma.curve, &gamma.generator, tol, prec)?;
    let lo = hg.enclosure.lo().clone();
    if lo <= Float::with_val(prec, tol) {
        return Err(Error::precondition(format!(
            "canonical height of the generator is within tol = {tol} of 0; generator looks torsion"
        )));
    }
    let budget = b.to_rational() + Rational::from_f64(tol).unwrap();
    let ratio = budget / lo.to_rational().unwrap();
    // largest a with a² ≤ ratio
    let floor = Integer::from(ratio.numer() / ratio.denom());
    let a = floor.sqrt();
    let a = a.to_i64().filter(|&v| v <= MAX_MULTIPLE).ok_or(Error::ResourceGuard {
        predicted: a.to_u128().unwrap_or(u128::MAX),
        ceiling: MAX_MULTIPLE as u128,
    })?;
    Ok((a, lo))
}

/// All a·g + T with |a| ≤ `amax` and a in `range`, in the deterministic order
/// a ascending, then by torsion index; kept when ĥ ≤ B + tol is possible.
pub fn enumerate_rank1_range(
    gamma: &GammaSpec,
    b: &BoundedReal,
    tol: f64,
    prec: u32,
    range: std::ops::RangeInclusive<i64>,
) -> Result<Vec<LatticePoint>> {
    let budget = b.to_rational() + Rational::from_f64(tol).unwrap();
    let e = &gamma.curve;
    let mut out = Vec::new();
    for a in range {
        let base = e.scalar_mul(a, &gamma.generator);
        for (i, t) in gamma.torsion.iter().enumerate() {
            let p = e.add(&base, t);
            let h = canonical_height_enclosure(e, &p, tol, prec)?;
            let lo = h.enclosure.lo().clone();
            if lo.to_rational().is_some_and(|v| v <= budget) {
                out.push(LatticePoint {
                    a,
                    torsion_index: i,
                    point: p,
                    height: h.enclosure.nearest(),
                    height_lower: lo,
                });
            }
        }
    }
    Ok(out)
}

/// The points of Γ with ĥ ≤ B + tol.
pub fn enumerate_rank1(gamma: &GammaSpec, b: &BoundedReal, tol: f64, prec: u32) -> Result<Vec<LatticePoint>> {
    let (amax, _) = multiple_bound(gamma, b, tol, prec)?;
    enumerate_rank1_range(gamma, b, tol, prec, -amax..=amax)
}

/// Exact test of the affine family equation x₁ⁿ + c = y₂. Points at
/// infinity are never members.
pub fn family_membership(p1: &ECPoint, p2: &ECPoint, family: Family, n: u32) -> bool {
    let (Some(x1), Some(y2)) = (p1.x(), p2.y()) else { return false };
    use rug::ops::Pow;
    Rational::from(x1.pow(n as i32)) + family.shift() == *y2
}

/// Whether the pair lies on the closure of the family curve in P²×P² but
/// off its affine part. The closure is x₁ⁿz₂ + c·z₁ⁿz₂ = y₂z₁ⁿ.
pub fn closure_membership(p1: &ECPoint, p2: &ECPoint, _family: Family, n: u32) -> bool {
    if n == 0 {
        return false;
    }
    match (p1, p2) {
        // x₁ = z₁ = 0 kills every term
        (ECPoint::Infinity, _) => true,
        // z₂ = 0 leaves y₂z₁ⁿ = 0 with z₁ = 1
        (ECPoint::Affine { .. }, ECPoint::Infinity) => false,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundation::Direction;

    fn e1() -> GammaSpec {
        let e = EllipticCurveQ::from_ints(1, -1).unwrap();
        let g = e.point_i64(1, 1).unwrap();
        GammaSpec::new(e, g, vec![]).unwrap()
    }

    fn bound(v: f64) -> BoundedReal {
        BoundedReal::from_rational(&Rational::from_f64(v).unwrap(), Direction::Upper, 128)
    }

    #[test]
    fn zero_bound_gives_identity() {
        let pts = enumerate_rank1(&e1(), &bound(0.0), 1e-10, 128).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].point.is_infinity());
    }

    #[test]
    fn just_above_generator() {
        let pts = enumerate_rank1(&e1(), &bound(0.26), 1e-10, 128).unwrap();
        let a: Vec<i64> = pts.iter().map(|p| p.a).collect();
        assert_eq!(a, vec![-1, 0, 1]);
    }

    #[test]
    fn lattice_count() {
        let hg = 0.25168911;
        for b in [1.0, 3.7, 10.0] {
            let pts = enumerate_rank1(&e1(), &bound(b), 1e-10, 128).unwrap();
            let k = (b / hg).sqrt().floor() as usize;
            assert_eq!(pts.len(), 2 * k + 1, "B = {b}");
        }
    }

    #[test]
    fn membership_examples() {
        let e = EllipticCurveQ::from_ints(1, -1).unwrap();
        let p = e.point_i64(1, 1).unwrap();
        let q = e.point_i64(1, -1).unwrap();
        for n in 1..6 {
            assert!(family_membership(&p, &p, Family::F1, n));
            assert!(family_membership(&q, &p, Family::F1, n));
            assert!(!family_membership(&p, &q, Family::F1, n));
        }
        let e = EllipticCurveQ::from_ints(-1, -2).unwrap();
        let g = e.point_i64(2, 2).unwrap();
        assert!(!family_membership(&g, &g, Family::F2, 1));
        assert!(!family_membership(&ECPoint::Infinity, &g, Family::F2, 1));
        assert!(closure_membership(&ECPoint::Infinity, &g, Family::F2, 1));
        assert!(!closure_membership(&g, &ECPoint::Infinity, Family::F2, 1));
    }

    #[test]
    fn gamma_validation() {
        let e = EllipticCurveQ::from_ints(0, 1).unwrap();
        let t2 = e.point_i64(-1, 0).unwrap();
        assert!(GammaSpec::new(e.clone(), t2.clone(), vec![]).is_err());
        // y² = x³ + 1 has no non-torsion rational point, so reuse E1 for the
        // torsion-list checks
        let g = e1();
        let e = g.curve().clone();
        let not_torsion = e.point_i64(1, 1).unwrap();
        assert!(GammaSpec::new(e.clone(), not_torsion.clone(), vec![ECPoint::Infinity, not_torsion]).is_err());
    }

    #[test]
    fn torsion_list_must_be_a_group() {
        // y² = x³ − 36x: rank one, 2-torsion (0,0), (6,0), (−6,0)
        let e = EllipticCurveQ::from_ints(-36, 0).unwrap();
        let g = e.point_i64(-3, 9).unwrap();
        let t1 = e.point_i64(0, 0).unwrap();
        let t2 = e.point_i64(6, 0).unwrap();
        let t3 = e.point_i64(-6, 0).unwrap();
        assert!(GammaSpec::new(e.clone(), g.clone(), vec![t1.clone(), ECPoint::Infinity]).is_ok());
        assert!(GammaSpec::new(e.clone(), g.clone(), vec![ECPoint::Infinity, t1.clone(), t2.clone()]).is_err());
        let full = GammaSpec::new(e, g, vec![ECPoint::Infinity, t1, t2, t3]).unwrap();
        assert!(full.torsion()[0].is_infinity());
        assert_eq!(full.torsion().len(), 4);
    }
}
