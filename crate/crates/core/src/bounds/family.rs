use std::fmt;
use std::str::FromStr;

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::report::BoundReport;
use super::transverse::{bound_transverse_e2, transverse_e2_expr};
use crate::chow_hurwitz::{chow_mul, cn_profile_template, top_coefficient, ChowClass};
use crate::elliptic::{ECPoint, EllipticCurveQ};
use crate::error::{Error, Result};
use crate::foundation::{eval_const, format_rational, BoundedReal, ConstExpr, Direction};

/// The two families of curves in E²: F1 is x₁ⁿ = y₂ on y² = x³ + x − 1,
/// F2 is x₁ⁿ + 1 = y₂ on y² = x³ − x − 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    F1,
    F2,
}

impl Family {
    pub fn id(self) -> &'static str {
        match self {
            Family::F1 => "f1",
            Family::F2 => "f2",
        }
    }

    pub fn curve(self) -> EllipticCurveQ {
        match self {
            Family::F1 => EllipticCurveQ::from_ints(1, -1),
            Family::F2 => EllipticCurveQ::from_ints(-1, -2),
        }
        .expect("nonsingular")
    }

    pub fn generator(self) -> ECPoint {
        let (x, y) = match self {
            Family::F1 => (1, 1),
            Family::F2 => (2, 2),
        };
        self.curve().point_i64(x, y).expect("on curve")
    }

    /// The constant term c of x₁ⁿ + c = y₂.
    pub fn shift(self) -> i64 {
        match self {
            Family::F1 => 0,
            Family::F2 => 1,
        }
    }

    pub fn equation(self) -> &'static str {
        match self {
            Family::F1 => "x1^n = y2",
            Family::F2 => "x1^n + 1 = y2",
        }
    }

    /// Printed closed-form coefficient K in ĥ ≤ K·(n+1)³.
    pub fn closed_form_coefficient(self) -> Rational {
        let mantissa = match self {
            Family::F1 => 8253,
            Family::F2 => 9689,
        };
        Rational::from(Integer::from(mantissa) * Integer::from(10).pow_u(35))
    }
}

trait PowU {
    fn pow_u(self, e: u32) -> Integer;
}

impl PowU for Integer {
    fn pow_u(self, e: u32) -> Integer {
        use rug::ops::Pow;
        self.pow(e)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f1" => Ok(Family::F1),
            "f2" => Ok(Family::F2),
            _ => Err(Error::Parse(format!("unknown family `{s}`, expected f1 or f2"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Degree bound of Cₙ in P²×P² from (nℓ+m)(3ℓ)(3m)(ℓ+m). Both families
/// share this class.
pub fn family_degree(n: u64) -> Result<u64> {
    let amb = [2, 2];
    let ni = i64::try_from(n).map_err(|_| Error::Domain("n too large".into()))?;
    let classes = [
        ChowClass::linear(&amb, &[ni, 1])?,
        ChowClass::linear(&amb, &[3, 0])?,
        ChowClass::linear(&amb, &[0, 3])?,
        ChowClass::linear(&amb, &[1, 1])?,
    ];
    top_coefficient(&chow_mul(&classes)?)
        .to_u64()
        .ok_or_else(|| Error::Domain("degree overflow".into()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyInvariants {
    pub family: Family,
    pub n: u64,
    pub deg_upper: u64,
    pub genus: Option<u64>,
    /// Per-coordinate and per-factor height bounds, in derivation order.
    pub chain: Vec<(String, ConstExpr, BoundedReal)>,
    pub mu_expr: ConstExpr,
    pub mu_upper: BoundedReal,
    pub h_expr: ConstExpr,
    pub h_upper: BoundedReal,
}

impl FamilyInvariants {
    pub fn to_json(&self) -> Value {
        let chain: Vec<Value> = self
            .chain
            .iter()
            .map(|(name, e, v)| {
                let mut j = v.to_json();
                j["name"] = Value::String(name.clone());
                j["expression"] = Value::String(e.to_string());
                j
            })
            .collect();
        json!({
            "family": self.family.id(),
            "n": self.n,
            "deg_upper": self.deg_upper,
            "genus": self.genus,
            "height_chain": chain,
            "mu_upper": self.mu_upper.to_json(),
            "h_upper": self.h_upper.to_json(),
        })
    }
}

fn upper(e: &ConstExpr, prec: u32) -> Result<BoundedReal> {
    eval_const(e, Direction::Upper, prec)
}

/// Degree, genus, essential-minimum and height bounds for Cₙ of the second
/// family, built from points ((x₁,y₁),(ζ,y₂)) with ζ a root of unity.
pub fn family_invariants(family: Family, n: u64, prec: u32) -> Result<FamilyInvariants> {
    if n < 1 {
        return Err(Error::precondition("n must be at least 1"));
    }
    if family == Family::F1 {
        return Err(Error::precondition(
            "no height chain is available for the first family; only its closed-form bound is reported",
        ));
    }
    let deg_upper = family_degree(n)?;
    let genus = Some(cn_profile_template().genus(n)?);

    let ni = i64::try_from(n).map_err(|_| Error::Domain("n too large".into()))?;
    let log6 = ConstExpr::log_int(6);
    let log24 = ConstExpr::log_int(24);
    let half_log3 = ConstExpr::ratio(1, 2) * ConstExpr::log_int(3);

    let h_zeta = ConstExpr::zero();
    let h_y2 = ConstExpr::ratio(1, 2) * log6.clone();
    let h_x1 = ConstExpr::ratio(1, 2 * ni) * log24.clone();
    let h_y1 = ConstExpr::ratio(1, ni) * log24 + ConstExpr::ratio(1, 2) * log6;
    let h_p1 = h_x1.clone() + h_y1.clone();
    let h_p2 = h_zeta.clone() + h_y2.clone();
    // h₂ ≤ h + ½·log 3 for points of P²
    let h2_p1 = h_p1.clone() + half_log3.clone();
    let h2_p2 = h_p2.clone() + half_log3;
    let mu = h2_p1.clone() + h2_p2.clone();
    // Zhang with dim = 1: h ≤ 2·deg·μ
    let h = ConstExpr::int(2 * deg_upper as i64) * mu.clone();

    let mut chain = Vec::new();
    for (name, e) in [
        ("h(zeta)", h_zeta),
        ("h(y2)", h_y2),
        ("h(x1)", h_x1),
        ("h(y1)", h_y1),
        ("h(x1,y1)", h_p1),
        ("h(zeta,y2)", h_p2),
        ("h2(x1,y1)", h2_p1),
        ("h2(zeta,y2)", h2_p2),
    ] {
        let v = upper(&e, prec)?;
        chain.push((name.to_string(), e, v));
    }
    Ok(FamilyInvariants {
        family,
        n,
        deg_upper,
        genus,
        chain,
        mu_upper: upper(&mu, prec)?,
        mu_expr: mu,
        h_upper: upper(&h, prec)?,
        h_expr: h,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ComposedWithinClosedForm,
    ComposedExceedsClosedForm,
    Indeterminate,
    NotComposed,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ComposedWithinClosedForm => "composed_within_closed_form",
            Verdict::ComposedExceedsClosedForm => "composed_exceeds_closed_form",
            Verdict::Indeterminate => "indeterminate",
            Verdict::NotComposed => "not_composed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyBound {
    pub family: Family,
    pub n: u64,
    pub invariants: Option<FamilyInvariants>,
    pub composed: Option<BoundReport>,
    /// Lower end of the enclosure of the composed bound.
    pub composed_lower: Option<BoundedReal>,
    pub coefficient_per_cube: Option<BoundedReal>,
    pub closed_form: BoundedReal,
    pub verdict: Verdict,
    pub flagged: bool,
    pub notes: Vec<String>,
}

impl FamilyBound {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.id(),
            "equation": self.family.equation(),
            "n": self.n,
            "invariants": self.invariants.as_ref().map(FamilyInvariants::to_json),
            "composed": self.composed.as_ref().map(BoundReport::to_json),
            "composed_lower": self.composed_lower.as_ref().map(BoundedReal::to_json),
            "coefficient_per_cube": self.coefficient_per_cube.as_ref().map(BoundedReal::to_json),
            "closed_form": self.closed_form.to_json(),
            "closed_form_coefficient": format_rational(&self.family.closed_form_coefficient()),
            "verdict": self.verdict.as_str(),
            "flagged": self.flagged,
            "notes": self.notes,
        })
    }
}

/// Composes the family invariants with the E² bound and compares the result
/// against the printed closed form K·(n+1)³.
pub fn family_final_bound(family: Family, n: u64, prec: u32) -> Result<FamilyBound> {
    if n < 1 {
        return Err(Error::precondition("n must be at least 1"));
    }
    let cube = Rational::from(Integer::from(n + 1).pow_u(3));
    let closed_exact = family.closed_form_coefficient() * &cube;
    let closed_form = BoundedReal::from_rational(&closed_exact, Direction::Upper, prec);
    if family == Family::F1 {
        return Ok(FamilyBound {
            family,
            n,
            invariants: None,
            composed: None,
            composed_lower: None,
            coefficient_per_cube: None,
            closed_form,
            verdict: Verdict::NotComposed,
            flagged: false,
            notes: vec!["closed form reported as printed; its height chain is not available".into()],
        });
    }

    let inv = family_invariants(family, n, prec)?;
    let hw = family.curve().weierstrass_height_expr();
    let composed = bound_transverse_e2(&inv.h_upper, inv.deg_upper, &hw, prec)?;
    // the same composition kept symbolic, for a two-sided enclosure
    let exact = transverse_e2_expr(&inv.h_expr, inv.deg_upper, &hw);
    let lower = eval_const(&exact, Direction::Lower, prec)?;
    let per_cube = composed.final_bound.scale(&Rational::from(cube.recip_ref()))?;

    let lower_q = lower.to_rational();
    let upper_q = composed.final_bound.to_rational();
    let verdict = if upper_q < closed_exact {
        Verdict::ComposedWithinClosedForm
    } else if lower_q > closed_exact {
        Verdict::ComposedExceedsClosedForm
    } else {
        Verdict::Indeterminate
    };
    let flagged = verdict != Verdict::ComposedWithinClosedForm;
    let mut notes = vec![format!(
        "h_C <= 2*deg*mu with deg = {} and mu <= log 18 + 3 log 24/(2n)",
        inv.deg_upper
    )];
    if flagged {
        notes.push(format!(
            "composed bound is not below the closed form at n = {n}; recorded as unverified"
        ));
    }
    Ok(FamilyBound {
        family,
        n,
        invariants: Some(inv),
        composed: Some(composed),
        composed_lower: Some(lower),
        coefficient_per_cube: Some(per_cube),
        closed_form,
        verdict,
        flagged,
        notes,
    })
}
