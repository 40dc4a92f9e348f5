use serde::{Deserialize, Serialize};

use super::{ECPoint, EllipticCurveQ};
use crate::error::{Error, Result};
use crate::foundation::{format_rational, parse_rational};

/// A point as it appears in curve files: `["x","y"]` or `"infinity"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointRepr {
    Affine([String; 2]),
    Infinity(String),
}

impl PointRepr {
    pub fn from_point(p: &ECPoint) -> Self {
        match p {
            ECPoint::Infinity => PointRepr::Infinity("infinity".into()),
            ECPoint::Affine { x, y } => PointRepr::Affine([format_rational(x), format_rational(y)]),
        }
    }

    pub fn to_point(&self, curve: &EllipticCurveQ) -> Result<ECPoint> {
        match self {
            PointRepr::Infinity(tag) if tag == "infinity" => Ok(ECPoint::Infinity),
            PointRepr::Infinity(tag) => Err(Error::Parse(format!("unknown point tag `{tag}`"))),
            PointRepr::Affine([x, y]) => curve.point(parse_rational(x)?, parse_rational(y)?),
        }
    }
}

/// Curve description file. Rank, generator and torsion data are trusted
/// input; only on-curve and non-torsion checks are performed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub a: String,
    pub b: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<PointRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion_order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsion_points: Option<Vec<PointRepr>>,
}

impl CurveFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("curve file: {e}")))
    }

    pub fn curve(&self) -> Result<EllipticCurveQ> {
        EllipticCurveQ::new(parse_rational(&self.a)?, parse_rational(&self.b)?)
    }

    pub fn generator(&self, curve: &EllipticCurveQ) -> Result<Option<ECPoint>> {
        let Some(repr) = &self.generator else { return Ok(None) };
        let g = repr.to_point(curve)?;
        if curve.is_torsion(&g) {
            return Err(Error::precondition("generator is a torsion point"));
        }
        Ok(Some(g))
    }

    /// Listed torsion points, defaulting to the identity alone.
    pub fn torsion_points(&self, curve: &EllipticCurveQ) -> Result<Vec<ECPoint>> {
        let pts = match &self.torsion_points {
            None => vec![ECPoint::Infinity],
            Some(list) => list.iter().map(|r| r.to_point(curve)).collect::<Result<Vec<_>>>()?,
        };
        if let Some(order) = self.torsion_order {
            if pts.len() != order as usize {
                return Err(Error::precondition(format!(
                    "torsion_order is {order} but {} torsion points are listed",
                    pts.len()
                )));
            }
        }
        Ok(pts)
    }

    pub fn from_curve(curve: &EllipticCurveQ, generator: Option<&ECPoint>) -> Self {
        CurveFile {
            a: format_rational(curve.a()),
            b: format_rational(curve.b()),
            generator: generator.map(PointRepr::from_point),
            rank: generator.map(|_| 1),
            torsion_order: Some(1),
            torsion_points: None,
        }
    }
}
