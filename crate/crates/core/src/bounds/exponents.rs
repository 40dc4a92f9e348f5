use std::fmt;
use std::str::FromStr;

use rug::Rational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::foundation::format_rational;

/// One factor of an exponent-only bound: `base^(exponent + eta_coefficient·η)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentEntry {
    pub quantity: String,
    pub base: String,
    pub exponent: Rational,
    pub eta_coefficient: u32,
}

impl ExponentEntry {
    fn new(quantity: &str, base: &str, exponent: Rational, eta_coefficient: u32) -> Self {
        ExponentEntry { quantity: quantity.into(), base: base.into(), exponent, eta_coefficient }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "quantity": self.quantity,
            "base": self.base,
            "exponent": format_rational(&self.exponent),
            "eta_coefficient": self.eta_coefficient,
        })
    }
}

impl fmt::Display for ExponentEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ({})^({}", self.quantity, self.base, format_rational(&self.exponent))?;
        match self.eta_coefficient {
            0 => f.write_str(")"),
            1 => f.write_str(" + eta)"),
            c => write!(f, " + {c}*eta)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExponentTheorem {
    /// Heights and degrees of components of V ∩ (∪ H) for codim H = d + 1 = dim V + 1.
    CodimOne,
    /// Height of C ∩ Γ with Γ̄ of rank one.
    RankOne,
    /// Height of C ∩ Γ for weak-transverse C and rank t < N/2.
    LowRank,
    /// Height of C ∩ Γ for transverse C and rank t ≤ N − 1.
    TransverseRank,
    /// Anomalous intersections of a curve with subgroups of codimension r.
    AnomalousPoints,
    CountI,
    CountIi,
    CountIii,
    CountIv,
}

impl ExponentTheorem {
    pub const ALL: [ExponentTheorem; 9] = [
        ExponentTheorem::CodimOne,
        ExponentTheorem::RankOne,
        ExponentTheorem::LowRank,
        ExponentTheorem::TransverseRank,
        ExponentTheorem::AnomalousPoints,
        ExponentTheorem::CountI,
        ExponentTheorem::CountIi,
        ExponentTheorem::CountIii,
        ExponentTheorem::CountIv,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ExponentTheorem::CodimOne => "codim-one",
            ExponentTheorem::RankOne => "rank-one",
            ExponentTheorem::LowRank => "low-rank",
            ExponentTheorem::TransverseRank => "transverse-rank",
            ExponentTheorem::AnomalousPoints => "anomalous-points",
            ExponentTheorem::CountI => "count-i",
            ExponentTheorem::CountIi => "count-ii",
            ExponentTheorem::CountIii => "count-iii",
            ExponentTheorem::CountIv => "count-iv",
        }
    }
}

impl FromStr for ExponentTheorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ExponentTheorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| {
                let ids: Vec<_> = ExponentTheorem::ALL.iter().map(|t| t.id()).collect();
                Error::Parse(format!("unknown theorem `{s}`, expected one of {}", ids.join(", ")))
            })
    }
}

impl fmt::Display for ExponentTheorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// N is the ambient power, r a codimension, t a rank, dim the dimension of V.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentParams {
    pub n: Option<i64>,
    pub r: Option<i64>,
    pub t: Option<i64>,
    pub dim: Option<i64>,
}

impl ExponentParams {
    pub fn n(n: i64) -> Self {
        ExponentParams { n: Some(n), ..Default::default() }
    }
    pub fn with_r(mut self, r: i64) -> Self {
        self.r = Some(r);
        self
    }
    pub fn with_t(mut self, t: i64) -> Self {
        self.t = Some(t);
        self
    }
    pub fn with_dim(mut self, d: i64) -> Self {
        self.dim = Some(d);
        self
    }
}

fn need(v: Option<i64>, name: &str, th: ExponentTheorem) -> Result<i64> {
    v.ok_or_else(|| Error::precondition(format!("{th} requires parameter {name}")))
}

fn require(ok: bool, inequality: &str, th: ExponentTheorem) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::precondition(format!("{th}: parameters violate {inequality}")))
    }
}

fn q(num: i64, den: i64) -> Rational {
    Rational::from((num, den))
}

const HD: &str = "h+deg";
const HD_KTOR: &str = "(h+deg)*ktor";
const KTOR: &str = "ktor";
const DEG: &str = "deg";
const KDEG: &str = "[k(C):k]";
const KTOR_G: &str = "ktor(Cxg)";
const HG: &str = "h+(hhat(g)+1)*deg";
const KTOR_G_HG: &str = "ktor(Cxg)*(h+(hhat(g)+1)*deg)";
const KDEG_G: &str = "[k(Cxg):k]";

/// Exponent structure of the non-effective bounds. Constants are not
/// produced.
pub fn exponents(theorem: ExponentTheorem, p: ExponentParams) -> Result<Vec<ExponentEntry>> {
    use ExponentTheorem::*;
    let e = ExponentEntry::new;
    let th = theorem;
    Ok(match theorem {
        CodimOne => {
            let n = need(p.n, "N", th)?;
            let d = need(p.dim, "dim", th)?;
            require(d >= 1, "dim V >= 1", th)?;
            require(n - d > 1, "N - dim V - 1 >= 1", th)?;
            let s = n - d - 1;
            vec![
                e("h(Y) nontranslate", HD, q(n - 1, s), 1),
                e("deg Y nontranslate", HD, q(d, s), 1),
                e("deg Y nontranslate", "deg V", q(1, 1), 0),
                e("h(Y) translate", HD, q(n - 2, s), 1),
                e("h(Y) translate", KTOR, q(d - 1, s), 1),
                e("deg Y translate", "deg V", q(1, 1), 0),
                e("deg Y translate", HD_KTOR, q(d - 1, s), 1),
                e("hhat(Y) point", HD, q(n - 1, s), 1),
                e("hhat(Y) point", KTOR, q(d, s), 1),
                e("[Q(Y):Q] point", HD_KTOR, q((d + 1) * (n - 1), s * s), 1),
            ]
        }
        RankOne => {
            let n = need(p.n, "N", th)?;
            require(n >= 2, "N >= 2", th)?;
            if n == 2 {
                vec![e("hhat(C cap Gamma)", KTOR_G, q(1, 1), 1), e("hhat(C cap Gamma)", HG, q(2, 1), 1)]
            } else {
                vec![e("hhat(C cap Gamma)", HD, q(n - 1, n - 2), 1), e("hhat(C cap Gamma)", KTOR, q(1, n - 2), 1)]
            }
        }
        LowRank => {
            let n = need(p.n, "N", th)?;
            let t = need(p.t, "t", th)?;
            require(t >= 1, "t >= 1", th)?;
            require(2 * t < n, "t < N/2", th)?;
            vec![
                e("hhat(C cap Gamma)", HD, q(n - t, n - 2 * t), 1),
                e("hhat(C cap Gamma)", KTOR, q(t, n - 2 * t), 1),
            ]
        }
        TransverseRank => {
            let n = need(p.n, "N", th)?;
            let t = need(p.t, "t", th)?;
            require(t >= 1, "t >= 1", th)?;
            require(t < n, "t <= N - 1", th)?;
            vec![e("hhat(C cap Gamma)", KTOR_G, q(t, n - t), 1), e("hhat(C cap Gamma)", HG, q(n, n - t), 1)]
        }
        AnomalousPoints => {
            let n = need(p.n, "N", th)?;
            let r = need(p.r, "r", th)?;
            require(2 * r > n, "N/2 < r", th)?;
            require(r < n, "r < N", th)?;
            let a = 2 * r - n;
            let c1 = q(r * n * (2 * n + 1), 2 * (r - 1));
            let c2 = q(r * (n - r) * (2 * r * n + 2 * r - 2 + 2 * n * n - n), 2 * a * (r - 1));
            vec![
                e("M_r", HD_KTOR, q(r * (n - r) * n, a), 1),
                e("deg H_i", HD_KTOR, q(r * (n - r) * (n + 2 * r - 2), 2 * (r - 1) * a), 1),
                e("deg H_i", "[k:k]*deg", q(n * r, 2 * (r - 1)), 1),
                e("hhat(Y0)", HD, q(r, a), 1),
                e("hhat(Y0)", KTOR, q(n - r, a), 1),
                e("[k(Y0):Q]", "[k:k]*deg", q(r, r - 1), 1),
                e("[k(Y0):Q]", HD_KTOR, q(r * (n - r), a * (r - 1)), 1),
                e("S_r", "[k:k]", c1.clone(), 0),
                e("S_r", DEG, c1 + 1u32, 1),
                e("S_r", HD_KTOR, c2, 1),
            ]
        }
        CountI => {
            let n = need(p.n, "N", th)?;
            require(n > 2, "N > 2", th)?;
            vec![
                e("#(C cap Gamma)", HD_KTOR, q((n - 1) * (4 * n * n - n - 4), 2 * (n - 2) * (n - 2)), 1),
                e("#(C cap Gamma)", DEG, q(2 * n * n * n - n * n + n - 4, 2 * (n - 2)), 1),
                e("#(C cap Gamma)", KDEG, q(n * (n - 1) * (2 * n + 1), 2 * (n - 2)), 1),
            ]
        }
        CountIi => vec![
            e("#(C cap Gamma)", KTOR_G_HG, q(29, 1), 1),
            e("#(C cap Gamma)", DEG, q(22, 1), 1),
            e("#(C cap Gamma)", KDEG_G, q(21, 1), 1),
        ],
        CountIii => {
            let n = need(p.n, "N", th)?;
            let t = need(p.t, "t", th)?;
            require(t >= 1, "t >= 1", th)?;
            require(2 * t < n, "t < N/2", th)?;
            let s = n - t - 1;
            let k = q(n * (2 * n + 1) * (n - t), 2 * s);
            vec![
                e(
                    "#(C cap Gamma)",
                    HD_KTOR,
                    q(t * (n - t) * (4 * n * n - 2 * n * t + n - 2 * t - 2), 2 * (n - 2 * t) * s),
                    1,
                ),
                e("#(C cap Gamma)", DEG, k.clone() + 1u32, 1),
                e("#(C cap Gamma)", KDEG, k, 1),
            ]
        }
        CountIv => {
            let n = need(p.n, "N", th)?;
            let t = need(p.t, "t", th)?;
            require(t >= 1, "t >= 1", th)?;
            require(t < n, "t <= N - 1", th)?;
            let k = q((n + t) * n * (2 * n + 2 * t + 1), 2 * (n - 1));
            vec![
                e("#(C cap Gamma)", DEG, k.clone() + 1u32, 1),
                e("#(C cap Gamma)", KDEG_G, k, 1),
                e(
                    "#(C cap Gamma)",
                    KTOR_G_HG,
                    q(n * t * (4 * n * n + 2 * t * t + 6 * n * t + n - t - 2), 2 * (n - t) * (n - 1)),
                    1,
                ),
            ]
        }
    })
}

/// The exponent of `base` in the factor for `quantity`, if present.
pub fn exponent_of<'a>(entries: &'a [ExponentEntry], quantity: &str, base: &str) -> Option<&'a Rational> {
    entries.iter().find(|e| e.quantity == quantity && e.base == base).map(|e| &e.exponent)
}
