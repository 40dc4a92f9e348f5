use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchEntry {
    pub label: String,
    /// (ramification index, number of preimages with that index)
    pub fibers: Vec<(u64, u64)>,
}

impl BranchEntry {
    pub fn new(label: impl Into<String>, fibers: Vec<(u64, u64)>) -> Self {
        BranchEntry { label: label.into(), fibers }
    }

    pub fn fiber_sum(&self) -> u64 {
        self.fibers.iter().map(|(e, c)| e * c).sum()
    }

    /// Σ (e − 1) over the preimages.
    pub fn defect(&self) -> u64 {
        self.fibers.iter().map(|(e, c)| (e - 1) * c).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RamificationProfile {
    pub branches: Vec<BranchEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckedBranch {
    pub label: String,
    pub defect: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckedProfile {
    pub degree: u64,
    pub branches: Vec<CheckedBranch>,
    pub total_defect: u64,
}

pub fn validate_profile(deg: u64, profile: &RamificationProfile) -> Result<CheckedProfile> {
    if deg == 0 {
        return Err(Error::precondition("covering degree must be positive"));
    }
    let mut branches = Vec::with_capacity(profile.branches.len());
    for b in &profile.branches {
        if b.fibers.iter().any(|(e, _)| *e == 0) {
            return Err(Error::precondition(format!("ramification index 0 over `{}`", b.label)));
        }
        let sum = b.fiber_sum();
        if sum != deg {
            return Err(Error::FiberMismatch { label: b.label.clone(), sum, degree: deg });
        }
        branches.push(CheckedBranch { label: b.label.clone(), defect: b.defect() });
    }
    let total_defect = branches.iter().map(|b| b.defect).sum();
    Ok(CheckedProfile { degree: deg, branches, total_defect })
}

/// Genus g from 2 − 2g = deg·(2 − 2g₀) − Σ(eₚ − 1).
pub fn hurwitz_genus(deg: u64, base_genus: u64, profile: &RamificationProfile) -> Result<u64> {
    let checked = validate_profile(deg, profile)?;
    let chi = i128::from(deg) * (2 - 2 * i128::from(base_genus)) - i128::from(checked.total_defect);
    if chi % 2 != 0 {
        return Err(Error::InvalidGenus(format!("2 - 2g = {chi} is odd")));
    }
    let g = (2 - chi) / 2;
    if g < 0 {
        return Err(Error::InvalidGenus(format!("2 - 2g = {chi} gives negative genus")));
    }
    Ok(g as u64)
}

/// a·n + b with integer a, b, written like `6n-6`, `2n`, `n`, `9`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearForm {
    pub slope: i64,
    pub offset: i64,
}

impl LinearForm {
    pub fn constant(c: i64) -> Self {
        LinearForm { slope: 0, offset: c }
    }

    pub fn eval(&self, n: u64) -> Result<u64> {
        let v = i128::from(self.slope) * i128::from(n) + i128::from(self.offset);
        u64::try_from(v).map_err(|_| Error::Domain(format!("{self} is negative at n = {n}")))
    }
}

impl FromStr for LinearForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a form like `6n-6` or an integer, got `{s}`"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let Some(pos) = t.find('n') else {
            return Ok(LinearForm::constant(t.parse().map_err(|_| bad())?));
        };
        let slope = match &t[..pos] {
            "" | "+" => 1,
            "-" => -1,
            k => k.parse().map_err(|_| bad())?,
        };
        let rest = &t[pos + 1..];
        let offset = match rest {
            "" => 0,
            r if r.starts_with('+') || r.starts_with('-') => {
                let r = r.strip_prefix('+').unwrap_or(r);
                r.parse().map_err(|_| bad())?
            }
            _ => return Err(bad()),
        };
        Ok(LinearForm { slope, offset })
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.slope, self.offset) {
            (0, b) => write!(f, "{b}"),
            (a, b) => {
                match a {
                    1 => f.write_str("n")?,
                    -1 => f.write_str("-n")?,
                    _ => write!(f, "{a}n")?,
                }
                match b {
                    0 => Ok(()),
                    b if b > 0 => write!(f, "+{b}"),
                    b => write!(f, "{b}"),
                }
            }
        }
    }
}

impl Serialize for LinearForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.slope == 0 {
            s.serialize_i64(self.offset)
        } else {
            s.serialize_str(&self.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for LinearForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(LinearForm::constant(v)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchTemplate {
    pub label: String,
    pub fibers: Vec<(LinearForm, LinearForm)>,
}

/// Profile file: degree and fibers may depend linearly on a family parameter n.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileTemplate {
    pub degree: LinearForm,
    #[serde(default)]
    pub base_genus: u64,
    pub branches: Vec<BranchTemplate>,
}

impl ProfileTemplate {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("profile file: {e}")))
    }

    /// Concrete degree and profile at n; fibers with zero count are dropped.
    pub fn instantiate(&self, n: u64) -> Result<(u64, RamificationProfile)> {
        let degree = self.degree.eval(n)?;
        let mut branches = Vec::with_capacity(self.branches.len());
        for b in &self.branches {
            let mut fibers = Vec::with_capacity(b.fibers.len());
            for (e, c) in &b.fibers {
                let count = c.eval(n)?;
                if count > 0 {
                    fibers.push((e.eval(n)?, count));
                }
            }
            branches.push(BranchEntry::new(b.label.clone(), fibers));
        }
        Ok((degree, RamificationProfile { branches }))
    }

    pub fn genus(&self, n: u64) -> Result<u64> {
        let (deg, profile) = self.instantiate(n)?;
        hurwitz_genus(deg, self.base_genus, &profile)
    }
}

pub const CN_PROFILE_JSON: &str = include_str!("../../presets/cn_profile.json");

/// Ramification of the projection of Cₙ : x₁ⁿ + 1 = y₂ to the x₁-line.
pub fn cn_profile_template() -> ProfileTemplate {
    ProfileTemplate::from_json(CN_PROFILE_JSON).expect("bundled preset parses")
}
