use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// End(E) for the supported curves: ℤ, ℤ[i] or ℤ[ω] with ω² + ω + 1 = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EndRing {
    #[serde(rename = "z")]
    RationalIntegers,
    #[serde(rename = "zi")]
    GaussianIntegers,
    #[serde(rename = "zw")]
    EisensteinIntegers,
}

/// a + b·θ with θ = i or ω; b = 0 over ℤ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elt {
    pub a: i64,
    pub b: i64,
}

impl Elt {
    pub const ZERO: Elt = Elt { a: 0, b: 0 };
    pub const ONE: Elt = Elt { a: 1, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        Elt { a, b }
    }

    pub const fn int(a: i64) -> Self {
        Elt { a, b: 0 }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
}

fn round_div(num: i128, den: i128) -> i128 {
    // floor(num/den + 1/2) for den > 0
    (2 * num + den).div_euclid(2 * den)
}

const Z_UNITS: [Elt; 2] = [Elt::new(1, 0), Elt::new(-1, 0)];
const ZI_UNITS: [Elt; 4] = [Elt::new(1, 0), Elt::new(0, 1), Elt::new(-1, 0), Elt::new(0, -1)];
const ZW_UNITS: [Elt; 6] =
    [Elt::new(1, 0), Elt::new(1, 1), Elt::new(0, 1), Elt::new(-1, 0), Elt::new(-1, -1), Elt::new(0, -1)];

impl EndRing {
    pub const ALL: [EndRing; 3] = [EndRing::RationalIntegers, EndRing::GaussianIntegers, EndRing::EisensteinIntegers];

    pub fn id(self) -> &'static str {
        match self {
            EndRing::RationalIntegers => "z",
            EndRing::GaussianIntegers => "zi",
            EndRing::EisensteinIntegers => "zw",
        }
    }

    pub fn rank(self) -> usize {
        match self {
            EndRing::RationalIntegers => 1,
            _ => 2,
        }
    }

    pub fn units(self) -> &'static [Elt] {
        match self {
            EndRing::RationalIntegers => &Z_UNITS,
            EndRing::GaussianIntegers => &ZI_UNITS,
            EndRing::EisensteinIntegers => &ZW_UNITS,
        }
    }

    pub fn contains(self, x: Elt) -> bool {
        self != EndRing::RationalIntegers || x.b == 0
    }

    pub fn add(self, x: Elt, y: Elt) -> Elt {
        Elt::new(x.a + y.a, x.b + y.b)
    }

    pub fn sub(self, x: Elt, y: Elt) -> Elt {
        Elt::new(x.a - y.a, x.b - y.b)
    }

    pub fn neg(self, x: Elt) -> Elt {
        Elt::new(-x.a, -x.b)
    }

    pub fn mul(self, x: Elt, y: Elt) -> Elt {
        match self {
            EndRing::RationalIntegers => Elt::int(x.a * y.a),
            EndRing::GaussianIntegers => Elt::new(x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a),
            // ω² = −1 − ω
            EndRing::EisensteinIntegers => Elt::new(x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b),
        }
    }

    pub fn conj(self, x: Elt) -> Elt {
        match self {
            EndRing::RationalIntegers => x,
            EndRing::GaussianIntegers => Elt::new(x.a, -x.b),
            // conj(ω) = ω² = −1 − ω
            EndRing::EisensteinIntegers => Elt::new(x.a - x.b, -x.b),
        }
    }

    /// Squared complex modulus.
    pub fn norm(self, x: Elt) -> i128 {
        let (a, b) = (i128::from(x.a), i128::from(x.b));
        match self {
            EndRing::RationalIntegers => a * a,
            EndRing::GaussianIntegers => a * a + b * b,
            EndRing::EisensteinIntegers => a * a - a * b + b * b,
        }
    }

    /// Nearest quotient x/d, rounding each coordinate as floor(t + 1/2).
    pub fn quotient(self, x: Elt, d: Elt) -> Elt {
        assert!(!d.is_zero(), "division by zero");
        let n = self.norm(d);
        let p = self.mul(x, self.conj(d));
        let q = Elt::new(round_div(i128::from(p.a), n) as i64, round_div(i128::from(p.b), n) as i64);
        if self == EndRing::RationalIntegers {
            Elt::int(q.a)
        } else {
            q
        }
    }

    /// Canonical representative of x modulo d.
    pub fn residue(self, x: Elt, d: Elt) -> Elt {
        self.sub(x, self.mul(d, self.quotient(x, d)))
    }

    /// The associate of x with the lexicographically largest coordinates.
    pub fn canonical_associate(self, x: Elt) -> (Elt, Elt) {
        self.units()
            .iter()
            .map(|&u| (self.mul(u, x), u))
            .max_by_key(|&(y, _)| (y.a, y.b))
            .expect("nonempty unit group")
    }

    /// Elements with norm at most `bound`, ordered by (a, b).
    pub fn elements_with_norm_at_most(self, bound: i128) -> Vec<Elt> {
        if bound < 0 {
            return Vec::new();
        }
        // a² − ab + b² ≥ (a² + b²)/2, so |a|, |b| ≤ √(2·bound) covers every ring
        let r = ((2 * bound) as f64).sqrt().ceil() as i64 + 1;
        let mut out = Vec::new();
        let brange = if self == EndRing::RationalIntegers { 0..=0 } else { -r..=r };
        for a in -r..=r {
            for b in brange.clone() {
                let x = Elt::new(a, b);
                if self.norm(x) <= bound {
                    out.push(x);
                }
            }
        }
        out
    }

    /// The canonical residue system modulo d.
    pub fn residues(self, d: Elt) -> Vec<Elt> {
        // a coordinate-rounded residue has norm at most ¾·N(d)
        self.elements_with_norm_at_most(self.norm(d))
            .into_iter()
            .filter(|&x| self.residue(x, d) == x)
            .collect()
    }

    pub fn format(self, x: Elt) -> String {
        let t = match self {
            EndRing::RationalIntegers => return x.a.to_string(),
            EndRing::GaussianIntegers => "i",
            EndRing::EisensteinIntegers => "w",
        };
        match (x.a, x.b) {
            (a, 0) => a.to_string(),
            (0, 1) => t.to_string(),
            (0, -1) => format!("-{t}"),
            (0, b) => format!("{b}{t}"),
            (a, 1) => format!("{a}+{t}"),
            (a, -1) => format!("{a}-{t}"),
            (a, b) if b > 0 => format!("{a}+{b}{t}"),
            (a, b) => format!("{a}{b}{t}"),
        }
    }

    /// Parses `3`, `-2+i`, `1-2w`, `i`.
    pub fn parse(self, s: &str) -> Result<Elt> {
        let bad = || Error::Parse(format!("`{s}` is not an element of {}", self.id()));
        let s = s.trim();
        let sym = match self {
            EndRing::RationalIntegers => None,
            EndRing::GaussianIntegers => Some('i'),
            EndRing::EisensteinIntegers => Some('w'),
        };
        if !sym.is_some_and(|t| s.ends_with(t)) {
            return s.parse::<i64>().map(Elt::int).map_err(|_| bad());
        }
        let body = &s[..s.len() - 1];
        let split = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').last().map(|(i, _)| i);
        let (a, coeff) = match split {
            Some(i) => (body[..i].parse::<i64>().map_err(|_| bad())?, &body[i..]),
            None => (0, body),
        };
        let b = match coeff {
            "" | "+" => 1,
            "-" => -1,
            c => c.trim_start_matches('+').parse::<i64>().map_err(|_| bad())?,
        };
        Ok(Elt::new(a, b))
    }
}

impl FromStr for EndRing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Ok(EndRing::RationalIntegers),
            "zi" | "z[i]" | "gaussian" => Ok(EndRing::GaussianIntegers),
            "zw" | "z[w]" | "eisenstein" => Ok(EndRing::EisensteinIntegers),
            _ => Err(Error::Parse(format!("unknown ring `{s}`, expected z, zi or zw"))),
        }
    }
}

impl fmt::Display for EndRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms_are_multiplicative() {
        for ring in EndRing::ALL {
            let xs = ring.elements_with_norm_at_most(13);
            for &x in &xs {
                for &y in &xs {
                    assert_eq!(ring.norm(ring.mul(x, y)), ring.norm(x) * ring.norm(y));
                }
            }
        }
    }

    #[test]
    fn units_have_norm_one() {
        for ring in EndRing::ALL {
            assert!(ring.units().iter().all(|&u| ring.norm(u) == 1));
            assert_eq!(ring.elements_with_norm_at_most(1).len(), ring.units().len() + 1);
        }
    }

    #[test]
    fn euclidean_division() {
        for ring in EndRing::ALL {
            let xs = ring.elements_with_norm_at_most(40);
            for &d in xs.iter().filter(|d| !d.is_zero()) {
                for &x in &xs {
                    let r = ring.residue(x, d);
                    assert!(4 * ring.norm(r) <= 3 * ring.norm(d));
                    assert_eq!(ring.residue(r, d), r);
                    let q = ring.quotient(ring.sub(x, r), d);
                    assert_eq!(ring.mul(q, d), ring.sub(x, r));
                }
            }
        }
    }

    #[test]
    fn residue_systems_have_norm_many_classes() {
        for ring in EndRing::ALL {
            for &d in ring.elements_with_norm_at_most(30).iter().filter(|d| !d.is_zero()) {
                let classes = if ring == EndRing::RationalIntegers { d.a.abs() as i128 } else { ring.norm(d) };
                assert_eq!(ring.residues(d).len() as i128, classes);
            }
        }
    }

    #[test]
    fn associates() {
        let r = EndRing::GaussianIntegers;
        let (c, _) = r.canonical_associate(Elt::new(0, -2));
        assert_eq!(c, Elt::new(2, 0));
        assert_eq!(EndRing::RationalIntegers.canonical_associate(Elt::int(-3)).0, Elt::int(3));
    }

    #[test]
    fn parse_and_format() {
        let r = EndRing::GaussianIntegers;
        for s in ["3", "-2+i", "1-2i", "i", "-i", "5i", "0"] {
            assert_eq!(r.format(r.parse(s).unwrap()), s);
        }
        let w = EndRing::EisensteinIntegers;
        assert_eq!(w.parse("2+3w").unwrap(), Elt::new(2, 3));
        assert!(EndRing::RationalIntegers.parse("1+i").is_err());
        assert_eq!("zi".parse::<EndRing>().unwrap(), EndRing::GaussianIntegers);
    }
}
