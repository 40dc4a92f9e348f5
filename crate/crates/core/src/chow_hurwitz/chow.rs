use std::fmt;

use rug::Integer;

use crate::error::{Error, Result};

/// Class in the Chow ring of P^{m₁}×…×P^{m_k}, i.e. Z[ℓ₁,…,ℓ_k]/(ℓᵢ^{mᵢ+1}).
/// Coefficients are stored densely, indexed by exponent tuples in mixed radix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChowClass {
    ambient: Vec<usize>,
    coeffs: Vec<Integer>,
}

fn table_len(ambient: &[usize]) -> usize {
    ambient.iter().map(|m| m + 1).product()
}

impl ChowClass {
    pub fn zero(ambient: &[usize]) -> Self {
        ChowClass { ambient: ambient.to_vec(), coeffs: vec![Integer::new(); table_len(ambient)] }
    }

    pub fn one(ambient: &[usize]) -> Self {
        let mut c = Self::zero(ambient);
        c.coeffs[0] = Integer::from(1);
        c
    }

    /// c·ℓ^e, dropped to zero when some eᵢ exceeds mᵢ.
    pub fn monomial(ambient: &[usize], exponents: &[usize], coeff: impl Into<Integer>) -> Result<Self> {
        if exponents.len() != ambient.len() {
            return Err(Error::AmbientMismatch(ambient.to_vec(), exponents.to_vec()));
        }
        let mut c = Self::zero(ambient);
        if exponents.iter().zip(ambient).all(|(e, m)| e <= m) {
            let i = c.index(exponents);
            c.coeffs[i] = coeff.into();
        }
        Ok(c)
    }

    /// Σ cᵢ·ℓᵢ, the class of a hypersurface of multidegree (c₁,…,c_k).
    pub fn linear(ambient: &[usize], coeffs: &[i64]) -> Result<Self> {
        if coeffs.len() != ambient.len() {
            return Err(Error::AmbientMismatch(ambient.to_vec(), coeffs.iter().map(|&c| c as usize).collect()));
        }
        let mut out = Self::zero(ambient);
        for (i, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; ambient.len()];
            e[i] = 1;
            out = out.add(&Self::monomial(ambient, &e, c)?)?;
        }
        Ok(out)
    }

    pub fn ambient(&self) -> &[usize] {
        &self.ambient
    }

    fn index(&self, exponents: &[usize]) -> usize {
        let mut i = 0;
        for (e, m) in exponents.iter().zip(&self.ambient) {
            i = i * (m + 1) + e;
        }
        i
    }

    fn exponents(&self, mut i: usize) -> Vec<usize> {
        let mut e = vec![0; self.ambient.len()];
        for (slot, m) in e.iter_mut().zip(&self.ambient).rev() {
            *slot = i % (m + 1);
            i /= m + 1;
        }
        e
    }

    pub fn coefficient(&self, exponents: &[usize]) -> Integer {
        if exponents.len() != self.ambient.len() || exponents.iter().zip(&self.ambient).any(|(e, m)| e > m) {
            return Integer::new();
        }
        self.coeffs[self.index(exponents)].clone()
    }

    /// Nonzero terms as (exponents, coefficient), in lexicographic order.
    pub fn terms(&self) -> Vec<(Vec<usize>, Integer)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (self.exponents(i), c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    fn check_ambient(&self, other: &ChowClass) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient.clone(), other.ambient.clone()));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check_ambient(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| Integer::from(a + b)).collect();
        Ok(ChowClass { ambient: self.ambient.clone(), coeffs })
    }

    pub fn scale(&self, k: &Integer) -> ChowClass {
        let coeffs = self.coeffs.iter().map(|a| Integer::from(a * k)).collect();
        ChowClass { ambient: self.ambient.clone(), coeffs }
    }

    pub fn mul(&self, other: &ChowClass) -> Result<ChowClass> {
        self.check_ambient(other)?;
        let mut out = ChowClass::zero(&self.ambient);
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            let ea = self.exponents(i);
            for (j, b) in other.coeffs.iter().enumerate() {
                if *b == 0 {
                    continue;
                }
                let eb = other.exponents(j);
                let sum: Vec<usize> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
                if sum.iter().zip(&self.ambient).all(|(e, m)| e <= m) {
                    let k = out.index(&sum);
                    out.coeffs[k] += Integer::from(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Reorders the factors of the ambient: factor `perm[i]` becomes factor i.
    pub fn permute_factors(&self, perm: &[usize]) -> Result<ChowClass> {
        let k = self.ambient.len();
        let mut seen = vec![false; k];
        if perm.len() != k || perm.iter().any(|&p| p >= k || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::precondition("not a permutation of the ambient factors"));
        }
        let ambient: Vec<usize> = perm.iter().map(|&p| self.ambient[p]).collect();
        let mut out = ChowClass::zero(&ambient);
        for (e, c) in self.terms() {
            let pe: Vec<usize> = perm.iter().map(|&p| e[p]).collect();
            let i = out.index(&pe);
            out.coeffs[i] = c;
        }
        Ok(out)
    }
}

/// Truncated product of classes on a common ambient.
pub fn chow_mul(classes: &[ChowClass]) -> Result<ChowClass> {
    let Some(first) = classes.first() else {
        return Err(Error::precondition("empty product has no ambient"));
    };
    let mut acc = ChowClass::one(&first.ambient);
    for c in classes {
        acc = acc.mul(c)?;
    }
    Ok(acc)
}

/// Coefficient of ℓ₁^{m₁}⋯ℓ_k^{m_k}.
pub fn top_coefficient(c: &ChowClass) -> Integer {
    let top = c.ambient.clone();
    c.coefficient(&top)
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (t, (e, c)) in terms.iter().enumerate() {
            if t > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}")?;
            for (i, &p) in e.iter().enumerate() {
                match p {
                    0 => {}
                    1 => write!(f, "*l{}", i + 1)?,
                    _ => write!(f, "*l{}^{p}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}
