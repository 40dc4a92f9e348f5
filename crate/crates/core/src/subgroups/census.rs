use std::collections::BTreeMap;

use rug::ops::Pow;
use rug::{Integer, Rational};
use serde_json::{json, Value};

use super::enumerate::{enumerate_matrices, EnumerationLimits};
use super::ring::EndRing;
use crate::error::{Error, Result};
use crate::foundation::format_rational;

/// Σ_{i=1}^T i^{2N}: torsion points of order at most T, counted with the
/// bound i^{2N} for points killed by i.
pub fn torsion_count(n: u32, t: u64) -> Integer {
    (1..=t).map(|i| Integer::from(i).pow(2 * n)).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusReport {
    pub ring: EndRing,
    pub n: usize,
    pub r: usize,
    pub dmax: u128,
    pub torsion_bound: u64,
    /// Number of reduced matrices with each exact degree estimate.
    pub degree_buckets: BTreeMap<u128, u64>,
    pub total: u64,
    /// i^{2N} for i = 1..T.
    pub torsion_by_order: Vec<(u64, Integer)>,
    pub torsion_total: Integer,
    /// total · T^{2N+1}.
    pub product_bound: Integer,
    /// max over D ≤ Dmax of #{deg ≤ D}/D^N.
    pub kappa: Rational,
}

impl CensusReport {
    /// Number of matrices with degree estimate at most `d`.
    pub fn cumulative(&self, d: u128) -> u64 {
        self.degree_buckets.range(..=d).map(|(_, c)| c).sum()
    }

    pub fn to_json(&self) -> Value {
        let buckets: Vec<Value> = self
            .degree_buckets
            .iter()
            .scan(0u64, |acc, (d, c)| {
                *acc += c;
                Some(json!({"degree": d.to_string(), "count": c, "cumulative": *acc}))
            })
            .collect();
        let torsion: Vec<Value> = self
            .torsion_by_order
            .iter()
            .map(|(i, c)| json!({"order": i, "points": c.to_string()}))
            .collect();
        json!({
            "ring": self.ring.id(),
            "N": self.n,
            "r": self.r,
            "max_degree": self.dmax.to_string(),
            "torsion_bound": self.torsion_bound,
            "degree_buckets": buckets,
            "total": self.total,
            "torsion_by_order": torsion,
            "torsion_total": self.torsion_total.to_string(),
            "torsion_upper": Integer::from(self.torsion_bound).pow(2 * self.n as u32 + 1).to_string(),
            "product_bound": self.product_bound.to_string(),
            "kappa": format_rational(&self.kappa),
        })
    }
}

pub fn census(ring: EndRing, n: usize, r: usize, dmax: u128, t: u64, limits: EnumerationLimits) -> Result<CensusReport> {
    if t == 0 {
        return Err(Error::precondition("torsion bound T must be at least 1"));
    }
    let mats = enumerate_matrices(ring, n, r, dmax, limits)?;
    let mut buckets = BTreeMap::new();
    for (_, d) in &mats {
        *buckets.entry(*d).or_insert(0u64) += 1;
    }
    let total = mats.len() as u64;
    let e = 2 * n as u32;
    let torsion_by_order: Vec<(u64, Integer)> = (1..=t).map(|i| (i, Integer::from(i).pow(e))).collect();
    let torsion_total = torsion_by_order.iter().map(|(_, c)| c).sum();
    let product_bound = Integer::from(total) * Integer::from(t).pow(e + 1);
    let mut kappa = Rational::new();
    let mut acc = 0u64;
    for (&d, &c) in &buckets {
        acc += c;
        let ratio = Rational::from((Integer::from(acc), Integer::from(d).pow(n as u32)));
        if ratio > kappa {
            kappa = ratio;
        }
    }
    Ok(CensusReport {
        ring,
        n,
        r,
        dmax,
        torsion_bound: t,
        degree_buckets: buckets,
        total,
        torsion_by_order,
        torsion_total,
        product_bound,
        kappa,
    })
}
