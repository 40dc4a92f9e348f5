use std::time::Instant;

use serde_json::{json, Value};

use super::{closure_membership, enumerate_rank1_range, family_membership, multiple_bound, GammaSpec, LatticePoint};
use crate::bounds::Family;
use crate::elliptic::{ECPoint, PointRepr};
use crate::error::{Error, Result};
use crate::foundation::{BoundedReal, Direction};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub tol: f64,
    pub prec: u32,
    pub shards: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { tol: 1e-10, prec: 128, shards: 1 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoundPair {
    pub p1: LatticePoint,
    pub p2: LatticePoint,
}

/// Timing data. Kept out of the deterministic report body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchMetrics {
    pub wall_clock_secs: f64,
    pub candidates_per_sec: f64,
    pub shards: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub family: Family,
    pub n: u32,
    pub height_bound: BoundedReal,
    pub tol: f64,
    pub precision_bits: u32,
    pub generator_height_lower: BoundedReal,
    pub max_multiple: i64,
    pub lattice_points: usize,
    pub candidates_enumerated: u64,
    pub points: Vec<FoundPair>,
    /// Pairs on the projective closure of the family curve with a factor at
    /// infinity.
    pub closure_candidates: Vec<(ECPoint, ECPoint)>,
    pub metrics: SearchMetrics,
}

fn point_json(p: &ECPoint) -> Value {
    serde_json::to_value(PointRepr::from_point(p)).expect("serializable")
}

fn lattice_json(p: &LatticePoint) -> Value {
    json!({
        "point": point_json(&p.point),
        "multiple": p.a,
        "torsion_index": p.torsion_index,
        "canonical_height": p.height.to_json(),
    })
}

impl SearchReport {
    /// Deterministic body: identical across runs and shard counts.
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.id(),
            "equation": self.family.equation(),
            "n": self.n,
            "height_bound": self.height_bound.to_json(),
            "tol": format!("{:e}", self.tol),
            "precision_bits": self.precision_bits,
            "generator_height_lower": self.generator_height_lower.to_json(),
            "max_multiple": self.max_multiple,
            "lattice_points": self.lattice_points,
            "candidates_enumerated": self.candidates_enumerated,
            "points": self.points.iter().map(|f| json!({"p1": lattice_json(&f.p1), "p2": lattice_json(&f.p2)})).collect::<Vec<_>>(),
            "closure_candidates": self.closure_candidates.iter().map(|(a, b)| json!([point_json(a), point_json(b)])).collect::<Vec<_>>(),
            "notes": [format!(
                "exhaustive only for canonical height at most the stated bound plus tol; {} is not a bound on all rational points",
                self.height_bound.approx(6)
            )],
        })
    }

    pub fn metrics_json(&self) -> Value {
        json!({
            "wall_clock_secs": self.metrics.wall_clock_secs,
            "candidates_per_sec": self.metrics.candidates_per_sec,
            "shards": self.metrics.shards,
        })
    }

    /// The found pairs as plain point pairs.
    pub fn point_pairs(&self) -> Vec<(ECPoint, ECPoint)> {
        self.points.iter().map(|f| (f.p1.point.clone(), f.p2.point.clone())).collect()
    }
}

fn split(amax: i64, shards: usize) -> Vec<std::ops::RangeInclusive<i64>> {
    let total = 2 * amax + 1;
    let shards = (shards as i64).clamp(1, total);
    let (q, r) = (total / shards, total % shards);
    let mut start = -amax;
    (0..shards)
        .map(|i| {
            let len = q + i64::from(i < r);
            let range = start..=start + len - 1;
            start += len;
            range
        })
        .collect()
}

/// Enumerates Γ up to canonical height B and keeps every pair (P₁, P₂)
/// satisfying the affine family equation.
pub fn search_rational_points(
    family: Family,
    n: u32,
    gamma: &GammaSpec,
    b: &BoundedReal,
    opts: SearchOptions,
) -> Result<SearchReport> {
    if n < 1 {
        return Err(Error::precondition("n must be at least 1"));
    }
    if gamma.curve() != &family.curve() {
        return Err(Error::precondition(format!(
            "curve of the subgroup does not match the ambient curve of family {family}"
        )));
    }
    let start = Instant::now();
    let (amax, hg_lo) = multiple_bound(gamma, b, opts.tol, opts.prec)?;
    let ranges = split(amax, opts.shards.max(1));
    let parts: Vec<Result<Vec<LatticePoint>>> = std::thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| s.spawn(move || enumerate_rank1_range(gamma, b, opts.tol, opts.prec, r)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("search shard panicked")).collect()
    });
    let mut lattice = Vec::new();
    for part in parts {
        lattice.extend(part?);
    }

    let mut points = Vec::new();
    let mut closure = Vec::new();
    for p1 in &lattice {
        for p2 in &lattice {
            if family_membership(&p1.point, &p2.point, family, n) {
                points.push(FoundPair { p1: p1.clone(), p2: p2.clone() });
            } else if closure_membership(&p1.point, &p2.point, family, n) {
                closure.push((p1.point.clone(), p2.point.clone()));
            }
        }
    }
    let candidates = (lattice.len() as u64).pow(2);
    let secs = start.elapsed().as_secs_f64();
    Ok(SearchReport {
        family,
        n,
        height_bound: b.clone(),
        tol: opts.tol,
        precision_bits: opts.prec,
        generator_height_lower: BoundedReal::exact(hg_lo, Direction::Lower),
        max_multiple: amax,
        lattice_points: lattice.len(),
        candidates_enumerated: candidates,
        points,
        closure_candidates: closure,
        metrics: SearchMetrics {
            wall_clock_secs: secs,
            candidates_per_sec: if secs > 0.0 { candidates as f64 / secs } else { 0.0 },
            shards: opts.shards.max(1),
        },
    })
}
