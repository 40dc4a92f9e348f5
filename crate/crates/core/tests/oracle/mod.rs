//! Brute-force reference implementations for the subgroup census. Nothing
//! here calls into the library's normal form or enumeration code.
#![allow(dead_code)]

use std::collections::BTreeMap;

pub type Vector = Vec<i64>;

fn norm2(v: &[i64]) -> i64 {
    v.iter().map(|x| x * x).sum()
}

fn all_vectors(n: usize, bound: i64) -> Vec<Vector> {
    let s = (bound as f64).sqrt() as i64 + 1;
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vector| {
                (-s..=s).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| norm2(v) <= bound && v.iter().any(|&x| x != 0));
    out
}

/// 2×2 minors of a pair of rows, in column-pair order.
fn plucker(u: &[i64], v: &[i64]) -> Vector {
    let n = u.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(u[i] * v[j] - u[j] * v[i]);
        }
    }
    out
}

fn sign_normalize(mut p: Vector) -> Vector {
    if p.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        p.iter_mut().for_each(|x| *x = -*x);
    }
    p
}

/// Whether w is an integer combination of u and v (u, v independent).
fn in_module(u: &[i64], v: &[i64], w: &[i64]) -> bool {
    let n = u.len();
    for i in 0..n {
        for j in i + 1..n {
            let det = u[i] * v[j] - u[j] * v[i];
            if det == 0 {
                continue;
            }
            let xn = w[i] * v[j] - w[j] * v[i];
            let yn = u[i] * w[j] - u[j] * w[i];
            if xn % det != 0 || yn % det != 0 {
                return false;
            }
            let (x, y) = (xn / det, yn / det);
            return (0..n).all(|k| x * u[k] + y * v[k] == w[k]);
        }
    }
    false
}

/// Row modules of rank r ≤ 2 in ℤᴺ whose Gram determinant (the sum of the
/// squared r×r minors) is at most dmax; one basis per module.
pub fn integer_modules(n: usize, r: usize, dmax: i64) -> Vec<Vec<Vector>> {
    match r {
        1 => {
            let mut seen = BTreeMap::new();
            for v in all_vectors(n, dmax) {
                seen.entry(sign_normalize(v.clone())).or_insert(v);
            }
            seen.into_values().map(|v| vec![v]).collect()
        }
        2 => {
            // a Lagrange-reduced basis has |u|² ≤ |v|² and |u|²|v|² ≤ (4/3)·det
            let cap = 4 * dmax / 3;
            let vecs = all_vectors(n, cap);
            let mut by_plucker: BTreeMap<Vector, Vec<(Vector, Vector)>> = BTreeMap::new();
            for u in &vecs {
                for v in &vecs {
                    let (nu, nv) = (norm2(u), norm2(v));
                    if nu > nv || nu * nv > cap {
                        continue;
                    }
                    let p = plucker(u, v);
                    let g = norm2(&p);
                    if g == 0 || g > dmax {
                        continue;
                    }
                    let class = by_plucker.entry(sign_normalize(p)).or_default();
                    // equal covolume and one-sided containment imply equality
                    if !class.iter().any(|(a, b)| in_module(a, b, u) && in_module(a, b, v)) {
                        class.push((u.clone(), v.clone()));
                    }
                }
            }
            by_plucker.into_values().flatten().map(|(u, v)| vec![u, v]).collect()
        }
        _ => panic!("oracle supports r ≤ 2"),
    }
}

/// Whether two bases of rank ≤ 2 span the same ℤ-module.
pub fn same_module(a: &[Vector], b: &[Vector]) -> bool {
    match a.len() {
        1 => a[0] == b[0] || a[0].iter().zip(&b[0]).all(|(x, y)| *x == -*y),
        2 => b.iter().all(|w| in_module(&a[0], &a[1], w)) && a.iter().all(|w| in_module(&b[0], &b[1], w)),
        _ => unreachable!(),
    }
}

pub fn gram_determinant(basis: &[Vector]) -> i64 {
    match basis.len() {
        1 => norm2(&basis[0]),
        2 => norm2(&plucker(&basis[0], &basis[1])),
        _ => unreachable!(),
    }
}

type Gauss = (i64, i64);

fn gmul(x: Gauss, y: Gauss) -> Gauss {
    (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}

/// Nonzero vectors of ℤ[i]² with N(x) + N(y) ≤ dmax, one per orbit of the
/// unit group {±1, ±i}; each orbit is keyed by its smallest member.
pub fn gaussian_lines(dmax: i64) -> Vec<[Gauss; 2]> {
    let s = (dmax as f64).sqrt() as i64 + 1;
    let mut elems = Vec::new();
    for a in -s..=s {
        for b in -s..=s {
            if a * a + b * b <= dmax {
                elems.push((a, b));
            }
        }
    }
    let mut out = std::collections::BTreeSet::new();
    for &x in &elems {
        for &y in &elems {
            let n = x.0 * x.0 + x.1 * x.1 + y.0 * y.0 + y.1 * y.1;
            if n == 0 || n > dmax {
                continue;
            }
            out.insert(gaussian_key([x, y]));
        }
    }
    out.into_iter().collect()
}

pub fn gaussian_key(v: [Gauss; 2]) -> [Gauss; 2] {
    [(1, 0), (-1, 0), (0, 1), (0, -1)]
        .iter()
        .map(|&u| [gmul(u, v[0]), gmul(u, v[1])])
        .min()
        .unwrap()
}

/// Σ_{i≤T} i^{2N} by repeated multiplication.
pub fn torsion_sum(n: u32, t: u64) -> u128 {
    let mut total = 0u128;
    for i in 1..=t as u128 {
        let mut p = 1u128;
        for _ in 0..2 * n {
            p *= i;
        }
        total += p;
    }
    total
}

/// Matches library output against the brute force, one to one.
pub mod compare {
    use std::collections::BTreeMap;

    use ebh_core::subgroups::{enumerate_matrices, torsion_count, EndRing, EnumerationLimits};
    

    use super::Vector;

    pub fn integer_census(n: usize, r: usize, dmax: i64) -> Result<(), String> {
        let found = enumerate_matrices(EndRing::RationalIntegers, n, r, dmax as u128, EnumerationLimits::default())
            .map_err(|e| e.to_string())?;
        let expected = super::integer_modules(n, r, dmax);
        if found.len() != expected.len() {
            return Err(format!("N={n} r={r} Dmax={dmax}: {} enumerated, {} expected", found.len(), expected.len()));
        }
        let mut by_degree: BTreeMap<i64, Vec<Vec<Vector>>> = BTreeMap::new();
        for basis in expected {
            by_degree.entry(super::gram_determinant(&basis)).or_default().push(basis);
        }
        for (m, d) in &found {
            let rows: Vec<Vector> = m.to_rows().iter().map(|row| row.iter().map(|e| e.a).collect()).collect();
            let bucket = by_degree.get_mut(&(*d as i64)).ok_or(format!("{rows:?}: degree {d} not in oracle"))?;
            let hits: Vec<usize> = (0..bucket.len()).filter(|&i| super::same_module(&bucket[i], &rows)).collect();
            if hits.len() != 1 {
                return Err(format!("{rows:?} matched {} oracle modules", hits.len()));
            }
            bucket.swap_remove(hits[0]);
        }
        Ok(())
    }

    pub fn gaussian_census(dmax: i64) -> Result<(), String> {
        let found = enumerate_matrices(EndRing::GaussianIntegers, 2, 1, dmax as u128, EnumerationLimits::default())
            .map_err(|e| e.to_string())?;
        let mut got: Vec<_> = found
            .iter()
            .map(|(m, _)| {
                let e = |j| (m.get(0, j).a, m.get(0, j).b);
                super::gaussian_key([e(0), e(1)])
            })
            .collect();
        got.sort();
        let before = got.len();
        got.dedup();
        if before != got.len() {
            return Err(format!("Dmax={dmax}: duplicate lines in the enumeration"));
        }
        if got != super::gaussian_lines(dmax) {
            return Err(format!("Dmax={dmax}: line sets differ"));
        }
        Ok(())
    }

    pub fn torsion(n: u32, t: u64) -> Result<(), String> {
        if torsion_count(n, t) != super::torsion_sum(n, t) {
            return Err(format!("torsion_count({n}, {t}) differs from the direct sum"));
        }
        Ok(())
    }
}
