use std::collections::HashMap;

use super::matrix::{combinations, SubgroupMatrix};
use super::ring::{Elt, EndRing};
use crate::error::{Error, Result};

/// Refuse enumerations predicted to visit more candidates than this.
pub const DEFAULT_CEILING: u128 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub ceiling: u128,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { ceiling: DEFAULT_CEILING }
    }
}

fn check(n: usize, r: usize) -> Result<()> {
    if r == 0 || r > n {
        return Err(Error::precondition(format!("need 1 <= r <= N, got r = {r}, N = {n}")));
    }
    if n > 8 {
        return Err(Error::precondition(format!("N = {n} is above the supported maximum 8")));
    }
    Ok(())
}

/// Nonzero canonical associates with norm at most `bound`.
fn pivot_values(ring: EndRing, bound: i128) -> Vec<Elt> {
    let mut v: Vec<Elt> = ring
        .elements_with_norm_at_most(bound)
        .into_iter()
        .filter(|&x| !x.is_zero() && ring.canonical_associate(x).0 == x)
        .collect();
    v.sort_by_key(|&x| (ring.norm(x), x));
    v
}

/// Pivot tuples with Π N(pᵢ) ≤ dmax.
fn pivot_tuples(ring: EndRing, r: usize, dmax: i128) -> Vec<Vec<Elt>> {
    let values = pivot_values(ring, dmax);
    let mut out = Vec::new();
    fn go(ring: EndRing, values: &[Elt], r: usize, budget: i128, cur: &mut Vec<Elt>, out: &mut Vec<Vec<Elt>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for &p in values {
            let np = ring.norm(p);
            if np > budget {
                break;
            }
            cur.push(p);
            go(ring, values, r, budget / np, cur, out);
            cur.pop();
        }
    }
    go(ring, &values, r, dmax, &mut Vec::new(), &mut out);
    out
}

/// Vectors in R^len with Σ N(xᵢ) ≤ bound, in lexicographic order of
/// the element lists.
fn bounded_vectors(ring: EndRing, len: usize, bound: i128) -> Vec<Vec<Elt>> {
    let elems = ring.elements_with_norm_at_most(bound);
    let mut out = Vec::new();
    fn go(ring: EndRing, elems: &[Elt], len: usize, budget: i128, cur: &mut Vec<Elt>, out: &mut Vec<Vec<Elt>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for &x in elems {
            let nx = ring.norm(x);
            if nx <= budget {
                cur.push(x);
                go(ring, elems, len, budget - nx, cur, out);
                cur.pop();
            }
        }
    }
    go(ring, &elems, len, bound, &mut Vec::new(), &mut out);
    out
}

/// Upper estimate of the number of vectors `bounded_vectors` returns.
fn count_vectors(ring: EndRing, len: usize, bound: i128, memo: &mut HashMap<(usize, i128), u128>) -> u128 {
    if len == 0 {
        return 1;
    }
    if bound > 2000 {
        let side = 2 * ((2 * bound) as f64).sqrt().ceil() as u128 + 3;
        return side.saturating_pow((len * ring.rank()) as u32);
    }
    if let Some(&c) = memo.get(&(len, bound)) {
        return c;
    }
    let c = ring
        .elements_with_norm_at_most(bound)
        .into_iter()
        .map(|x| count_vectors(ring, len - 1, bound - ring.norm(x), memo))
        .fold(0u128, u128::saturating_add);
    memo.insert((len, bound), c);
    c
}

/// Free columns of row k: non-pivot columns to the right of its pivot.
fn free_columns(n: usize, pivots: &[usize], k: usize) -> Vec<usize> {
    (pivots[k] + 1..n).filter(|c| !pivots.contains(c)).collect()
}

/// Row k of M = P·[I | X] satisfies Σ_c |M_kc|² ≤ ‖P_k‖²·‖X‖², and
/// det(MM*) = N(det P)·det(I + XX*) ≥ N(det P)·(1 + ‖X‖²).
fn free_bound(row_norm: i128, np: i128, dmax: i128) -> i128 {
    row_norm * (dmax - np) / np
}

/// Upper estimate of the number of candidates `enumerate_matrices` builds.
pub fn predicted_size(ring: EndRing, n: usize, r: usize, dmax: u128) -> Result<u128> {
    check(n, r)?;
    let dmax = i128::try_from(dmax).map_err(|_| Error::Domain("Dmax too large".into()))?;
    let mut memo = HashMap::new();
    let mut total = 0u128;
    for pivots in combinations(n, r) {
        for ps in pivot_tuples(ring, r, dmax) {
            let norms: Vec<i128> = ps.iter().map(|&p| ring.norm(p)).collect();
            let np: i128 = norms.iter().product();
            let mut count: u128 = 1;
            for (i, &nv) in norms.iter().enumerate() {
                count = count.saturating_mul((nv as u128).saturating_pow(i as u32));
            }
            for k in 0..r {
                // residues have norm at most ¾ of the pivot norm
                let row_norm = norms[k] + norms[k + 1..].iter().map(|&v| (3 * v + 3) / 4).sum::<i128>();
                let f = free_columns(n, &pivots, k).len();
                count = count.saturating_mul(count_vectors(ring, f, free_bound(row_norm, np, dmax), &mut memo));
            }
            total = total.saturating_add(count);
        }
    }
    Ok(total)
}

/// Every subgroup matrix in Hermite normal form with degree estimate at most
/// `dmax`, one per row module, sorted by (degree, matrix).
pub fn enumerate_matrices(
    ring: EndRing,
    n: usize,
    r: usize,
    dmax: u128,
    limits: EnumerationLimits,
) -> Result<Vec<(SubgroupMatrix, u128)>> {
    let predicted = predicted_size(ring, n, r, dmax)?;
    if predicted > limits.ceiling {
        return Err(Error::ResourceGuard { predicted, ceiling: limits.ceiling });
    }
    let dmax_i = dmax as i128;
    let mut out = Vec::new();
    for pivots in combinations(n, r) {
        for ps in pivot_tuples(ring, r, dmax_i) {
            let np: i128 = ps.iter().map(|&p| ring.norm(p)).product();
            // entries above pivot i, row by row: (row k, pivot i) for k < i
            let slots: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..i).map(move |k| (k, i))).collect();
            let residues: Vec<Vec<Elt>> = slots.iter().map(|&(_, i)| ring.residues(ps[i])).collect();
            let mut choice = vec![0usize; slots.len()];
            loop {
                let mut base = vec![vec![Elt::ZERO; n]; r];
                for i in 0..r {
                    base[i][pivots[i]] = ps[i];
                }
                for (s, &(k, i)) in slots.iter().enumerate() {
                    base[k][pivots[i]] = residues[s][choice[s]];
                }
                let free: Vec<Vec<usize>> = (0..r).map(|k| free_columns(n, &pivots, k)).collect();
                let options: Vec<Vec<Vec<Elt>>> = (0..r)
                    .map(|k| {
                        let row_norm: i128 = pivots.iter().map(|&c| ring.norm(base[k][c])).sum();
                        bounded_vectors(ring, free[k].len(), free_bound(row_norm, np, dmax_i))
                    })
                    .collect();
                let mut pick = vec![0usize; r];
                loop {
                    let mut rows = base.clone();
                    for k in 0..r {
                        for (c, &x) in free[k].iter().zip(&options[k][pick[k]]) {
                            rows[k][*c] = x;
                        }
                    }
                    let m = SubgroupMatrix::new(ring, rows)?;
                    let d = m.degree_estimate()?;
                    if d <= dmax {
                        out.push((m, d));
                    }
                    if !advance(&mut pick, |k| options[k].len()) {
                        break;
                    }
                }
                if !advance(&mut choice, |s| residues[s].len()) {
                    break;
                }
            }
        }
    }
    out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
    Ok(out)
}

/// Odometer step; false once every index wrapped.
fn advance(idx: &mut [usize], len: impl Fn(usize) -> usize) -> bool {
    for (s, v) in idx.iter_mut().enumerate().rev() {
        *v += 1;
        if *v < len(s) {
            return true;
        }
        *v = 0;
    }
    false
}
