use std::fmt;

use serde_json::{json, Value};

use super::ring::{Elt, EndRing};
use crate::error::{Error, Result};

/// An r×N matrix over End(E) describing an algebraic subgroup of Eᴺ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupMatrix {
    ring: EndRing,
    rows: usize,
    cols: usize,
    entries: Vec<Elt>,
}

/// Hermite normal form together with its pivot columns and the column
/// order that moves the pivots to the front.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedMatrix {
    pub matrix: SubgroupMatrix,
    pub pivots: Vec<usize>,
    pub permutation: Vec<usize>,
}

impl ReducedMatrix {
    /// The matrix with columns reordered by `permutation`: pivots d₁,…,d_r
    /// on the diagonal, free columns after.
    pub fn shape(&self) -> SubgroupMatrix {
        self.matrix.permute_columns(&self.permutation).expect("valid permutation")
    }
}

pub(crate) fn determinant(ring: EndRing, m: &[Vec<Elt>]) -> Elt {
    match m.len() {
        0 => Elt::ONE,
        1 => m[0][0],
        2 => ring.sub(ring.mul(m[0][0], m[1][1]), ring.mul(m[0][1], m[1][0])),
        k => {
            let mut acc = Elt::ZERO;
            for j in 0..k {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Elt>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let term = ring.mul(m[0][j], determinant(ring, &minor));
                acc = if j % 2 == 0 { ring.add(acc, term) } else { ring.sub(acc, term) };
            }
            acc
        }
    }
}

/// All increasing r-subsets of 0..n.
pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            if n - c < r - cur.len() {
                break;
            }
            cur.push(c);
            go(c + 1, n, r, cur, out);
            cur.pop();
        }
    }
    go(0, n, r, &mut cur, &mut out);
    out
}

impl SubgroupMatrix {
    /// Builds the matrix and checks shape, ring membership and full row rank.
    pub fn new(ring: EndRing, rows: Vec<Vec<Elt>>) -> Result<Self> {
        let m = Self::unchecked(ring, rows)?;
        if m.degree_estimate_raw() == 0 {
            return Err(Error::RankDeficient(m.rows));
        }
        Ok(m)
    }

    fn unchecked(ring: EndRing, rows: Vec<Vec<Elt>>) -> Result<Self> {
        let r = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if r == 0 || n == 0 || r > n {
            return Err(Error::precondition(format!("need 1 <= r <= N, got r = {r}, N = {n}")));
        }
        if rows.iter().any(|row| row.len() != n) {
            return Err(Error::precondition("rows have different lengths"));
        }
        let entries: Vec<Elt> = rows.into_iter().flatten().collect();
        if let Some(x) = entries.iter().find(|&&x| !ring.contains(x)) {
            return Err(Error::precondition(format!("entry {x:?} is not in {ring}")));
        }
        Ok(SubgroupMatrix { ring, rows: r, cols: n, entries })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(EndRing::RationalIntegers, rows.iter().map(|r| r.iter().map(|&x| Elt::int(x)).collect()).collect())
    }

    pub fn ring(&self) -> EndRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elt {
        self.entries[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<Elt>> {
        self.entries.chunks(self.cols).map(<[Elt]>::to_vec).collect()
    }

    fn minor(&self, cols: &[usize]) -> Elt {
        let sub: Vec<Vec<Elt>> = (0..self.rows).map(|i| cols.iter().map(|&j| self.get(i, j)).collect()).collect();
        determinant(self.ring, &sub)
    }

    fn degree_estimate_raw(&self) -> u128 {
        combinations(self.cols, self.rows)
            .iter()
            .map(|c| self.ring.norm(self.minor(c)) as u128)
            .sum()
    }

    /// Σ over r×r minors of their norms. Zero exactly when the rank is below r.
    pub fn degree_estimate(&self) -> Result<u128> {
        match self.degree_estimate_raw() {
            0 => Err(Error::RankDeficient(self.rows)),
            d => Ok(d),
        }
    }

    /// Column j of the result is column perm[j] of self.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.cols];
        if perm.len() != self.cols || perm.iter().any(|&p| p >= self.cols || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::precondition("not a permutation of the columns"));
        }
        let rows = self.to_rows().into_iter().map(|row| perm.iter().map(|&p| row[p]).collect()).collect();
        Self::unchecked(self.ring, rows)
    }

    pub fn scale_row(&self, i: usize, c: Elt) -> Result<Self> {
        let mut rows = self.to_rows();
        for x in &mut rows[i] {
            *x = self.ring.mul(c, *x);
        }
        Self::unchecked(self.ring, rows)
    }

    /// Adds c times row `src` to row `dst`.
    pub fn add_row_multiple(&self, dst: usize, src: usize, c: Elt) -> Result<Self> {
        if dst == src {
            return Err(Error::precondition("row operation needs two distinct rows"));
        }
        let mut rows = self.to_rows();
        for j in 0..self.cols {
            rows[dst][j] = self.ring.add(rows[dst][j], self.ring.mul(c, rows[src][j]));
        }
        Self::unchecked(self.ring, rows)
    }

    /// Hermite normal form of the row module: echelon shape, pivots in
    /// canonical associate form, entries above each pivot reduced modulo it.
    pub fn reduce_rows(&self) -> Result<ReducedMatrix> {
        let ring = self.ring;
        let (r, n) = (self.rows, self.cols);
        let mut m = self.to_rows();
        let sub_mul = |m: &mut Vec<Vec<Elt>>, dst: usize, src: usize, q: Elt| {
            for j in 0..n {
                let t = ring.mul(q, m[src][j]);
                m[dst][j] = ring.sub(m[dst][j], t);
            }
        };
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == r {
                break;
            }
            loop {
                let best = (row..r).filter(|&k| !m[k][col].is_zero()).min_by_key(|&k| (ring.norm(m[k][col]), k));
                let Some(best) = best else { break };
                m.swap(row, best);
                let p = m[row][col];
                let mut clear = true;
                for k in row + 1..r {
                    if !m[k][col].is_zero() {
                        let q = ring.quotient(m[k][col], p);
                        sub_mul(&mut m, k, row, q);
                        clear &= m[k][col].is_zero();
                    }
                }
                if clear {
                    let (_, u) = ring.canonical_associate(p);
                    for x in &mut m[row] {
                        *x = ring.mul(u, *x);
                    }
                    let p = m[row][col];
                    for k in 0..row {
                        let q = ring.quotient(m[k][col], p);
                        sub_mul(&mut m, k, row, q);
                    }
                    pivots.push(col);
                    row += 1;
                    break;
                }
            }
        }
        if row < r {
            return Err(Error::RankDeficient(r));
        }
        let mut permutation = pivots.clone();
        permutation.extend((0..n).filter(|c| !pivots.contains(c)));
        Ok(ReducedMatrix { matrix: Self::unchecked(ring, m)?, pivots, permutation })
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> =
            self.to_rows().iter().map(|row| row.iter().map(|&x| self.ring.format(x)).collect()).collect();
        json!({ "ring": self.ring.id(), "rows": rows })
    }
}

impl fmt::Display for SubgroupMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|row| format!("[{}]", row.iter().map(|&x| self.ring.format(x)).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}
