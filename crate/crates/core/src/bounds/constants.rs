use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::error::{Error, Result};
use crate::foundation::{eval_const, BoundedReal, ConstExpr, Direction};

/// Constants C₁(N), C₂(E,N), C₃(E,N) of the height bound in Eᴺ, kept symbolic.
#[derive(Debug, Clone, PartialEq)]
pub struct CConstants {
    pub n: u32,
    pub c1: ConstExpr,
    pub c2: ConstExpr,
    pub c3: ConstExpr,
}

/// Constants D₁, D₂(E), D₃(E) of the bound for curves in E².
#[derive(Debug, Clone, PartialEq)]
pub struct DConstants {
    pub d1: ConstExpr,
    pub d2: ConstExpr,
    pub d3: ConstExpr,
    /// D₂ = d2_hw_coeff·h_W + d2_constant.
    pub d2_hw_coeff: ConstExpr,
    pub d2_constant: ConstExpr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluatedTriple {
    pub first: BoundedReal,
    pub second: BoundedReal,
    pub third: BoundedReal,
}

fn ipow(base: i64, e: u32) -> ConstExpr {
    ConstExpr::int(base).pow(e as i32)
}

/// (N!)^N · N^{3N−2} · (3^{N²+N+1}·2^{2N²+3N−1}·(N+1)^{N+1} / (ω_N ω_{N−1})²)^{N−1}
pub fn c1_expr(n: u32) -> Result<ConstExpr> {
    if n < 2 {
        return Err(Error::precondition(format!("N must be at least 2, got {n}")));
    }
    let nn = n * n;
    let inner = ipow(3, nn + n + 1)
        * ipow(2, 2 * nn + 3 * n - 1)
        * ipow(i64::from(n) + 1, n + 1)
        * (ConstExpr::unit_ball_volume(n) * ConstExpr::unit_ball_volume(n - 1)).pow(-2);
    Ok(ConstExpr::Factorial(n).pow(n as i32) * ipow(i64::from(n), 3 * n - 2) * inner.pow(n as i32 - 1))
}

pub fn constants_cn_expr(n: u32, hw: &ConstExpr) -> Result<CConstants> {
    let c1 = c1_expr(n)?;
    let ni = i64::from(n);
    let log2 = ConstExpr::log_int(2);
    let log3 = ConstExpr::log_int(3);
    let factor = ConstExpr::rational(Rational::from((Integer::from(3).pow(n), 2)))
        * log2.clone()
        + ConstExpr::int(12 * ni) * log2.clone()
        + ConstExpr::int(ni) * log3
        + ConstExpr::int(6 * ni) * hw.clone();
    let c2 = c1.clone() * factor;
    let c3 = ConstExpr::ratio(7 * ni * ni, 6) * log2 + ConstExpr::ratio(ni * ni, 2) * hw.clone();
    Ok(CConstants { n, c1, c2, c3 })
}

pub fn constants_d_expr(hw: &ConstExpr) -> DConstants {
    let inv_pi8 = ConstExpr::pi_pow(-8);
    let d1 = ipow(2, 64) * ipow(3, 40) * inv_pi8.clone();
    let lead = ipow(2, 62) * ipow(3, 41) * inv_pi8;
    let log2 = ConstExpr::log_int(2);
    let log3 = ConstExpr::log_int(3);
    let d2_hw_coeff = lead.clone() * ConstExpr::int(30);
    let d2_constant = lead.clone() * (ConstExpr::int(71) * log2.clone() + ConstExpr::int(4) * log3.clone());
    let d2 = lead * (ConstExpr::int(71) * log2.clone() + ConstExpr::int(4) * log3 + ConstExpr::int(30) * hw.clone());
    let d3 = ConstExpr::ratio(9, 2) * hw.clone() + ConstExpr::ratio(21, 2) * log2;
    DConstants { d1, d2, d3, d2_hw_coeff, d2_constant }
}

fn eval3(a: &ConstExpr, b: &ConstExpr, c: &ConstExpr, prec: u32) -> Result<EvaluatedTriple> {
    Ok(EvaluatedTriple {
        first: eval_const(a, Direction::Upper, prec)?,
        second: eval_const(b, Direction::Upper, prec)?,
        third: eval_const(c, Direction::Upper, prec)?,
    })
}

/// Upper bounds for (C₁, C₂, C₃).
pub fn constants_cn(n: u32, hw: &ConstExpr, prec: u32) -> Result<EvaluatedTriple> {
    let c = constants_cn_expr(n, hw)?;
    eval3(&c.c1, &c.c2, &c.c3, prec)
}

/// Upper bounds for (D₁, D₂, D₃).
pub fn constants_d(hw: &ConstExpr, prec: u32) -> Result<EvaluatedTriple> {
    let d = constants_d_expr(hw);
    eval3(&d.d1, &d.d2, &d.d3, prec)
}

/// h_W(E) = (log 2)/3 of y² = x³ − x − 2.
pub fn hw_log2_over_3() -> ConstExpr {
    ConstExpr::ratio(1, 3) * ConstExpr::log_int(2)
}
