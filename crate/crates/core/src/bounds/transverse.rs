use super::constants::{constants_cn_expr, constants_d_expr};
use super::report::BoundReport;
use crate::error::{Error, Result};
use crate::foundation::{eval_const, BoundedReal, ConstExpr, Direction};

fn upper(e: &ConstExpr, prec: u32) -> Result<BoundedReal> {
    eval_const(e, Direction::Upper, prec)
}

fn check_height(h: &BoundedReal) -> Result<()> {
    if h.direction() != Direction::Upper {
        return Err(Error::DirectionMismatch(h.direction().as_str(), "upper"));
    }
    if !h.is_nonnegative() {
        return Err(Error::precondition("height bound must be nonnegative"));
    }
    Ok(())
}

fn ipow(v: u64, e: u32) -> ConstExpr {
    ConstExpr::integer(rug::Integer::from(v)).pow(e as i32)
}

/// D₁·h·deg² + D₂·deg³ + D₃ as an exact expression.
pub fn transverse_e2_expr(h_c: &ConstExpr, deg_c: u64, hw: &ConstExpr) -> ConstExpr {
    let d = constants_d_expr(hw);
    d.d1 * h_c.clone() * ipow(deg_c, 2) + d.d2 * ipow(deg_c, 3) + d.d3
}

/// Height bound for rational points on a transverse curve C ⊂ E² when
/// E(k) has rank one.
pub fn bound_transverse_e2(h_c: &BoundedReal, deg_c: u64, hw: &ConstExpr, prec: u32) -> Result<BoundReport> {
    check_height(h_c)?;
    if deg_c == 0 {
        return Err(Error::precondition("deg C must be at least 1"));
    }
    let h = ConstExpr::from_upper(h_c)?;
    let d = constants_d_expr(hw);
    let t1 = d.d1.clone() * h.clone() * ipow(deg_c, 2);
    let t2 = d.d2.clone() * ipow(deg_c, 3);
    let total = transverse_e2_expr(&h, deg_c, hw);
    Ok(BoundReport::new("e2-transverse", upper(&total, prec)?)
        .input("h_C", h_c.decimal())
        .input("deg_C", deg_c.to_string())
        .input("h_W", hw.to_string())
        .input("precision_bits", prec.to_string())
        .step("D1", upper(&d.d1, prec)?)
        .step("D2", upper(&d.d2, prec)?)
        .step("D3", upper(&d.d3, prec)?)
        .step("D1*h_C*deg_C^2", upper(&t1, prec)?)
        .step("D2*deg_C^3", upper(&t2, prec)?))
}

/// Inputs shared by the bound evaluators. Only `n`, `h_v`, `deg_v` and
/// `h_w` enter the explicit bounds; the remaining fields document the
/// quantities that appear in the exponent-only statements.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundInputs {
    pub n: u32,
    pub h_v: BoundedReal,
    pub deg_v: u64,
    pub h_w: ConstExpr,
    pub ktor_degree: Option<u64>,
    pub k_degree: Option<u64>,
    pub eta: Option<rug::Rational>,
    pub rank_t: Option<u32>,
    pub gen_height: Option<BoundedReal>,
}

impl BoundInputs {
    pub fn new(n: u32, h_v: BoundedReal, deg_v: u64, h_w: ConstExpr) -> Self {
        BoundInputs { n, h_v, deg_v, h_w, ktor_degree: None, k_degree: None, eta: None, rank_t: None, gen_height: None }
    }
}

/// C₁(N)·h·deg^{N−1} + C₂(E,N)·deg^N + C₃(E,N) for weak-transverse curves in Eᴺ, N ≥ 3.
pub fn bound_weaktransverse_en(inputs: &BoundInputs, prec: u32) -> Result<BoundReport> {
    let n = inputs.n;
    if n < 3 {
        return Err(Error::precondition(format!("N must be at least 3, got {n}; use the E^2 bound")));
    }
    check_height(&inputs.h_v)?;
    if inputs.deg_v == 0 {
        return Err(Error::precondition("deg C must be at least 1"));
    }
    let h = ConstExpr::from_upper(&inputs.h_v)?;
    let c = constants_cn_expr(n, &inputs.h_w)?;
    let t1 = c.c1.clone() * h * ipow(inputs.deg_v, n - 1);
    let t2 = c.c2.clone() * ipow(inputs.deg_v, n);
    let total = t1.clone() + t2.clone() + c.c3.clone();
    Ok(BoundReport::new("en-weak-transverse", upper(&total, prec)?)
        .input("N", n.to_string())
        .input("h_C", inputs.h_v.decimal())
        .input("deg_C", inputs.deg_v.to_string())
        .input("h_W", inputs.h_w.to_string())
        .input("precision_bits", prec.to_string())
        .step("C1", upper(&c.c1, prec)?)
        .step("C2", upper(&c.c2, prec)?)
        .step("C3", upper(&c.c3, prec)?)
        .step("C1*h_C*deg_C^(N-1)", upper(&t1, prec)?)
        .step("C2*deg_C^N", upper(&t2, prec)?))
}
