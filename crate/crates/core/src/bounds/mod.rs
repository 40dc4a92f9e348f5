//! Explicit constants and height bounds, the Cₙ family pipeline and exponent
//! calculators for the bounds whose constants are not effective.

pub mod constants;
pub mod exponents;
pub mod family;
pub mod report;
pub mod transverse;

pub use constants::{
    c1_expr, constants_cn, constants_cn_expr, constants_d, constants_d_expr, hw_log2_over_3, CConstants,
    DConstants, EvaluatedTriple,
};
pub use exponents::{exponent_of, exponents, ExponentEntry, ExponentParams, ExponentTheorem};
pub use family::{family_degree, family_final_bound, family_invariants, Family, FamilyBound, FamilyInvariants, Verdict};
pub use report::BoundReport;
pub use transverse::{bound_transverse_e2, bound_weaktransverse_en, transverse_e2_expr, BoundInputs};

const DOBROWOLSKI_LEHMER_NOTE: &str = "Lower bounds for heights (the Lehmer problem, Dobrowolski's \
bound and their elliptic analogues) are not implemented. Only the upper bounds and exponent \
structures above are computed.";

pub fn dobrowolski_lehmer_info() -> &'static str {
    DOBROWOLSKI_LEHMER_NOTE
}
