//! Multidegrees in the Chow ring of products of projective spaces, and
//! genera of covers of P¹ via Riemann–Hurwitz.

mod chow;
mod hurwitz;

pub use chow::{chow_mul, top_coefficient, ChowClass};
pub use hurwitz::{
    cn_profile_template, hurwitz_genus, validate_profile, BranchEntry, BranchTemplate, CheckedBranch,
    CheckedProfile, LinearForm, ProfileTemplate, RamificationProfile, CN_PROFILE_JSON,
};
