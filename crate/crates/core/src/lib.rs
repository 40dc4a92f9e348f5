//! Explicit height bounds for rational points on curves in powers of elliptic
//! curves, together with the exact arithmetic, canonical heights, intersection
//! degrees, genus computations, point searches and subgroup censuses that the
//! bounds are built from.

pub mod bounds;
pub mod chow_hurwitz;
pub mod elliptic;
pub mod error;
pub mod foundation;
pub mod heights;
pub mod search;
pub mod subgroups;

pub use error::{Error, Result};
