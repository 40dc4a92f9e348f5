//! Algebraic subgroups of Eᴺ as matrices over End(E): degree estimates from
//! minors, normal forms, bounded-degree enumeration and torsion counts.

mod census;
mod enumerate;
mod matrix;
mod ring;

pub use census::{census, torsion_count, CensusReport};
pub use enumerate::{enumerate_matrices, predicted_size, EnumerationLimits, DEFAULT_CEILING};
pub use matrix::{ReducedMatrix, SubgroupMatrix};
pub use ring::{Elt, EndRing};
