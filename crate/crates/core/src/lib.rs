//! CAT(0) cube complexes encoded as posets with inconsistent pairs, and
//! geodesics between their points.

pub mod cli;
pub mod complex;
pub mod fixtures;
pub mod geodesic;
pub mod halfspace;
pub mod interval;
pub mod json;
pub mod pip;
pub mod random;
pub mod recsys;
