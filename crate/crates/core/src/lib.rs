//! Algebraic algorithms for disjoint shortest paths.

pub mod bench;
pub mod dsp2;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod gen;
pub mod graph;
pub mod kedsp;
pub mod oracle;
pub mod reductions;
pub mod scalar;
pub mod search;
pub mod selftest;

pub use error::{Error, Result};
pub use field::Gf64;
pub use scalar::{Dual, Gf2, Scalar};

/// Edge values drawn from GF(2^64).
pub type FieldAssignment = dsp2::Assignment<Gf64>;
pub type FieldPathTables = dsp2::PathTables<Gf64>;
pub type FieldBreakdown = dsp2::Breakdown<Gf64>;
