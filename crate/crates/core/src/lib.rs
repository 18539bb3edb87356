//! Exact character values of cyclotomic Hecke algebras.

pub mod clifford;
pub mod content;
pub mod cyclo;
pub mod error;
pub mod group;
pub mod laurent;
pub mod matrix;
pub mod mn;
pub mod poset;
pub mod ratfn;
pub mod scalar;
pub mod seminormal;
pub mod shapes;
pub mod table;
pub mod verify;

pub use num_rational::BigRational;

pub use error::{Error, Result};

/// Library version, part of every cache key.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub type CycloRational = cyclo::Cyclo<BigRational>;
pub type LaurentPoly = laurent::Laurent<BigRational>;
pub type RationalFn = ratfn::Frac<BigRational>;
pub type Table = table::CharacterTable<BigRational>;
