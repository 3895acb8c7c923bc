//! Exact arithmetic for cyclotomic Weil-Stark elements of real abelian
//! fields: group rings, lattices with group action, Fitting invariants,
//! Rubin lattices, S-unit data, L-derivatives at zero and the verifiers
//! tying them together.

pub mod arith;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod fixtures;
pub mod groupring;
pub mod lattice;
pub mod lseries;
pub mod matrix;
pub mod numberfield;
pub mod numeric;
pub mod weilstark;

pub use error::{Error, Result};
