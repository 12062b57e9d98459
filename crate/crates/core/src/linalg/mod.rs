//! Linear algebra over GF(2^m).

mod field;
mod matrix;
mod subspace;

pub use field::Field;
pub use matrix::{Matrix, Vector};
pub use subspace::{spin, EchelonBuilder, Subspace};
