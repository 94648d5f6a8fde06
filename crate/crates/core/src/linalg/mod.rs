//! Exact linear algebra over prime fields.

mod field;
mod mat;
mod subspace;

pub use field::PrimeField;
pub use mat::{Mat, Rref};
pub use subspace::Subspace;
