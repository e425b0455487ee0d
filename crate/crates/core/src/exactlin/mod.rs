//! Dense exact linear algebra: row reduction, kernels and subspace lattice
//! operations.

mod matrix;
pub(crate) mod sparse;
mod subspace;

pub use matrix::{kernel_basis, rref, Matrix};
pub use subspace::{contains, intersect, Subspace};
