//! Exact computation of the tower of braided bialgebra quotients of a
//! braided tensor algebra, its combinatorial rank, and truncated Nichols
//! algebras, over the rationals or a prime field.

pub mod bialgebra;
pub mod braiding;
pub mod error;
pub mod exactlin;
pub mod field;
pub mod oracle;
pub mod shuffle;
pub mod tower;

pub use bialgebra::{GradedQuotient, PrimitiveReport};
pub use braiding::BraidedSpace;
pub use error::{Error, Result};
pub use exactlin::{Matrix, Subspace};
pub use field::{Field, FieldSpec, PrimeField, Rationals, Scalar};
pub use tower::{run, step, RankReport, StageReport};

pub type RationalMatrix = Matrix<Rationals>;
pub type ModularMatrix = Matrix<PrimeField>;
pub type RationalSubspace = Subspace<Rationals>;
pub type ModularSubspace = Subspace<PrimeField>;
pub type RationalBraiding = BraidedSpace<Rationals>;
pub type ModularBraiding = BraidedSpace<PrimeField>;
pub type RationalQuotient = GradedQuotient<Rationals>;
pub type ModularQuotient = GradedQuotient<PrimeField>;
