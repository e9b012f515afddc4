//! Exact Hochschild, cyclic and periodic cyclic (co)homology of
//! finite-dimensional multiplicative Hom-associative algebras over ℚ.

pub mod algebra;
pub mod cocycle;
pub mod coefficients;
pub mod complexes;
pub mod corpus;
pub mod cyclic;
pub mod error;
pub mod hochschild;
pub mod linalg;
pub mod tensor;
mod violation;

pub use algebra::{AlgebraDef, AlgebraMorphism, HomAlgebra};
pub use error::{Error, Result};
pub use linalg::{Matrix, Scalar, Subspace};
pub use violation::Violation;
