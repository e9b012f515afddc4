//! Exact dense linear algebra over ℚ.

mod echelon;
mod matrix;
pub mod scalar;
mod subspace;

pub use echelon::{rank, rref, Rref};
pub use matrix::Matrix;
pub use scalar::Scalar;
pub use subspace::{image, kernel, quotient_dim, solve_affine, solve_homogeneous, Subspace};
