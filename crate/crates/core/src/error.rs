use thiserror::Error;

use crate::algebra::AxiomReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input tensors or matrices have inconsistent dimensions.
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("algebra fails its axioms ({} violation(s))", .0.violation_count())]
    InvalidAlgebra(Box<AxiomReport>),

    #[error("not a subspace: {sub_dim}-dimensional space is not contained in the {super_dim}-dimensional one")]
    NotASubspace { sub_dim: usize, super_dim: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("coefficient module violates {law} on {count} basis tuple(s)")]
    CoefficientAxioms { law: String, count: usize },

    #[error("degree {degree} outside the computed range {min}..={max}")]
    DegreeOutOfRange { degree: i64, min: i64, max: i64 },

    #[error("subspaces are not stable under the differential in degree {degree}")]
    NotStable { degree: i64 },

    /// `d∘d ≠ 0`; only reachable through a construction bug or an inconsistent identity.
    #[error("differential squares to a nonzero map at degree {degree}")]
    BoundarySquareNonzero { degree: i64 },

    #[error("chain-level identity failed: {0}")]
    IdentityFailure(String),

    #[error("decomposition failed: {0}")]
    Decomposition(String),
}

impl Error {
    /// True for failures of identities that should hold for every valid
    /// input. These indicate a bug or a genuine counterexample, never bad input.
    pub fn is_invariant_failure(&self) -> bool {
        matches!(
            self,
            Error::BoundarySquareNonzero { .. }
                | Error::IdentityFailure(_)
                | Error::NotStable { .. }
                | Error::Decomposition(_)
        )
    }
}
