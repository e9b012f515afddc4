use serde::Serialize;

use crate::linalg::Scalar;

/// One failed instance of an identity checked on basis elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: &'static str,
    /// Basis indices the identity was evaluated on, in the order they appear in the law.
    pub indices: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

pub(crate) fn check(
    out: &mut Vec<Violation>,
    law: &'static str,
    indices: &[usize],
    lhs: Vec<Scalar>,
    rhs: Vec<Scalar>,
) {
    if lhs != rhs {
        out.push(Violation {
            law,
            indices: indices.to_vec(),
            lhs,
            rhs,
        });
    }
}
