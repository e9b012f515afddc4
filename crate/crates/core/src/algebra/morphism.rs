use serde::Serialize;

use super::HomAlgebra;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::violation::{check, Violation};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub multiplicativity: Vec<Violation>,
    pub twist: Vec<Violation>,
}

impl MorphismReport {
    pub fn is_morphism(&self) -> bool {
        self.multiplicativity.is_empty() && self.twist.is_empty()
    }

    pub fn violation_count(&self) -> usize {
        self.multiplicativity.len() + self.twist.len()
    }
}

/// Checks `f(xy) = f(x)f(y)` and `f∘α_source = α_target∘f` on the basis.
pub fn validate_morphism(source: &HomAlgebra, target: &HomAlgebra, f: &Matrix) -> Result<MorphismReport> {
    if f.shape() != (target.dim(), source.dim()) {
        return Err(Error::Shape(format!(
            "morphism matrix is {:?}, expected ({}, {})",
            f.shape(),
            target.dim(),
            source.dim()
        )));
    }
    let d = source.dim();
    let images: Vec<_> = (0..d).map(|i| f.column(i)).collect();
    let mut report = MorphismReport::default();
    for x in 0..d {
        for y in 0..d {
            check(
                &mut report.multiplicativity,
                "f(xy) = f(x)f(y)",
                &[x, y],
                f.apply(source.product(x, y)),
                target.mul(&images[x], &images[y]),
            );
        }
        check(
            &mut report.twist,
            "f(α(x)) = α(f(x))",
            &[x],
            f.apply(&source.alpha().column(x)),
            target.apply_alpha(&images[x]),
        );
    }
    Ok(report)
}

/// A validated morphism of Hom-associative algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: HomAlgebra,
    target: HomAlgebra,
    matrix: Matrix,
}

impl AlgebraMorphism {
    pub fn new(source: HomAlgebra, target: HomAlgebra, matrix: Matrix) -> Result<Self> {
        let report = validate_morphism(&source, &target, &matrix)?;
        if !report.is_morphism() {
            return Err(Error::Precondition(format!(
                "not a morphism of Hom-associative algebras ({} violation(s))",
                report.violation_count()
            )));
        }
        Ok(AlgebraMorphism { source, target, matrix })
    }

    pub fn identity(a: &HomAlgebra) -> Self {
        AlgebraMorphism {
            source: a.clone(),
            target: a.clone(),
            matrix: Matrix::identity(a.dim()),
        }
    }

    pub fn source(&self) -> &HomAlgebra {
        &self.source
    }

    pub fn target(&self) -> &HomAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn identity_and_twist_are_morphisms() {
        for a in corpus::all() {
            let id = validate_morphism(&a, &a, &Matrix::identity(a.dim())).unwrap();
            assert!(id.is_morphism());
            // α is multiplicative and commutes with itself.
            let tw = validate_morphism(&a, &a, a.alpha()).unwrap();
            assert!(tw.is_morphism(), "{}", a.name());
        }
    }

    #[test]
    fn non_multiplicative_matrix_is_rejected() {
        let a = corpus::two_dim_example();
        let f = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
        let r = validate_morphism(&a, &a, &f).unwrap();
        assert!(!r.is_morphism());
        assert!(!r.multiplicativity.is_empty());
        assert!(AlgebraMorphism::new(a.clone(), a, f).is_err());
    }

    #[test]
    fn shape_mismatch() {
        let a = corpus::two_dim_example();
        assert!(matches!(
            validate_morphism(&a, &a, &Matrix::identity(3)),
            Err(Error::Shape(_))
        ));
    }
}
