//! Hom-associative algebras given by structure constants.
//!
//! `mu[i][j][k]` is the coefficient of `e_k` in `e_i · e_j`, and column `j`
//! of `alpha` holds the coordinates of `α(e_j)`. Every [`HomAlgebra`] value
//! has passed validation: it is Hom-associative and multiplicative on all
//! basis triples and pairs.

mod construct;
mod morphism;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{solve_affine, Matrix, Scalar, Subspace};
use crate::violation::{check, Violation};

pub use construct::{
    direct_sum, idempotent_twist_decompose, unital_decompose, unitalize, yau_twist, TwistDecomposition,
    UnitalDecomposition, Unitalization,
};
pub use morphism::{validate_morphism, AlgebraMorphism, MorphismReport};

/// Raw algebra data as read from JSON, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDef {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub basis: Vec<String>,
    pub mul: Vec<Vec<Vec<Scalar>>>,
    pub alpha: Matrix,
}

/// Every failing basis instance of the two defining axioms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub hom_associativity: Vec<Violation>,
    pub multiplicativity: Vec<Violation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.hom_associativity.is_empty() && self.multiplicativity.is_empty()
    }

    pub fn violation_count(&self) -> usize {
        self.hom_associativity.len() + self.multiplicativity.len()
    }
}

/// Violations of `α(x)y = xα(y) = α(xy)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CentroidReport {
    pub violations: Vec<Violation>,
}

impl CentroidReport {
    pub fn is_centroid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomAlgebra {
    name: String,
    basis: Vec<String>,
    /// `products[i * d + j]` is `e_i · e_j`.
    products: Vec<Vec<Scalar>>,
    alpha: Matrix,
}

fn default_basis(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("e{i}")).collect()
}

fn unit_vector(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

impl HomAlgebra {
    /// Builds and validates an algebra from a product tensor and twist.
    pub fn new(name: impl Into<String>, mul: Vec<Vec<Vec<Scalar>>>, alpha: Matrix) -> Result<HomAlgebra> {
        let dim = mul.len();
        HomAlgebra::from_def(&AlgebraDef {
            name: name.into(),
            dim,
            basis: default_basis(dim),
            mul,
            alpha,
        })
    }

    /// Builds an algebra from a product function `(i, j) ↦ e_i e_j`.
    pub fn from_fn(
        name: impl Into<String>,
        dim: usize,
        product: impl Fn(usize, usize) -> Vec<Scalar>,
        alpha: Matrix,
    ) -> Result<HomAlgebra> {
        let mul = (0..dim).map(|i| (0..dim).map(|j| product(i, j)).collect()).collect();
        HomAlgebra::new(name, mul, alpha)
    }

    pub fn from_def(def: &AlgebraDef) -> Result<HomAlgebra> {
        let a = HomAlgebra::unchecked(def)?;
        let report = a.axiom_report();
        if !report.is_valid() {
            return Err(Error::InvalidAlgebra(Box::new(report)));
        }
        Ok(a)
    }

    /// Shape-checks `def` without checking the axioms.
    fn unchecked(def: &AlgebraDef) -> Result<HomAlgebra> {
        let d = def.dim;
        if def.mul.len() != d || def.mul.iter().any(|row| row.len() != d) {
            return Err(Error::Shape(format!("mul must be {d}×{d}×{d}")));
        }
        if def.mul.iter().flatten().any(|v| v.len() != d) {
            return Err(Error::Shape(format!("mul must be {d}×{d}×{d}")));
        }
        if def.alpha.shape() != (d, d) {
            return Err(Error::Shape(format!(
                "alpha is {:?}, expected ({d}, {d})",
                def.alpha.shape()
            )));
        }
        let basis = if def.basis.is_empty() {
            default_basis(d)
        } else if def.basis.len() == d {
            def.basis.clone()
        } else {
            return Err(Error::Shape(format!(
                "{} basis names for dimension {d}",
                def.basis.len()
            )));
        };
        Ok(HomAlgebra {
            name: def.name.clone(),
            basis,
            products: def.mul.iter().flatten().cloned().collect(),
            alpha: def.alpha.clone(),
        })
    }

    pub fn to_def(&self) -> AlgebraDef {
        let d = self.dim();
        AlgebraDef {
            name: self.name.clone(),
            dim: d,
            basis: self.basis.clone(),
            mul: (0..d)
                .map(|i| (0..d).map(|j| self.product(i, j).to_vec()).collect())
                .collect(),
            alpha: self.alpha.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim());
        self.basis = names;
        self
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    /// `e_i · e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.products[i * self.dim() + j]
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    /// Bilinear product of coordinate vectors.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = vec![Scalar::zero(); d];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (o, c) in out.iter_mut().zip(self.product(i, j)) {
                    if !c.is_zero() {
                        *o += &ab * c;
                    }
                }
            }
        }
        out
    }

    pub fn apply_alpha(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.alpha.apply(x)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        unit_vector(self.dim(), i)
    }

    /// Matrix of `x ↦ e_i x`.
    pub fn left_mul_matrix(&self, i: usize) -> Matrix {
        let d = self.dim();
        Matrix::from_columns(d, &(0..d).map(|j| self.product(i, j).to_vec()).collect::<Vec<_>>())
    }

    /// Matrix of `x ↦ x e_j`.
    pub fn right_mul_matrix(&self, j: usize) -> Matrix {
        let d = self.dim();
        Matrix::from_columns(d, &(0..d).map(|i| self.product(i, j).to_vec()).collect::<Vec<_>>())
    }

    pub fn axiom_report(&self) -> AxiomReport {
        let d = self.dim();
        let alpha_e: Vec<Vec<Scalar>> = (0..d).map(|i| self.alpha.column(i)).collect();
        let mut report = AxiomReport::default();
        for a in 0..d {
            for b in 0..d {
                let ab = self.product(a, b);
                for c in 0..d {
                    let lhs = self.mul(&alpha_e[a], self.product(b, c));
                    let rhs = self.mul(ab, &alpha_e[c]);
                    check(
                        &mut report.hom_associativity,
                        "α(a)(bc) = (ab)α(c)",
                        &[a, b, c],
                        lhs,
                        rhs,
                    );
                }
                let lhs = self.apply_alpha(ab);
                let rhs = self.mul(&alpha_e[a], &alpha_e[b]);
                check(&mut report.multiplicativity, "α(ab) = α(a)α(b)", &[a, b], lhs, rhs);
            }
        }
        report
    }

    pub fn is_alpha_identity(&self) -> bool {
        self.alpha.is_identity()
    }

    pub fn is_alpha_idempotent(&self) -> bool {
        self.alpha.matmul(&self.alpha) == self.alpha
    }

    /// Plain associativity `(ab)c = a(bc)` of the underlying product.
    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|a| {
            (0..d).all(|b| {
                (0..d).all(|c| {
                    self.mul(self.product(a, b), &self.basis_vector(c))
                        == self.mul(&self.basis_vector(a), self.product(b, c))
                })
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Span of all commutators `e_i e_j − e_j e_i`.
    pub fn commutator_space(&self) -> Subspace {
        let d = self.dim();
        let vs: Vec<Vec<Scalar>> = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| {
                self.product(i, j)
                    .iter()
                    .zip(self.product(j, i))
                    .map(|(x, y)| x - y)
                    .collect()
            })
            .collect();
        Subspace::span(d, &vs)
    }

    /// The unit element, if the algebra has one.
    pub fn find_unit(&self) -> Option<Vec<Scalar>> {
        let d = self.dim();
        // Unknowns u_i; equations Σ_i u_i (e_i e_j)_k = δ_jk and Σ_i u_i (e_j e_i)_k = δ_jk.
        let mut rows = Vec::with_capacity(2 * d * d);
        let mut rhs = Vec::with_capacity(2 * d * d);
        for j in 0..d {
            for k in 0..d {
                let target = if j == k { Scalar::one() } else { Scalar::zero() };
                rows.push((0..d).map(|i| self.product(i, j)[k].clone()).collect());
                rhs.push(target.clone());
                rows.push((0..d).map(|i| self.product(j, i)[k].clone()).collect());
                rhs.push(target);
            }
        }
        let (u, free) = solve_affine(&Matrix::from_rows_with_cols(d, rows), &rhs)?;
        // Two units u, u' give u = uu' = u', so a consistent system has a unique solution.
        assert_eq!(free.dim(), 0, "unit equations solvable but not uniquely");
        Some(u)
    }

    pub fn centroid_report(&self) -> CentroidReport {
        let d = self.dim();
        let mut out = CentroidReport::default();
        for x in 0..d {
            let ax = self.alpha.column(x);
            let ex = self.basis_vector(x);
            for y in 0..d {
                let ay = self.alpha.column(y);
                let ey = self.basis_vector(y);
                let lhs = self.mul(&ax, &ey);
                check(
                    &mut out.violations,
                    "α(x)y = xα(y)",
                    &[x, y],
                    lhs.clone(),
                    self.mul(&ex, &ay),
                );
                check(
                    &mut out.violations,
                    "α(x)y = α(xy)",
                    &[x, y],
                    lhs,
                    self.apply_alpha(self.product(x, y)),
                );
            }
        }
        out
    }

    pub fn is_centroid_element(&self) -> bool {
        self.centroid_report().is_centroid()
    }

    /// Restricts product and twist to a subspace closed under both.
    pub(crate) fn restrict(&self, name: &str, sub: &Subspace) -> Result<HomAlgebra> {
        let coords = |v: &[Scalar], what: &str| {
            sub.coordinates(v)
                .ok_or_else(|| Error::Decomposition(format!("{name}: subspace not closed under {what}")))
        };
        let b = sub.basis();
        let mut mul = Vec::with_capacity(b.len());
        for x in b {
            let mut row = Vec::with_capacity(b.len());
            for y in b {
                row.push(coords(&self.mul(x, y), "the product")?);
            }
            mul.push(row);
        }
        let alpha_cols = b
            .iter()
            .map(|x| coords(&self.apply_alpha(x), "α"))
            .collect::<Result<Vec<_>>>()?;
        HomAlgebra::new(name, mul, Matrix::from_columns(b.len(), &alpha_cols))
    }
}

/// Validates raw data, returning the algebra or a report of every failing instance.
pub fn validate(def: &AlgebraDef) -> Result<HomAlgebra> {
    HomAlgebra::from_def(def)
}

/// Shape-checks `def` and evaluates both axioms on all basis elements.
pub fn check_axioms(def: &AlgebraDef) -> Result<AxiomReport> {
    if def.dim == 0 {
        return Err(Error::Shape("dimension must be at least 1".into()));
    }
    Ok(HomAlgebra::unchecked(def)?.axiom_report())
}
