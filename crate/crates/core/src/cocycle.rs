//! Traces, cyclic cocycle checks, and the cyclic 1-cocycle `tr(a·ρ(b))`
//! built from a trace and a derivation.

use serde::{Deserialize, Serialize};

use crate::algebra::HomAlgebra;
use crate::coefficients::regular_bimodule;
use crate::complexes::Term;
use crate::error::{Error, Result};
use crate::hochschild::{cyclic_t, hochschild_b};
use crate::linalg::{solve_homogeneous, Matrix, Scalar, Subspace};
use crate::tensor;
use crate::violation::{check, Violation};

/// A linear functional on `A^{⊗(n+1)}`, in the dual of the tensor basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Functional {
    pub degree: usize,
    pub coordinates: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

impl Functional {
    pub fn new(a: &HomAlgebra, degree: usize, coordinates: Vec<Scalar>) -> Result<Functional> {
        let dim = tensor::power(a.dim(), degree + 1);
        if coordinates.len() != dim {
            return Err(Error::Shape(format!(
                "a degree-{degree} functional needs {dim} coordinates, got {}",
                coordinates.len()
            )));
        }
        let labels = (0..dim)
            .map(|i| tensor::label(i, a.basis_names(), degree + 1))
            .collect();
        Ok(Functional {
            degree,
            coordinates,
            labels,
        })
    }

    pub fn zero(a: &HomAlgebra, degree: usize) -> Functional {
        let dim = tensor::power(a.dim(), degree + 1);
        Functional::new(a, degree, vec![Scalar::zero(); dim]).expect("shape matches")
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Scalar::is_zero)
    }

    /// `φ(x_0 ⊗ ⋯ ⊗ x_n)` on arbitrary vectors.
    pub fn evaluate(&self, a: &HomAlgebra, args: &[Vec<Scalar>]) -> Scalar {
        let sparse: Vec<tensor::Sparse> = args.iter().map(|v| tensor::sparse(v)).collect();
        let refs: Vec<&tensor::Sparse> = sparse.iter().collect();
        tensor::expand(&refs, a.dim())
            .into_iter()
            .map(|(i, c)| &c * &self.coordinates[i])
            .sum()
    }
}

/// Traces `φ(xy) = φ(yx)` as a subspace of `A*`.
pub fn trace_space(a: &HomAlgebra) -> Subspace {
    let d = a.dim();
    let mut constraints = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let row: Vec<Scalar> = a
                .product(i, j)
                .iter()
                .zip(a.product(j, i))
                .map(|(x, y)| x - y)
                .collect();
            if row.iter().any(|x| !x.is_zero()) {
                constraints.push(row);
            }
        }
    }
    solve_homogeneous(d, &constraints)
}

/// Outcome of [`is_cyclic_cocycle`]: nonzero values of `bφ` and of `(Id − t)ᵀφ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CocycleCheck {
    pub degree: usize,
    pub coboundary_residuals: Vec<Term>,
    pub cyclicity_residuals: Vec<Term>,
}

impl CocycleCheck {
    pub fn is_cocycle(&self) -> bool {
        self.coboundary_residuals.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclicity_residuals.is_empty()
    }

    pub fn holds(&self) -> bool {
        self.is_cocycle() && self.is_cyclic()
    }
}

fn residuals(a: &HomAlgebra, values: Vec<Scalar>, slots: usize) -> Vec<Term> {
    values
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, coefficient)| Term {
            label: tensor::label(i, a.basis_names(), slots),
            coefficient,
        })
        .collect()
}

/// Checks `φ∘b = 0` on `A^{⊗(n+2)}` and `φ∘(Id − t) = 0` on `A^{⊗(n+1)}`.
pub fn is_cyclic_cocycle(a: &HomAlgebra, phi: &Functional) -> Result<CocycleCheck> {
    let n = phi.degree;
    let dim = tensor::power(a.dim(), n + 1);
    if phi.coordinates.len() != dim {
        return Err(Error::Shape(format!("degree-{n} functional needs {dim} coordinates")));
    }
    let row = Matrix::from_rows(vec![phi.coordinates.clone()]);
    let b = hochschild_b(&regular_bimodule(a), n + 1);
    let one_minus_t = &Matrix::identity(dim) - &cyclic_t(a, n);
    Ok(CocycleCheck {
        degree: n,
        coboundary_residuals: residuals(a, row.matmul(&b).row(0).to_vec(), n + 2),
        cyclicity_residuals: residuals(a, row.matmul(&one_minus_t).row(0).to_vec(), n + 1),
    })
}

/// Violations of `ρ(ab) = ρ(a)b + aρ(b)` and of `αρ = ρα = ρ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivationReport {
    pub leibniz: Vec<Violation>,
    pub twist: Vec<Violation>,
}

impl DerivationReport {
    pub fn is_valid(&self) -> bool {
        self.leibniz.is_empty() && self.twist.is_empty()
    }
}

pub fn derivation_report(a: &HomAlgebra, rho: &Matrix) -> Result<DerivationReport> {
    let d = a.dim();
    if rho.shape() != (d, d) {
        return Err(Error::Shape(format!("ρ must be {d}×{d}")));
    }
    let mut report = DerivationReport {
        leibniz: Vec::new(),
        twist: Vec::new(),
    };
    for i in 0..d {
        let ei = a.basis_vector(i);
        let r_i = rho.column(i);
        for j in 0..d {
            let ej = a.basis_vector(j);
            let lhs = rho.apply(a.product(i, j));
            let rhs: Vec<Scalar> = a
                .mul(&r_i, &ej)
                .iter()
                .zip(a.mul(&ei, &rho.column(j)))
                .map(|(x, y)| x + &y)
                .collect();
            check(&mut report.leibniz, "ρ(ab) = ρ(a)b + aρ(b)", &[i, j], lhs, rhs);
        }
        check(&mut report.twist, "αρ = ρ", &[i], a.alpha().apply(&r_i), r_i.clone());
        check(&mut report.twist, "ρα = ρ", &[i], rho.apply(&a.alpha().column(i)), r_i);
    }
    Ok(report)
}

/// A linear map `ρ` with `ρ(ab) = ρ(a)b + aρ(b)` and `αρ = ρα = ρ`. The
/// product rule is the plain one, with no `α` inserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedDerivation {
    matrix: Matrix,
}

impl TwistedDerivation {
    pub fn new(a: &HomAlgebra, rho: Matrix) -> Result<TwistedDerivation> {
        let report = derivation_report(a, &rho)?;
        if let Some(v) = report.leibniz.first().or(report.twist.first()) {
            return Err(Error::Precondition(format!(
                "not a twisted derivation: {} fails on {:?} ({} violations)",
                v.law,
                v.indices,
                report.leibniz.len() + report.twist.len()
            )));
        }
        Ok(TwistedDerivation { matrix: rho })
    }

    pub fn zero(a: &HomAlgebra) -> TwistedDerivation {
        TwistedDerivation {
            matrix: Matrix::zeros(a.dim(), a.dim()),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }
}

/// All twisted derivations, as a basis of `d×d` matrices.
pub fn twisted_derivations(a: &HomAlgebra) -> Vec<Matrix> {
    let d = a.dim();
    // Unknown ρ[(r, c)] sits at coordinate r·d + c.
    let mut constraints: Vec<Vec<Scalar>> = Vec::new();
    let unknown = |r: usize, c: usize| r * d + c;
    for i in 0..d {
        for j in 0..d {
            // ρ(e_i e_j) − ρ(e_i) e_j − e_i ρ(e_j), one row per output coordinate.
            for out in 0..d {
                let mut row = vec![Scalar::zero(); d * d];
                for (k, c) in a.product(i, j).iter().enumerate() {
                    row[unknown(out, k)] += c;
                }
                for m in 0..d {
                    row[unknown(m, i)] -= &a.product(m, j)[out];
                    row[unknown(m, j)] -= &a.product(i, m)[out];
                }
                constraints.push(row);
            }
        }
    }
    let alpha = a.alpha();
    for r in 0..d {
        for c in 0..d {
            // (αρ − ρ)[r, c] and (ρα − ρ)[r, c].
            let mut left = vec![Scalar::zero(); d * d];
            let mut right = vec![Scalar::zero(); d * d];
            for m in 0..d {
                left[unknown(m, c)] += &alpha[(r, m)];
                right[unknown(r, m)] += &alpha[(m, c)];
            }
            left[unknown(r, c)] -= &Scalar::one();
            right[unknown(r, c)] -= &Scalar::one();
            constraints.push(left);
            constraints.push(right);
        }
    }
    solve_homogeneous(d * d, &constraints)
        .basis()
        .iter()
        .map(|v| Matrix::from_rows(v.chunks(d).map(<[Scalar]>::to_vec).collect()))
        .collect()
}

/// `φ(a, b) = tr(a·ρ(b))`, checked to be a cyclic 1-cocycle.
pub fn derivation_cocycle(a: &HomAlgebra, rho: &TwistedDerivation, tr: &Functional) -> Result<Functional> {
    let d = a.dim();
    if tr.degree != 0 || tr.coordinates.len() != d {
        return Err(Error::Shape(format!(
            "tr must be a degree-0 functional with {d} coordinates"
        )));
    }
    let mut failures = Vec::new();
    if !trace_space(a).contains(&tr.coordinates) {
        failures.push("tr(ab) = tr(ba) fails".to_string());
    }
    let tr_rho = Matrix::from_rows(vec![tr.coordinates.clone()]).matmul(rho.matrix());
    let bad: Vec<&str> = (0..d)
        .filter(|&i| !tr_rho[(0, i)].is_zero())
        .map(|i| a.basis_names()[i].as_str())
        .collect();
    if !bad.is_empty() {
        failures.push(format!("tr(ρ(a)) ≠ 0 for a = {}", bad.join(", ")));
    }
    if !failures.is_empty() {
        return Err(Error::Precondition(failures.join("; ")));
    }
    let mut coords = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let value = a.mul(&a.basis_vector(i), &rho.matrix().column(j));
            coords.push(tr.coordinates.iter().zip(&value).map(|(t, v)| t * v).sum());
        }
    }
    let phi = Functional::new(a, 1, coords)?;
    let check = is_cyclic_cocycle(a, &phi)?;
    if !check.holds() {
        return Err(Error::IdentityFailure(format!(
            "tr(a·ρ(b)) is not a cyclic 1-cocycle: {} coboundary and {} cyclicity residuals",
            check.coboundary_residuals.len(),
            check.cyclicity_residuals.len()
        )));
    }
    Ok(phi)
}
