//! Constructions on Hom-associative algebras: Yau twists, direct sums,
//! the unital and idempotent-twist splittings, and unitalization.

use super::{validate_morphism, HomAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{image, kernel, rank, Matrix, Scalar, Subspace};

/// `A_α`: product `α∘μ` and twist `α`, for associative `A` (twist `Id`) and an
/// algebra endomorphism `α`.
pub fn yau_twist(assoc: &HomAlgebra, endo: &Matrix) -> Result<HomAlgebra> {
    let d = assoc.dim();
    if !assoc.is_alpha_identity() {
        return Err(Error::Precondition(format!(
            "{} must have α = Id to be twisted",
            assoc.name()
        )));
    }
    if endo.shape() != (d, d) {
        return Err(Error::Shape(format!(
            "endomorphism is {:?}, expected ({d}, {d})",
            endo.shape()
        )));
    }
    let failures = validate_morphism(assoc, assoc, endo)?.multiplicativity.len();
    if failures > 0 {
        return Err(Error::Precondition(format!(
            "twisting map is not an algebra endomorphism ({failures} failing pair(s))"
        )));
    }
    let twisted = HomAlgebra::from_fn(
        format!("{}_twisted", assoc.name()),
        d,
        |i, j| endo.apply(assoc.product(i, j)),
        endo.clone(),
    );
    match twisted {
        Ok(a) => Ok(a.with_basis_names(assoc.basis_names().to_vec())),
        Err(Error::InvalidAlgebra(r)) => Err(Error::IdentityFailure(format!(
            "Yau twist failed validation with {} violation(s)",
            r.violation_count()
        ))),
        Err(e) => Err(e),
    }
}

/// Componentwise product and twist on `A ⊕ B`; `A`'s basis comes first.
pub fn direct_sum(a: &HomAlgebra, b: &HomAlgebra) -> HomAlgebra {
    let (da, db) = (a.dim(), b.dim());
    let n = da + db;
    let product = |i: usize, j: usize| {
        let mut v = vec![Scalar::zero(); n];
        if i < da && j < da {
            v[..da].clone_from_slice(a.product(i, j));
        } else if i >= da && j >= da {
            v[da..].clone_from_slice(b.product(i - da, j - da));
        }
        v
    };
    let mut alpha = Matrix::zeros(n, n);
    alpha.set_block(0, 0, a.alpha());
    alpha.set_block(da, da, b.alpha());
    let sum = HomAlgebra::from_fn(format!("{}⊕{}", a.name(), b.name()), n, product, alpha)
        .expect("direct sum of valid algebras is valid");
    let mut names: Vec<String> = a.basis_names().to_vec();
    names.extend(b.basis_names().iter().cloned());
    let mut sorted = names.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() == n {
        sum.with_basis_names(names)
    } else {
        sum
    }
}

/// The splitting `A ≅ A₁ ⊕ A₂` of a unital multiplicative algebra along the
/// central idempotent `x = α(1)`.
#[derive(Debug, Clone)]
pub struct UnitalDecomposition {
    pub unit: Vec<Scalar>,
    pub idempotent: Vec<Scalar>,
    /// `A·x`: unital associative, twist `Id`.
    pub unital_part: HomAlgebra,
    /// `A·(1 − x)`: twist `0`.
    pub null_part: HomAlgebra,
    /// Columns: basis of `A₁` followed by basis of `A₂`, in `A`'s coordinates.
    pub change_of_basis: Matrix,
}

pub fn unital_decompose(a: &HomAlgebra) -> Result<UnitalDecomposition> {
    let unit = a
        .find_unit()
        .ok_or_else(|| Error::Precondition(format!("{} has no unit", a.name())))?;
    let x = a.apply_alpha(&unit);
    if a.mul(&x, &x) != x {
        return Err(Error::Decomposition("α(1) is not idempotent".into()));
    }
    let d = a.dim();
    if (0..d).any(|j| a.mul(&x, &a.basis_vector(j)) != a.mul(&a.basis_vector(j), &x)) {
        return Err(Error::Decomposition("α(1) is not central".into()));
    }
    let complement: Vec<Scalar> = unit.iter().zip(&x).map(|(u, x)| u - x).collect();
    let span_times = |y: &[Scalar]| {
        let vs: Vec<Vec<Scalar>> = (0..d).map(|j| a.mul(&a.basis_vector(j), y)).collect();
        Subspace::span(d, &vs)
    };
    let s1 = span_times(&x);
    let s2 = span_times(&complement);
    let a1 = a.restrict(&format!("{}_1", a.name()), &s1)?;
    let a2 = a.restrict(&format!("{}_2", a.name()), &s2)?;
    if !a1.is_associative() {
        return Err(Error::Decomposition("A·α(1) is not associative".into()));
    }
    let mut cols: Vec<Vec<Scalar>> = s1.basis().to_vec();
    cols.extend(s2.basis().iter().cloned());
    let change_of_basis = Matrix::from_columns(d, &cols);
    if rank(&change_of_basis) != d {
        return Err(Error::Decomposition("summands do not span A".into()));
    }
    Ok(UnitalDecomposition {
        unit,
        idempotent: x,
        unital_part: a1,
        null_part: a2,
        change_of_basis,
    })
}

/// `A = K ⊕ B` for a Yau twist with idempotent twist: `K = ker α` with zero
/// product and `B = im α` associative with twist `Id`.
#[derive(Debug, Clone)]
pub struct TwistDecomposition {
    pub kernel_part: HomAlgebra,
    pub image_part: HomAlgebra,
    pub change_of_basis: Matrix,
}

pub fn idempotent_twist_decompose(a: &HomAlgebra) -> Result<TwistDecomposition> {
    if !a.is_alpha_idempotent() {
        return Err(Error::Precondition("α² ≠ α".into()));
    }
    let d = a.dim();
    let k = kernel(a.alpha());
    let b = image(a.alpha());
    // In a twist x⋆y = α(xy) products land in im α, which meets ker α trivially.
    for kv in k.basis() {
        for j in 0..d {
            let e = a.basis_vector(j);
            if a.mul(kv, &e).iter().any(|c| !c.is_zero()) || a.mul(&e, kv).iter().any(|c| !c.is_zero()) {
                return Err(Error::Precondition(
                    "ker α is not annihilated by A; the product is not a twist α∘μ".into(),
                ));
            }
        }
    }
    let kernel_part = a.restrict(&format!("{}_ker", a.name()), &k)?;
    let image_part = a.restrict(&format!("{}_im", a.name()), &b)?;
    if !image_part.is_associative() || !image_part.is_alpha_identity() {
        return Err(Error::Decomposition("im α is not associative with twist Id".into()));
    }
    let mut cols: Vec<Vec<Scalar>> = k.basis().to_vec();
    cols.extend(b.basis().iter().cloned());
    Ok(TwistDecomposition {
        kernel_part,
        image_part,
        change_of_basis: Matrix::from_columns(d, &cols),
    })
}

/// Unital hull built on `k[α]/(α² − α) ⊕ A`.
#[derive(Debug, Clone)]
pub struct Unitalization {
    /// Basis `1, α, e_1, …, e_d`.
    pub algebra: HomAlgebra,
    /// `(d + 2) × d` inclusion of `A`.
    pub embedding: Matrix,
}

/// Embeds `A` (twist in the centroid, `α² = α`) into a unital multiplicative
/// algebra. The polynomial part is cut down to `k[α]/(α² − α)`, the smallest
/// quotient on which the extended twist stays multiplicative.
pub fn unitalize(a: &HomAlgebra) -> Result<Unitalization> {
    let report = a.centroid_report();
    if !report.is_centroid() {
        return Err(Error::Precondition(format!(
            "α is not in the centroid ({} violation(s))",
            report.violations.len()
        )));
    }
    if !a.is_alpha_idempotent() {
        return Err(Error::Precondition("α² ≠ α".into()));
    }
    let d = a.dim();
    let n = d + 2;
    let lift = |v: &[Scalar]| {
        let mut out = vec![Scalar::zero(); n];
        out[2..].clone_from_slice(v);
        out
    };
    let basis = |i: usize| {
        let mut out = vec![Scalar::zero(); n];
        out[i] = Scalar::one();
        out
    };
    let product = |i: usize, j: usize| match (i, j) {
        (0, j) => basis(j),
        (i, 0) => basis(i),
        (1, 1) => basis(1),
        (1, j) => lift(&a.alpha().column(j - 2)),
        (i, 1) => lift(&a.alpha().column(i - 2)),
        (i, j) => lift(a.product(i - 2, j - 2)),
    };
    let mut beta = Matrix::zeros(n, n);
    beta[(1, 0)] = Scalar::one();
    beta[(1, 1)] = Scalar::one();
    beta.set_block(2, 2, a.alpha());
    let algebra = match HomAlgebra::from_fn(format!("{}+", a.name()), n, product, beta) {
        Ok(b) => b,
        Err(Error::InvalidAlgebra(r)) => {
            return Err(Error::IdentityFailure(format!(
                "unitalization failed validation with {} violation(s)",
                r.violation_count()
            )))
        }
        Err(e) => return Err(e),
    };
    let mut names = vec!["1".to_string(), "α".to_string()];
    names.extend(a.basis_names().iter().cloned());
    let algebra = algebra.with_basis_names(names);
    if algebra.find_unit() != Some(basis(0)) {
        return Err(Error::IdentityFailure("unitalization has no unit".into()));
    }
    let mut embedding = Matrix::zeros(n, d);
    embedding.set_block(2, 0, &Matrix::identity(d));
    if !validate_morphism(a, &algebra, &embedding)?.is_morphism() {
        return Err(Error::IdentityFailure("A does not embed as a subalgebra".into()));
    }
    Ok(Unitalization { algebra, embedding })
}
