//! Maps induced by morphisms, and the comparison `ξ: φ ↦ φ∘α^{⊗(n+1)}`.

use serde::Serialize;

use super::{cyclic_cochains, lambda_relations};
use crate::algebra::{validate_morphism, yau_twist, AlgebraMorphism, HomAlgebra};
use crate::coefficients::{dualize_bimodule, regular_bimodule};
use crate::complexes::{induced_map, quotient_complex, sub_complex, ChainComplex};
use crate::error::{Error, Result};
use crate::hochschild::{build_hochschild_cohomology_complex, build_hochschild_homology_complex};
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theory {
    #[serde(rename = "HH")]
    Hochschild,
    #[serde(rename = "HC")]
    Cyclic,
}

/// `f^{⊗(n+1)}` on `A^{⊗(n+1)}`.
pub fn tensor_power_map(f: &Matrix, n: usize) -> Matrix {
    f.kron_power(n + 1)
}

fn lambda_quotient(a: &HomAlgebra, top: usize) -> Result<(ChainComplex, Vec<Subspace>)> {
    let c = build_hochschild_homology_complex(&regular_bimodule(a), top)?;
    let subs: Vec<Subspace> = (0..=top + 1).map(|n| lambda_relations(a, n)).collect();
    Ok((quotient_complex(&c, &subs)?, subs))
}

/// Matrix of `F^{⊗(k+1)}` between quotient bases `C^λ_k(A) → C^λ_k(B)`.
fn on_quotients(m: &Matrix, src: &Subspace, tgt: &Subspace) -> Result<Matrix> {
    // F commutes with t, so it maps im(Id − t) into im(Id − t); check it anyway.
    if !src.map(m).is_subspace_of(tgt) {
        return Err(Error::IdentityFailure(
            "tensor power does not preserve im(Id − t)".into(),
        ));
    }
    let free = src.non_pivots();
    let columns: Vec<_> = free
        .iter()
        .map(|&j| crate::complexes::quotient_class(tgt, &m.column(j)))
        .collect();
    Ok(Matrix::from_columns(tgt.ambient_dim() - tgt.dim(), &columns))
}

/// Map `HH_n(A) → HH_n(B)` or `HC_n(A) → HC_n(B)` induced by a morphism, in
/// the representative bases the reports use.
pub fn induced_map_on_homology(f: &AlgebraMorphism, theory: Theory, n: usize) -> Result<Matrix> {
    let report = validate_morphism(f.source(), f.target(), f.matrix())?;
    if !report.is_morphism() {
        return Err(Error::Precondition(format!(
            "not a morphism: {} violations",
            report.violation_count()
        )));
    }
    let top = n + 1;
    match theory {
        Theory::Hochschild => {
            let src = build_hochschild_homology_complex(&regular_bimodule(f.source()), top)?;
            let tgt = build_hochschild_homology_complex(&regular_bimodule(f.target()), top)?;
            let range = 0..=top as i64 + 1;
            induced_map(
                &src,
                &tgt,
                |k| match range.contains(&k) {
                    true => tensor_power_map(f.matrix(), k as usize),
                    false => Matrix::zeros(tgt.dim(k), src.dim(k)),
                },
                n as i64,
            )
        }
        Theory::Cyclic => {
            let (src, src_subs) = lambda_quotient(f.source(), top)?;
            let (tgt, tgt_subs) = lambda_quotient(f.target(), top)?;
            let maps: Result<Vec<Matrix>> = (0..=top + 1)
                .map(|k| on_quotients(&tensor_power_map(f.matrix(), k), &src_subs[k], &tgt_subs[k]))
                .collect();
            let maps = maps?;
            induced_map(
                &src,
                &tgt,
                |k| match usize::try_from(k).ok().and_then(|k| maps.get(k)) {
                    Some(m) => m.clone(),
                    None => Matrix::zeros(tgt.dim(k), src.dim(k)),
                },
                n as i64,
            )
        }
    }
}

/// `ξ` in one degree, together with its checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XiMap {
    pub degree: usize,
    /// `ξ` on all cochains `C^n(A, A*) → C^n(A_α, A_α*)`.
    pub full: Matrix,
    /// `ξ` restricted to cyclic cochains, in their RREF bases.
    pub on_cyclic: Matrix,
    /// Map induced on `HC^n`, in the representative bases.
    pub on_cohomology: Matrix,
}

/// `ξ: C^n_λ(A) → C^n_λ(A_α)`, `φ ↦ φ∘α^{⊗(n+1)}`, for an associative `A` and
/// an idempotent endomorphism `α`. Verifies that `ξ` commutes with the
/// coboundaries and preserves cyclicity.
pub fn xi_map(assoc: &HomAlgebra, alpha: &Matrix, n: usize) -> Result<XiMap> {
    if alpha.matmul(alpha) != *alpha {
        return Err(Error::Precondition("α must satisfy α² = α".into()));
    }
    let twisted = yau_twist(assoc, alpha)?;
    let top = n + 1;
    let xi = |k: usize| tensor_power_map(alpha, k).transpose();
    let cochains = |a: &HomAlgebra| -> Result<ChainComplex> {
        build_hochschild_cohomology_complex(&dualize_bimodule(&regular_bimodule(a))?, top)
    };
    let (src, tgt) = (cochains(assoc)?, cochains(&twisted)?);
    for k in 0..top {
        let lhs = xi(k + 1).matmul(&src.differential(k as i64));
        let rhs = tgt.differential(k as i64).matmul(&xi(k));
        if lhs != rhs {
            return Err(Error::IdentityFailure(format!(
                "ξ does not commute with b in degree {k}"
            )));
        }
    }
    // t does not depend on the product, so both sides share the cyclic cochains.
    let subs: Vec<Subspace> = (0..=top + 1).map(|k| cyclic_cochains(assoc, k)).collect();
    for (k, s) in subs.iter().enumerate() {
        if !s.map(&xi(k)).is_subspace_of(s) {
            return Err(Error::IdentityFailure(format!(
                "ξ does not preserve cyclicity in degree {k}"
            )));
        }
    }
    let restricted = |k: usize| -> Matrix {
        let s = &subs[k];
        let cols: Vec<_> = s
            .basis()
            .iter()
            .map(|v| s.coordinates(&xi(k).apply(v)).expect("cyclicity was checked"))
            .collect();
        Matrix::from_columns(s.dim(), &cols)
    };
    let (src_l, tgt_l) = (sub_complex(&src, &subs)?, sub_complex(&tgt, &subs)?);
    let on_cohomology = induced_map(
        &src_l,
        &tgt_l,
        |k| match usize::try_from(k) {
            Ok(k) if k <= top + 1 => restricted(k),
            _ => Matrix::zeros(0, 0),
        },
        n as i64,
    )?;
    Ok(XiMap {
        degree: n,
        full: xi(n),
        on_cyclic: restricted(n),
        on_cohomology,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_sum;
    use crate::corpus;

    #[test]
    fn identity_induces_identity() {
        for a in [corpus::two_dim_example(), corpus::dual_numbers(), corpus::k1_plus_k2()] {
            let id = AlgebraMorphism::identity(&a);
            for n in 0..=3 {
                for theory in [Theory::Hochschild, Theory::Cyclic] {
                    let m = induced_map_on_homology(&id, theory, n).unwrap();
                    assert!(m.is_identity(), "{} {theory:?} n={n}", a.name());
                }
            }
        }
    }

    #[test]
    fn isomorphism_induces_isomorphism() {
        // Swap the summands of k ⊕ k2.
        let a = direct_sum(&corpus::ground_field(), &corpus::k2());
        let b = direct_sum(&corpus::k2(), &corpus::ground_field());
        let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let f = AlgebraMorphism::new(a.clone(), b.clone(), swap.clone()).unwrap();
        let g = AlgebraMorphism::new(b, a, swap).unwrap();
        for n in 0..=3 {
            for theory in [Theory::Hochschild, Theory::Cyclic] {
                let fm = induced_map_on_homology(&f, theory, n).unwrap();
                let gm = induced_map_on_homology(&g, theory, n).unwrap();
                assert!(gm.matmul(&fm).is_identity(), "{theory:?} n={n}");
                assert!(fm.matmul(&gm).is_identity(), "{theory:?} n={n}");
            }
        }
    }

    #[test]
    fn twist_is_a_chain_map_on_two_dim_example() {
        let a = corpus::two_dim_example();
        let alpha = AlgebraMorphism::new(a.clone(), a.clone(), a.alpha().clone()).unwrap();
        for n in 0..=3 {
            let m = induced_map_on_homology(&alpha, Theory::Hochschild, n).unwrap();
            assert!(m.is_square());
        }
    }

    #[test]
    fn non_morphism_is_rejected() {
        let a = corpus::two_dim_example();
        let f = AlgebraMorphism::new(a.clone(), a.clone(), Matrix::identity(2)).unwrap();
        assert!(induced_map_on_homology(&f, Theory::Hochschild, 1).is_ok());
        assert!(AlgebraMorphism::new(a.clone(), a, Matrix::from_ints(&[&[2, 0], &[0, 2]])).is_err());
    }

    #[test]
    fn xi_of_identity_is_identity() {
        let a = corpus::k_times_k();
        for n in 0..=2 {
            let x = xi_map(&a, &Matrix::identity(2), n).unwrap();
            assert!(x.full.is_identity());
            assert!(x.on_cyclic.is_identity());
            assert!(x.on_cohomology.is_identity());
        }
    }

    #[test]
    fn xi_for_projection() {
        let a = corpus::k_times_k();
        let proj = Matrix::from_ints(&[&[1, 0], &[0, 0]]);
        for n in 0..=2 {
            let x = xi_map(&a, &proj, n).unwrap();
            // φ_α(e_I) = φ(e_I) when every slot is e1, and 0 otherwise.
            let dim = 1usize << (n + 1);
            for i in 0..dim {
                for j in 0..dim {
                    let expected = i == 0 && j == 0;
                    assert_eq!(x.full[(i, j)].is_one(), expected);
                }
            }
        }
        assert!(xi_map(&a, &Matrix::from_ints(&[&[0, 1], &[1, 0]]), 1).is_err());
    }
}
