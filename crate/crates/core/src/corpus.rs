//! Small algebras used throughout the tests, benchmarks and CLI.

use crate::algebra::{direct_sum, unitalize, yau_twist, HomAlgebra};
use crate::linalg::{Matrix, Scalar};

fn vec_of(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| Scalar::from(x)).collect()
}

fn named(a: HomAlgebra, names: &[&str]) -> HomAlgebra {
    a.with_basis_names(names.iter().map(|s| s.to_string()).collect())
}

/// Two-dimensional: `e1e1 = e1`, every other product `e2`; `α(e1) = e1 − e2`, `α(e2) = 0`.
pub fn two_dim_example() -> HomAlgebra {
    HomAlgebra::from_fn(
        "ex2",
        2,
        |i, j| {
            if i == 0 && j == 0 {
                vec_of(&[1, 0])
            } else {
                vec_of(&[0, 1])
            }
        },
        Matrix::from_ints(&[&[1, 0], &[-1, 0]]),
    )
    .expect("valid")
}

/// The ground field with twist `Id`.
pub fn ground_field() -> HomAlgebra {
    HomAlgebra::from_fn("k", 1, |_, _| vec_of(&[1]), Matrix::identity(1)).expect("valid")
}

/// `e·e = e` with twist `0`.
pub fn k2() -> HomAlgebra {
    HomAlgebra::from_fn("k2", 1, |_, _| vec_of(&[1]), Matrix::zeros(1, 1)).expect("valid")
}

pub fn k1_plus_k2() -> HomAlgebra {
    named(direct_sum(&ground_field(), &k2()).with_name("k1+k2"), &["u", "e"])
}

/// Diagonal 2×2 matrices, twist `Id`.
pub fn k_times_k() -> HomAlgebra {
    HomAlgebra::from_fn(
        "kxk",
        2,
        |i, j| {
            let mut v = vec_of(&[0, 0]);
            if i == j {
                v[i] = Scalar::one();
            }
            v
        },
        Matrix::identity(2),
    )
    .expect("valid")
}

/// Yau twist of `k × k` by the swap of its idempotents.
pub fn k_times_k_swap() -> HomAlgebra {
    yau_twist(&k_times_k(), &Matrix::from_ints(&[&[0, 1], &[1, 0]]))
        .expect("swap is an automorphism")
        .with_name("kxk_swap")
}

/// Yau twist of `k × k` by the projection onto the first factor.
pub fn k_times_k_projection() -> HomAlgebra {
    yau_twist(&k_times_k(), &Matrix::from_ints(&[&[1, 0], &[0, 0]]))
        .expect("projection is an endomorphism")
        .with_name("kxk_proj")
}

/// One-dimensional, zero product, twist `0`.
pub fn zero_algebra() -> HomAlgebra {
    HomAlgebra::from_fn("zero", 1, |_, _| vec_of(&[0]), Matrix::zeros(1, 1)).expect("valid")
}

/// Unital hull of [`zero_algebra`], three-dimensional.
pub fn zero_unitalized() -> HomAlgebra {
    unitalize(&zero_algebra())
        .expect("zero algebra satisfies the hypotheses")
        .algebra
        .with_name("zero+")
}

/// `k[x]/(x²)` on the basis `1, x`, twist `Id`.
pub fn dual_numbers() -> HomAlgebra {
    truncated_polynomial("dual", 2)
}

/// Yau twist of [`dual_numbers`] by `x ↦ 0`.
pub fn dual_numbers_killed() -> HomAlgebra {
    yau_twist(&dual_numbers(), &Matrix::from_ints(&[&[1, 0], &[0, 0]]))
        .expect("x ↦ 0 is an endomorphism")
        .with_name("dual_killed")
}

/// `k[x]/(x^n)` on the basis `1, x, …, x^{n−1}`, twist `Id`.
pub fn truncated_polynomial(name: &str, n: usize) -> HomAlgebra {
    let a = HomAlgebra::from_fn(
        name,
        n,
        |i, j| {
            let mut v = vec![Scalar::zero(); n];
            if i + j < n {
                v[i + j] = Scalar::one();
            }
            v
        },
        Matrix::identity(n),
    )
    .expect("valid");
    let names: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    a.with_basis_names(names)
}

/// `M₂(k)` on `E11, E12, E21, E22`, twist `Id`.
pub fn matrix_algebra() -> HomAlgebra {
    // E_ab E_cd = δ_bc E_ad, with E_ab at index 2a + b.
    let a = HomAlgebra::from_fn(
        "M2",
        4,
        |i, j| {
            let (a, b) = (i / 2, i % 2);
            let (c, d) = (j / 2, j % 2);
            let mut v = vec![Scalar::zero(); 4];
            if b == c {
                v[2 * a + d] = Scalar::one();
            }
            v
        },
        Matrix::identity(4),
    )
    .expect("valid");
    named(a, &["E11", "E12", "E21", "E22"])
}

/// Algebras of dimension at most three: cheap enough for full identity
/// suites up to degree five.
pub fn standard() -> Vec<HomAlgebra> {
    vec![
        two_dim_example(),
        ground_field(),
        k2(),
        k1_plus_k2(),
        k_times_k(),
        k_times_k_swap(),
        k_times_k_projection(),
        zero_algebra(),
        dual_numbers(),
        dual_numbers_killed(),
        zero_unitalized(),
    ]
}

/// [`standard`] plus the larger examples.
pub fn all() -> Vec<HomAlgebra> {
    let mut v = standard();
    v.push(truncated_polynomial("poly3", 3));
    v.push(matrix_algebra());
    v
}

/// Looks up a corpus algebra by its name.
pub fn by_name(name: &str) -> Option<HomAlgebra> {
    all().into_iter().find(|a| a.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_all_valid() {
        let all = all();
        let mut names: Vec<&str> = all.iter().map(HomAlgebra::name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all.len());
        for a in &all {
            assert!(a.axiom_report().is_valid(), "{}", a.name());
            assert_eq!(by_name(a.name()).as_ref(), Some(a));
        }
    }

    #[test]
    fn twists_are_what_they_claim() {
        assert_eq!(k_times_k_swap().product(0, 0), vec_of(&[0, 1]).as_slice());
        assert!(k_times_k_projection().is_alpha_idempotent());
        assert!(!k_times_k_swap().is_alpha_idempotent());
        assert!(matrix_algebra().is_associative());
        assert!(!matrix_algebra().is_commutative());
    }
}
