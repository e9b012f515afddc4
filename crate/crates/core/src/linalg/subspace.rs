use serde::Serialize;

use super::{rref, Matrix, Scalar};
use crate::error::{Error, Result};

/// A linear subspace of `ℚ^n`, stored by its RREF basis.
///
/// Basis rows carry a one at their pivot column and zeros at every other
/// pivot column, so membership tests and coordinates are read off directly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::from_rref_rows(&Matrix::identity(ambient_dim))
    }

    /// Span of `vectors`, each of length `ambient_dim`.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        Subspace::from_rref_rows(&Matrix::from_rows_with_cols(ambient_dim, vectors.to_vec()))
    }

    /// Row space of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        Subspace::from_rref_rows(m)
    }

    fn from_rref_rows(m: &Matrix) -> Self {
        let r = rref(m);
        Subspace {
            ambient_dim: m.cols(),
            basis: (0..r.rank).map(|i| r.matrix.row(i).to_vec()).collect(),
            pivots: r.pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as matrix rows (`dim × ambient_dim`).
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_rows_with_cols(self.ambient_dim, self.basis.clone())
    }

    /// Coordinates not covered by a pivot; the unit vectors at these indices
    /// represent a basis of the quotient `ℚ^n / self`.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&i| !is_pivot[i]).collect()
    }

    /// Canonical representative of `v + self`: the unique vector in the coset
    /// vanishing on every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch in Subspace::reduce");
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &(&c * b);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.contains(v) {
            Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
        } else {
            None
        }
    }

    /// Linear combination `Σ c_i · basis_i`.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![Scalar::zero(); self.ambient_dim];
        for (c, row) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, b) in out.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x += c * b;
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.ambient_dim, &vs)
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient_dim);
        let images: Vec<Vec<Scalar>> = self.basis.iter().map(|v| m.apply(v)).collect();
        Subspace::span(m.rows(), &images)
    }
}

/// Null space of `m`.
pub fn kernel(m: &Matrix) -> Subspace {
    let r = rref(m);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vec<Scalar>> = (0..m.cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); m.cols()];
            v[f] = Scalar::one();
            for (row, &p) in r.pivots.iter().enumerate() {
                v[p] = -&r.matrix[(row, f)];
            }
            v
        })
        .collect();
    Subspace::span(m.cols(), &vectors)
}

/// Column space of `m`.
pub fn image(m: &Matrix) -> Subspace {
    Subspace::row_space(&m.transpose())
}

/// `dim(sup) − dim(sub)`, after checking `sub ⊆ sup`.
pub fn quotient_dim(sub: &Subspace, sup: &Subspace) -> Result<usize> {
    if !sub.is_subspace_of(sup) {
        return Err(Error::NotASubspace {
            sub_dim: sub.dim(),
            super_dim: sup.dim(),
        });
    }
    Ok(sup.dim() - sub.dim())
}

/// Common null space of linear functionals on `ℚ^dim`, each given by its
/// coefficient vector.
pub fn solve_homogeneous(dim: usize, constraints: &[Vec<Scalar>]) -> Subspace {
    if constraints.is_empty() {
        return Subspace::full(dim);
    }
    kernel(&Matrix::from_rows_with_cols(dim, constraints.to_vec()))
}

/// Solutions of `m·x = rhs`: a particular solution and the homogeneous
/// solution space, or `None` if the system is inconsistent.
pub fn solve_affine(m: &Matrix, rhs: &[Scalar]) -> Option<(Vec<Scalar>, Subspace)> {
    assert_eq!(m.rows(), rhs.len());
    let n = m.cols();
    let mut aug = Matrix::zeros(m.rows(), n + 1);
    aug.set_block(0, 0, m);
    for (i, b) in rhs.iter().enumerate() {
        aug[(i, n)] = b.clone();
    }
    let r = rref(&aug);
    if r.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Scalar::zero(); n];
    for (row, &p) in r.pivots.iter().enumerate() {
        x[p] = r.matrix[(row, n)].clone();
    }
    Some((x, kernel(m)))
}
