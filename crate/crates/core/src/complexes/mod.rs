//! Finite chain and cochain complexes, their (co)homology, quotient and
//! sub-complexes, and bicomplexes with their total complexes.

mod bicomplex;
mod report;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{image, kernel, rank, solve_affine, Matrix, Scalar, Subspace};

pub use bicomplex::{Bicomplex, Cell};
pub use report::{DegreeReport, HomologyReport, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    /// Differentials lower the degree.
    Homological,
    /// Differentials raise the degree.
    Cohomological,
}

impl Grading {
    /// Degree reached by one application of the differential.
    pub fn step(self) -> i64 {
        match self {
            Grading::Homological => -1,
            Grading::Cohomological => 1,
        }
    }

    pub fn flip(self) -> Grading {
        match self {
            Grading::Homological => Grading::Cohomological,
            Grading::Cohomological => Grading::Homological,
        }
    }
}

/// A complex concentrated in degrees `min_degree ..= max_degree`, zero outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    grading: Grading,
    min_degree: i64,
    dims: Vec<usize>,
    /// `outgoing[k]` leaves degree `min_degree + k`; it has zero rows when
    /// its target lies outside the range.
    outgoing: Vec<Matrix>,
}

/// Homology in one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: i64,
    pub chain_dim: usize,
    pub kernel_dim: usize,
    pub image_dim: usize,
    pub betti: usize,
    /// Canonical cycles spanning a complement of the boundaries.
    pub representatives: Option<Vec<Vec<Scalar>>>,
}

impl ChainComplex {
    /// `outgoing[k]` is the differential leaving degree `min_degree + k`.
    /// Checks shapes and `d∘d = 0`.
    pub fn new(grading: Grading, min_degree: i64, outgoing: Vec<Matrix>) -> Result<ChainComplex> {
        let c = ChainComplex::unchecked(grading, min_degree, outgoing)?;
        c.check_square_zero()?;
        Ok(c)
    }

    fn unchecked(grading: Grading, min_degree: i64, outgoing: Vec<Matrix>) -> Result<ChainComplex> {
        let dims: Vec<usize> = outgoing.iter().map(Matrix::cols).collect();
        let len = dims.len() as i64;
        for (k, m) in outgoing.iter().enumerate() {
            let target = k as i64 + grading.step();
            let expected = if (0..len).contains(&target) {
                dims[target as usize]
            } else {
                0
            };
            if m.rows() != expected {
                return Err(Error::Shape(format!(
                    "differential from degree {} has {} rows, target has dimension {expected}",
                    min_degree + k as i64,
                    m.rows()
                )));
            }
        }
        Ok(ChainComplex {
            grading,
            min_degree,
            dims,
            outgoing,
        })
    }

    /// Builds a complex from `(degree → dimension)` and a differential
    /// constructor, called for each degree whose target lies in range.
    pub fn from_fn(
        grading: Grading,
        min_degree: i64,
        dims: &[usize],
        differential: impl Fn(i64) -> Matrix + Sync,
    ) -> Result<ChainComplex> {
        let len = dims.len() as i64;
        let outgoing: Vec<Matrix> = (0..len)
            .into_par_iter()
            .map(|k| {
                let target = k + grading.step();
                if (0..len).contains(&target) {
                    differential(min_degree + k)
                } else {
                    Matrix::zeros(0, dims[k as usize])
                }
            })
            .collect();
        for (k, m) in outgoing.iter().enumerate() {
            if m.cols() != dims[k] {
                return Err(Error::Shape(format!(
                    "differential from degree {} has {} columns, expected {}",
                    min_degree + k as i64,
                    m.cols(),
                    dims[k]
                )));
            }
        }
        ChainComplex::new(grading, min_degree, outgoing)
    }

    fn check_square_zero(&self) -> Result<()> {
        let bad = (0..self.outgoing.len()).into_par_iter().find_first(|&k| {
            let target = k as i64 + self.grading.step();
            if !(0..self.outgoing.len() as i64).contains(&target) {
                return false;
            }
            !self.outgoing[target as usize].matmul(&self.outgoing[k]).is_zero()
        });
        match bad {
            Some(k) => Err(Error::BoundarySquareNonzero {
                degree: self.min_degree + k as i64,
            }),
            None => Ok(()),
        }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.dims.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.min_degree..=self.max_degree()
    }

    fn slot(&self, n: i64) -> Option<usize> {
        let k = n - self.min_degree;
        (0..self.dims.len() as i64).contains(&k).then_some(k as usize)
    }

    fn slot_or_err(&self, n: i64) -> Result<usize> {
        self.slot(n).ok_or(Error::DegreeOutOfRange {
            degree: n,
            min: self.min_degree,
            max: self.max_degree(),
        })
    }

    pub fn dim(&self, n: i64) -> usize {
        self.slot(n).map_or(0, |k| self.dims[k])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Differential leaving degree `n`.
    pub fn differential(&self, n: i64) -> Matrix {
        match self.slot(n) {
            Some(k) => self.outgoing[k].clone(),
            None => Matrix::zeros(self.dim(n + self.grading.step()), 0),
        }
    }

    fn outgoing_ref(&self, n: i64) -> Option<&Matrix> {
        self.slot(n).map(|k| &self.outgoing[k])
    }

    /// Differential arriving at degree `n`.
    pub fn incoming(&self, n: i64) -> Matrix {
        let src = n - self.grading.step();
        match self.slot(src) {
            Some(k) => self.outgoing[k].clone(),
            None => Matrix::zeros(self.dim(n), 0),
        }
    }

    /// (Co)homology at degree `n`.
    pub fn homology(&self, n: i64, representatives: bool) -> Result<HomologyGroup> {
        let k = self.slot_or_err(n)?;
        let out = &self.outgoing[k];
        let incoming = self.outgoing_ref(n - self.grading.step());
        if !representatives {
            let r_out = rank(out);
            let r_in = incoming.map_or(0, rank);
            return Ok(self.group(n, self.dims[k] - r_out, r_in, None));
        }
        let z = kernel(out);
        let b = incoming.map_or_else(|| Subspace::zero(self.dims[k]), image);
        let reps = complement_representatives(&z, &b)?;
        Ok(self.group(n, z.dim(), b.dim(), Some(reps)))
    }

    fn group(&self, n: i64, kernel_dim: usize, image_dim: usize, reps: Option<Vec<Vec<Scalar>>>) -> HomologyGroup {
        HomologyGroup {
            degree: n,
            chain_dim: self.dim(n),
            kernel_dim,
            image_dim,
            betti: kernel_dim - image_dim,
            representatives: reps,
        }
    }

    /// (Co)homology in every degree of `range`, computed concurrently.
    pub fn homology_range(
        &self,
        range: std::ops::RangeInclusive<i64>,
        representatives: bool,
    ) -> Result<Vec<HomologyGroup>> {
        let degrees: Vec<i64> = range.collect();
        for &n in &degrees {
            self.slot_or_err(n)?;
        }
        if representatives {
            return degrees.par_iter().map(|&n| self.homology(n, true)).collect();
        }
        // Each differential's rank is shared by two neighbouring degrees.
        let needed: Vec<i64> = {
            let mut v: Vec<i64> = degrees
                .iter()
                .flat_map(|&n| [n, n - self.grading.step()])
                .filter(|&m| self.slot(m).is_some())
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let ranks: Vec<(i64, usize)> = needed
            .par_iter()
            .map(|&m| (m, rank(&self.outgoing[self.slot(m).unwrap()])))
            .collect();
        let rank_of = |m: i64| ranks.iter().find(|(x, _)| *x == m).map_or(0, |r| r.1);
        Ok(degrees
            .iter()
            .map(|&n| {
                let r_out = rank_of(n);
                let r_in = rank_of(n - self.grading.step());
                self.group(n, self.dim(n) - r_out, r_in, None)
            })
            .collect())
    }

    /// The dual complex: transposed differentials, opposite grading.
    pub fn dual(&self) -> ChainComplex {
        let len = self.dims.len() as i64;
        let outgoing = (0..len)
            .map(|k| {
                // The dual differential leaving degree k is the transpose of the one arriving at k.
                let src = k - self.grading.step();
                if (0..len).contains(&src) {
                    self.outgoing[src as usize].transpose()
                } else {
                    Matrix::zeros(0, self.dims[k as usize])
                }
            })
            .collect();
        ChainComplex::unchecked(self.grading.flip(), self.min_degree, outgoing)
            .expect("transposes have matching shapes")
    }

    /// Restriction to degrees `range`, discarding differentials that leave it.
    pub fn truncate(&self, range: std::ops::RangeInclusive<i64>) -> ChainComplex {
        let lo = (*range.start()).max(self.min_degree);
        let hi = (*range.end()).min(self.max_degree());
        let outgoing = (lo..=hi)
            .map(|n| {
                let m = &self.outgoing[self.slot(n).unwrap()];
                let target = n + self.grading.step();
                if (lo..=hi).contains(&target) {
                    m.clone()
                } else {
                    Matrix::zeros(0, m.cols())
                }
            })
            .collect();
        ChainComplex::unchecked(self.grading, lo, outgoing).expect("restriction keeps shapes")
    }

    fn check_subspaces(&self, subspaces: &[Subspace]) -> Result<()> {
        if subspaces.len() != self.dims.len() {
            return Err(Error::Shape(format!(
                "{} subspaces for {} degrees",
                subspaces.len(),
                self.dims.len()
            )));
        }
        for (k, s) in subspaces.iter().enumerate() {
            if s.ambient_dim() != self.dims[k] {
                return Err(Error::Shape(format!(
                    "subspace in degree {} lives in dimension {}, chain space has {}",
                    self.min_degree + k as i64,
                    s.ambient_dim(),
                    self.dims[k]
                )));
            }
        }
        let bad = (0..self.dims.len()).into_par_iter().find_first(|&k| {
            let target = k as i64 + self.grading.step();
            match usize::try_from(target).ok().and_then(|t| subspaces.get(t)) {
                Some(t) => !subspaces[k]
                    .basis()
                    .iter()
                    .all(|v| t.contains(&self.outgoing[k].apply(v))),
                None => false,
            }
        });
        match bad {
            Some(k) => Err(Error::NotStable {
                degree: self.min_degree + k as i64,
            }),
            None => Ok(()),
        }
    }
}

/// Canonical basis of a complement of `b` in `z`: the RREF basis of the
/// projection of `z` along `b` onto the coordinates free of `b`'s pivots.
fn complement_representatives(z: &Subspace, b: &Subspace) -> Result<Vec<Vec<Scalar>>> {
    if !b.is_subspace_of(z) {
        return Err(Error::NotASubspace {
            sub_dim: b.dim(),
            super_dim: z.dim(),
        });
    }
    let reduced: Vec<Vec<Scalar>> = z.basis().iter().map(|v| b.reduce(v)).collect();
    Ok(Subspace::span(z.ambient_dim(), &reduced).basis().to_vec())
}

/// Coordinates of `v + sub` in the quotient basis indexed by `sub.non_pivots()`.
pub fn quotient_class(sub: &Subspace, v: &[Scalar]) -> Vec<Scalar> {
    let r = sub.reduce(v);
    sub.non_pivots().into_iter().map(|j| r[j].clone()).collect()
}

/// The quotient of `c` by subspaces stable under the differential.
pub fn quotient_complex(c: &ChainComplex, subspaces: &[Subspace]) -> Result<ChainComplex> {
    c.check_subspaces(subspaces)?;
    let len = c.dims.len() as i64;
    let outgoing = (0..len)
        .into_par_iter()
        .map(|k| {
            let src = &subspaces[k as usize];
            let free = src.non_pivots();
            let target = k + c.grading.step();
            if !(0..len).contains(&target) {
                return Matrix::zeros(0, free.len());
            }
            let tgt = &subspaces[target as usize];
            let cols: Vec<Vec<Scalar>> = free
                .iter()
                .map(|&j| quotient_class(tgt, &c.outgoing[k as usize].column(j)))
                .collect();
            Matrix::from_columns(tgt.ambient_dim() - tgt.dim(), &cols)
        })
        .collect();
    ChainComplex::new(c.grading, c.min_degree, outgoing)
}

/// The restriction of `c` to subspaces stable under the differential, in
/// their RREF bases.
pub fn sub_complex(c: &ChainComplex, subspaces: &[Subspace]) -> Result<ChainComplex> {
    c.check_subspaces(subspaces)?;
    let len = c.dims.len() as i64;
    let outgoing = (0..len)
        .into_par_iter()
        .map(|k| {
            let src = &subspaces[k as usize];
            let target = k + c.grading.step();
            if !(0..len).contains(&target) {
                return Matrix::zeros(0, src.dim());
            }
            let tgt = &subspaces[target as usize];
            let cols: Vec<Vec<Scalar>> = src
                .basis()
                .iter()
                .map(|v| {
                    tgt.coordinates(&c.outgoing[k as usize].apply(v))
                        .expect("stability was checked")
                })
                .collect();
            Matrix::from_columns(tgt.dim(), &cols)
        })
        .collect();
    ChainComplex::new(c.grading, c.min_degree, outgoing)
}

/// Matrix of the map induced in degree `n` by the chain map `f` (one matrix
/// per degree), in the representative bases of [`ChainComplex::homology`].
pub fn induced_map(src: &ChainComplex, tgt: &ChainComplex, f: impl Fn(i64) -> Matrix, n: i64) -> Result<Matrix> {
    let s = src.grading.step();
    let f_n = f(n);
    if f_n.shape() != (tgt.dim(n), src.dim(n)) {
        return Err(Error::Shape(format!("chain map in degree {n} is {:?}", f_n.shape())));
    }
    for (from, m) in [(n, &f_n), (n - s, &f(n - s))] {
        let to = from + s;
        if src.slot(from).is_none() || src.slot(to).is_none() || tgt.slot(to).is_none() {
            continue;
        }
        let after = if from == n { f(to) } else { f_n.clone() };
        if after.matmul(&src.differential(from)) != tgt.differential(from).matmul(m) {
            return Err(Error::IdentityFailure(format!("not a chain map from degree {from}")));
        }
    }
    let source_reps = src.homology(n, true)?.representatives.unwrap_or_default();
    let target_reps = tgt.homology(n, true)?.representatives.unwrap_or_default();
    let boundaries = image(&tgt.incoming(n));
    let mut columns: Vec<Vec<Scalar>> = target_reps.clone();
    columns.extend(boundaries.basis().iter().cloned());
    let system = Matrix::from_columns(tgt.dim(n), &columns);
    let images: Result<Vec<Vec<Scalar>>> = source_reps
        .iter()
        .map(|r| {
            let (x, _) = solve_affine(&system, &f_n.apply(r))
                .ok_or_else(|| Error::IdentityFailure(format!("image of a cycle in degree {n} is not a cycle")))?;
            Ok(x[..target_reps.len()].to_vec())
        })
        .collect();
    Ok(Matrix::from_columns(target_reps.len(), &images?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    fn zero_complex(dims: &[usize]) -> ChainComplex {
        ChainComplex::from_fn(Grading::Homological, 0, dims, |n| {
            Matrix::zeros(dims[n as usize - 1], dims[n as usize])
        })
        .unwrap()
    }

    #[test]
    fn zero_differentials() {
        let c = zero_complex(&[1, 1, 1]);
        for g in c.homology_range(0..=2, false).unwrap() {
            assert_eq!(g.betti, 1);
        }
    }

    #[test]
    fn identity_between_two_copies() {
        let c = ChainComplex::new(Grading::Homological, 0, vec![Matrix::zeros(0, 2), Matrix::identity(2)]).unwrap();
        let h: Vec<usize> = c
            .homology_range(0..=1, false)
            .unwrap()
            .iter()
            .map(|g| g.betti)
            .collect();
        assert_eq!(h, vec![0, 0]);
    }

    #[test]
    fn nonzero_square_is_reported() {
        let d = Matrix::from_ints(&[&[1]]);
        let r = ChainComplex::new(Grading::Homological, 0, vec![Matrix::zeros(0, 1), d.clone(), d]);
        assert!(matches!(r, Err(Error::BoundarySquareNonzero { degree: 2 })));
    }

    #[test]
    fn out_of_range_degree() {
        let c = zero_complex(&[1, 1]);
        assert!(matches!(c.homology(5, false), Err(Error::DegreeOutOfRange { .. })));
    }

    #[test]
    fn representatives_are_canonical() {
        // C1 = ℚ² → C0 = ℚ via (1 1): kernel span{(1,−1)}, H0 = 0.
        let c = ChainComplex::new(
            Grading::Homological,
            0,
            vec![Matrix::zeros(0, 1), Matrix::from_ints(&[&[1, 1]])],
        )
        .unwrap();
        let h1 = c.homology(1, true).unwrap();
        assert_eq!(h1.betti, 1);
        assert_eq!(h1.representatives.unwrap(), vec![vec![int(1), int(-1)]]);
        assert_eq!(c.homology(0, true).unwrap().betti, 0);
    }

    #[test]
    fn dual_has_same_betti_numbers() {
        let c = ChainComplex::new(
            Grading::Homological,
            0,
            vec![
                Matrix::zeros(0, 2),
                Matrix::from_ints(&[&[1, 0, 1], &[0, 0, 0]]),
                Matrix::from_ints(&[&[1], &[0], &[-1]]),
            ],
        )
        .unwrap();
        let dual = c.dual();
        assert_eq!(dual.grading(), Grading::Cohomological);
        let a: Vec<usize> = c
            .homology_range(0..=2, false)
            .unwrap()
            .iter()
            .map(|g| g.betti)
            .collect();
        let b: Vec<usize> = dual
            .homology_range(0..=2, false)
            .unwrap()
            .iter()
            .map(|g| g.betti)
            .collect();
        assert_eq!(a, b);
        assert_eq!(dual.dual(), c);
    }

    #[test]
    fn quotient_and_sub_extremes() {
        let c = ChainComplex::new(
            Grading::Homological,
            0,
            vec![Matrix::zeros(0, 1), Matrix::from_ints(&[&[1, 1]])],
        )
        .unwrap();
        let zeros: Vec<Subspace> = c.dims().iter().map(|&d| Subspace::zero(d)).collect();
        let fulls: Vec<Subspace> = c.dims().iter().map(|&d| Subspace::full(d)).collect();
        assert_eq!(quotient_complex(&c, &zeros).unwrap(), c);
        assert_eq!(sub_complex(&c, &fulls).unwrap(), c);
        let q = quotient_complex(&c, &fulls).unwrap();
        assert!(q.dims().iter().all(|&d| d == 0));
        let s = sub_complex(&c, &zeros).unwrap();
        assert!(s.dims().iter().all(|&d| d == 0));
    }

    #[test]
    fn unstable_subspaces_are_rejected() {
        let c = ChainComplex::new(
            Grading::Homological,
            0,
            vec![Matrix::zeros(0, 1), Matrix::from_ints(&[&[1, 1]])],
        )
        .unwrap();
        let subs = vec![Subspace::zero(1), Subspace::span(2, &[vec![int(1), int(0)]])];
        assert!(matches!(
            quotient_complex(&c, &subs),
            Err(Error::NotStable { degree: 1 })
        ));
        assert!(matches!(sub_complex(&c, &subs), Err(Error::NotStable { degree: 1 })));
    }

    proptest::proptest! {
        #[test]
        fn betti_is_bounded(entries in proptest::collection::vec(-1i64..=1, 6)) {
            // d1: ℚ³ → ℚ², d2 = a kernel vector of d1 as a column, so d1∘d2 = 0.
            let d1 = Matrix::from_rows(entries.chunks(3).map(|r| r.iter().map(|&x| int(x)).collect()).collect());
            let k = kernel(&d1);
            let d2 = match k.basis().first() {
                Some(v) => Matrix::from_columns(3, std::slice::from_ref(v)),
                None => Matrix::zeros(3, 1),
            };
            let c = ChainComplex::new(Grading::Homological, 0, vec![Matrix::zeros(0, 2), d1, d2]).unwrap();
            for g in c.homology_range(0..=2, true).unwrap() {
                proptest::prop_assert!(g.betti <= g.chain_dim);
                proptest::prop_assert_eq!(g.representatives.as_ref().unwrap().len(), g.betti);
            }
        }
    }
}
