//! Coefficient systems: bimodules, dual bimodules, the regular bimodule,
//! `A°` and the coregular dual.
//!
//! Actions are stored as matrices: `left[a]` is `v ↦ e_a·v` and `right[a]` is
//! `v ↦ v·e_a` on the module's basis. Functionals on `A` are coordinate
//! vectors in the dual basis, so the dual of a linear map is its transpose.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::HomAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{solve_homogeneous, Matrix, Scalar, Subspace};
use crate::violation::{check, Violation};

/// Raw bimodule data: `left[a][v][w]` is the coefficient of `w` in `e_a·v`,
/// `right[v][a][w]` that of `w` in `v·e_a`, and column `v` of `beta` is `β(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleDef {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub basis: Vec<String>,
    pub left: Vec<Vec<Vec<Scalar>>>,
    pub right: Vec<Vec<Vec<Scalar>>>,
    pub beta: Matrix,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CoefficientReport {
    pub violations: Vec<Violation>,
}

impl CoefficientReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Number of failing instances per law.
    pub fn counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for v in &self.violations {
            *out.entry(v.law).or_insert(0) += 1;
        }
        out
    }

    fn into_result(self) -> Result<()> {
        match self.counts().into_iter().next() {
            None => Ok(()),
            Some((law, count)) => Err(Error::CoefficientAxioms {
                law: law.to_string(),
                count,
            }),
        }
    }
}

/// Action data shared by bimodules and dual bimodules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Actions {
    algebra: HomAlgebra,
    name: String,
    basis: Vec<String>,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
    beta: Matrix,
}

impl Actions {
    pub fn new(
        algebra: &HomAlgebra,
        name: impl Into<String>,
        left: Vec<Matrix>,
        right: Vec<Matrix>,
        beta: Matrix,
    ) -> Result<Actions> {
        let d = algebra.dim();
        let m = beta.rows();
        if !beta.is_square() {
            return Err(Error::Shape("beta must be square".into()));
        }
        if left.len() != d || right.len() != d {
            return Err(Error::Shape(format!("expected {d} left and right action matrices")));
        }
        if left.iter().chain(&right).any(|x| x.shape() != (m, m)) {
            return Err(Error::Shape(format!("action matrices must be {m}×{m}")));
        }
        Ok(Actions {
            algebra: algebra.clone(),
            name: name.into(),
            basis: (1..=m).map(|i| format!("v{i}")).collect(),
            left,
            right,
            beta,
        })
    }

    pub fn from_def(algebra: &HomAlgebra, def: &BimoduleDef) -> Result<Actions> {
        let m = def.dim;
        let d = algebra.dim();
        let shape_err = || Error::Shape(format!("bimodule tensors must be {d}×{m}×{m} and {m}×{d}×{m}"));
        if def.left.len() != d || def.right.len() != m {
            return Err(shape_err());
        }
        let mut left = vec![Matrix::zeros(m, m); d];
        let mut right = vec![Matrix::zeros(m, m); d];
        for (a, rows) in def.left.iter().enumerate() {
            if rows.len() != m || rows.iter().any(|r| r.len() != m) {
                return Err(shape_err());
            }
            left[a] = Matrix::from_columns(m, rows);
        }
        for (v, rows) in def.right.iter().enumerate() {
            if rows.len() != d || rows.iter().any(|r| r.len() != m) {
                return Err(shape_err());
            }
            for (a, w) in rows.iter().enumerate() {
                for (k, x) in w.iter().enumerate() {
                    right[a][(k, v)] = x.clone();
                }
            }
        }
        let actions = Actions::new(algebra, def.name.clone(), left, right, def.beta.clone())?;
        match def.basis.len() {
            0 => Ok(actions),
            n if n == m => Ok(actions.with_basis_names(def.basis.clone())),
            n => Err(Error::Shape(format!("{n} basis names for dimension {m}"))),
        }
    }

    pub fn to_def(&self) -> BimoduleDef {
        let m = self.dim();
        BimoduleDef {
            name: self.name.clone(),
            dim: m,
            basis: self.basis.clone(),
            left: self
                .left
                .iter()
                .map(|l| (0..m).map(|v| l.column(v)).collect())
                .collect(),
            right: (0..m)
                .map(|v| self.right.iter().map(|r| r.column(v)).collect())
                .collect(),
            beta: self.beta.clone(),
        }
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim());
        self.basis = names;
        self
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn algebra(&self) -> &HomAlgebra {
        &self.algebra
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.beta.rows()
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    /// `v ↦ e_a·v`.
    pub fn left_matrix(&self, a: usize) -> &Matrix {
        &self.left[a]
    }

    /// `v ↦ v·e_a`.
    pub fn right_matrix(&self, a: usize) -> &Matrix {
        &self.right[a]
    }

    /// `x·v` for an algebra element `x`.
    pub fn act_left(&self, x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.combine(&self.left, x, v)
    }

    /// `v·x` for an algebra element `x`.
    pub fn act_right(&self, v: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.combine(&self.right, x, v)
    }

    fn combine(&self, mats: &[Matrix], x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (c, m) in x.iter().zip(mats) {
            if c.is_zero() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(m.apply(v)) {
                *o += c * &y;
            }
        }
        out
    }

    fn module_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    /// Evaluates `law(a, b, v)` on every basis triple.
    fn triples(
        &self,
        report: &mut CoefficientReport,
        law: &'static str,
        f: impl Fn(&[Scalar], &[Scalar], &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>),
    ) {
        let a = &self.algebra;
        for i in 0..a.dim() {
            let x = a.basis_vector(i);
            for j in 0..a.dim() {
                let y = a.basis_vector(j);
                for k in 0..self.dim() {
                    let (lhs, rhs) = f(&x, &y, &self.module_vector(k));
                    check(&mut report.violations, law, &[i, j, k], lhs, rhs);
                }
            }
        }
    }

    /// Evaluates `law(a, v)` on every basis pair.
    fn pairs(
        &self,
        report: &mut CoefficientReport,
        law: &'static str,
        f: impl Fn(&[Scalar], &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>),
    ) {
        for i in 0..self.algebra.dim() {
            let x = self.algebra.basis_vector(i);
            for k in 0..self.dim() {
                let (lhs, rhs) = f(&x, &self.module_vector(k));
                check(&mut report.violations, law, &[i, k], lhs, rhs);
            }
        }
    }

    fn alpha(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.algebra.apply_alpha(x)
    }

    fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.algebra.mul(x, y)
    }

    fn b(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.beta.apply(v)
    }

    pub fn bimodule_report(&self) -> CoefficientReport {
        let mut r = CoefficientReport::default();
        self.triples(&mut r, "(ab)·β(v) = α(a)·(b·v)", |a, b, v| {
            (
                self.act_left(&self.mul(a, b), &self.b(v)),
                self.act_left(&self.alpha(a), &self.act_left(b, v)),
            )
        });
        self.triples(&mut r, "β(v)·(ab) = (v·a)·α(b)", |a, b, v| {
            (
                self.act_right(&self.b(v), &self.mul(a, b)),
                self.act_right(&self.act_right(v, a), &self.alpha(b)),
            )
        });
        self.triples(&mut r, "α(a)·(v·b) = (a·v)·α(b)", |a, b, v| {
            (
                self.act_left(&self.alpha(a), &self.act_right(v, b)),
                self.act_right(&self.act_left(a, v), &self.alpha(b)),
            )
        });
        r
    }

    pub fn homology_hypotheses_report(&self) -> CoefficientReport {
        let mut r = CoefficientReport::default();
        self.pairs(&mut r, "β(v·a) = β(v)·α(a)", |a, v| {
            (
                self.b(&self.act_right(v, a)),
                self.act_right(&self.b(v), &self.alpha(a)),
            )
        });
        self.pairs(&mut r, "β(a·v) = α(a)·β(v)", |a, v| {
            (self.b(&self.act_left(a, v)), self.act_left(&self.alpha(a), &self.b(v)))
        });
        r
    }

    pub fn dual_bimodule_report(&self) -> CoefficientReport {
        let mut r = CoefficientReport::default();
        self.triples(&mut r, "a·(α(b)·v) = β((ab)·v)", |a, b, v| {
            (
                self.act_left(a, &self.act_left(&self.alpha(b), v)),
                self.b(&self.act_left(&self.mul(a, b), v)),
            )
        });
        self.triples(&mut r, "(v·α(a))·b = β(v·(ab))", |a, b, v| {
            (
                self.act_right(&self.act_right(v, &self.alpha(a)), b),
                self.b(&self.act_right(v, &self.mul(a, b))),
            )
        });
        self.triples(&mut r, "(α(a)·v)·b = a·(v·α(b))", |a, b, v| {
            (
                self.act_right(&self.act_left(&self.alpha(a), v), b),
                self.act_left(a, &self.act_right(v, &self.alpha(b))),
            )
        });
        r
    }

    /// The compatibility law in the form `α(a)·(v·b) = (a·v)·α(b)`. Duals of
    /// bimodules need not satisfy it; reported for information only.
    pub fn literal_dual_compatibility_report(&self) -> CoefficientReport {
        let mut r = CoefficientReport::default();
        self.triples(&mut r, "α(a)·(v·b) = (a·v)·α(b)", |a, b, v| {
            (
                self.act_left(&self.alpha(a), &self.act_right(v, b)),
                self.act_right(&self.act_left(a, v), &self.alpha(b)),
            )
        });
        r
    }

    pub fn cohomology_hypotheses_report(&self) -> CoefficientReport {
        let mut r = CoefficientReport::default();
        self.pairs(&mut r, "β(α(a)·w) = a·β(w)", |a, w| {
            (self.b(&self.act_left(&self.alpha(a), w)), self.act_left(a, &self.b(w)))
        });
        self.pairs(&mut r, "β(w·α(a)) = β(w)·a", |a, w| {
            (
                self.b(&self.act_right(w, &self.alpha(a))),
                self.act_right(&self.b(w), a),
            )
        });
        r
    }

    /// Transposed actions: `(a·f)(v) = f(v·a)`, `(f·a)(v) = f(a·v)`, `β*(f) = f∘β`.
    fn transposed(&self, name: String) -> Actions {
        Actions {
            algebra: self.algebra.clone(),
            name,
            basis: self.basis.iter().map(|b| format!("{b}*")).collect(),
            left: self.right.iter().map(Matrix::transpose).collect(),
            right: self.left.iter().map(Matrix::transpose).collect(),
            beta: self.beta.transpose(),
        }
    }
}

/// A validated bimodule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule(Actions);

/// A validated dual bimodule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBimodule(Actions);

impl Bimodule {
    pub fn new(actions: Actions) -> Result<Bimodule> {
        actions.bimodule_report().into_result()?;
        Ok(Bimodule(actions))
    }

    pub fn from_def(algebra: &HomAlgebra, def: &BimoduleDef) -> Result<Bimodule> {
        Bimodule::new(Actions::from_def(algebra, def)?)
    }

    pub fn zero(algebra: &HomAlgebra) -> Bimodule {
        let d = algebra.dim();
        Bimodule(Actions {
            algebra: algebra.clone(),
            name: "0".into(),
            basis: Vec::new(),
            left: vec![Matrix::zeros(0, 0); d],
            right: vec![Matrix::zeros(0, 0); d],
            beta: Matrix::zeros(0, 0),
        })
    }

    pub fn actions(&self) -> &Actions {
        &self.0
    }
}

impl DualBimodule {
    pub fn new(actions: Actions) -> Result<DualBimodule> {
        actions.dual_bimodule_report().into_result()?;
        Ok(DualBimodule(actions))
    }

    pub fn from_def(algebra: &HomAlgebra, def: &BimoduleDef) -> Result<DualBimodule> {
        DualBimodule::new(Actions::from_def(algebra, def)?)
    }

    pub fn actions(&self) -> &Actions {
        &self.0
    }
}

impl std::ops::Deref for Bimodule {
    type Target = Actions;
    fn deref(&self) -> &Actions {
        &self.0
    }
}

impl std::ops::Deref for DualBimodule {
    type Target = Actions;
    fn deref(&self) -> &Actions {
        &self.0
    }
}

/// `A` over itself: actions by the product, `β = α`.
pub fn regular_bimodule(a: &HomAlgebra) -> Bimodule {
    let d = a.dim();
    let actions = Actions::new(
        a,
        a.name(),
        (0..d).map(|i| a.left_mul_matrix(i)).collect(),
        (0..d).map(|i| a.right_mul_matrix(i)).collect(),
        a.alpha().clone(),
    )
    .expect("shapes agree")
    .with_basis_names(a.basis_names().to_vec());
    Bimodule::new(actions).expect("a valid algebra is a bimodule over itself")
}

pub fn validate_homology_coefficients(v: &Bimodule) -> CoefficientReport {
    v.homology_hypotheses_report()
}

pub fn validate_cohomology_coefficients(w: &DualBimodule) -> CoefficientReport {
    w.cohomology_hypotheses_report()
}

pub fn dualize_bimodule(v: &Bimodule) -> Result<DualBimodule> {
    DualBimodule::new(v.transposed(format!("{}*", v.name())))
}

/// `A° ⊆ A*` as a subspace together with its bimodule structure in the
/// subspace's RREF basis.
#[derive(Debug, Clone)]
pub struct ACirc {
    pub subspace: Subspace,
    pub bimodule: Bimodule,
}

/// Functionals with `f(xα(y)) = f(α(xy)) = f(α(x)y)`, acted on by
/// `(a·f)(b) = f(bα(a))`, `(f·a)(b) = f(α(a)b)`, `β = Id`.
pub fn a_circ(a: &HomAlgebra) -> Result<ACirc> {
    let d = a.dim();
    let mut constraints = Vec::with_capacity(2 * d * d);
    for x in 0..d {
        let ex = a.basis_vector(x);
        let ax = a.alpha().column(x);
        for y in 0..d {
            let ey = a.basis_vector(y);
            let ay = a.alpha().column(y);
            let x_ay = a.mul(&ex, &ay);
            let a_xy = a.apply_alpha(a.product(x, y));
            let ax_y = a.mul(&ax, &ey);
            constraints.push(x_ay.iter().zip(&a_xy).map(|(p, q)| p - q).collect());
            constraints.push(a_xy.iter().zip(&ax_y).map(|(p, q)| p - q).collect());
        }
    }
    let sub = solve_homogeneous(d, &constraints);
    let restrict = |m: &Matrix| -> Result<Matrix> {
        let cols = sub
            .basis()
            .iter()
            .map(|f| {
                sub.coordinates(&m.apply(f))
                    .ok_or_else(|| Error::IdentityFailure("A° is not closed under the actions".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(sub.dim(), &cols))
    };
    let mut left = Vec::with_capacity(d);
    let mut right = Vec::with_capacity(d);
    for i in 0..d {
        let ai = a.alpha().column(i);
        // (a·f)(b) = f(b·α(a)): transpose of right multiplication by α(a).
        let r: Matrix = (0..d).fold(Matrix::zeros(d, d), |acc, k| {
            &acc + &a.right_mul_matrix(k).scale(&ai[k])
        });
        let l: Matrix = (0..d).fold(Matrix::zeros(d, d), |acc, k| &acc + &a.left_mul_matrix(k).scale(&ai[k]));
        left.push(restrict(&r.transpose())?);
        right.push(restrict(&l.transpose())?);
    }
    let actions = Actions::new(a, format!("{}°", a.name()), left, right, Matrix::identity(sub.dim()))?
        .with_basis_names((1..=sub.dim()).map(|i| format!("f{i}")).collect());
    Ok(ACirc {
        subspace: sub,
        bimodule: Bimodule::new(actions)?,
    })
}

/// `A*` with `(a·f)(b) = f(ba)`, `(f·a)(b) = f(ab)`, `β = αᵀ`; requires `α`
/// in the centroid.
pub fn coregular_dual(a: &HomAlgebra) -> Result<Bimodule> {
    let report = a.centroid_report();
    if !report.is_centroid() {
        return Err(Error::Precondition(format!(
            "α is not in the centroid ({} violation(s)); A* is not a bimodule under the coregular actions",
            report.violations.len()
        )));
    }
    let d = a.dim();
    let actions = Actions::new(
        a,
        format!("{}*", a.name()),
        (0..d).map(|i| a.right_mul_matrix(i).transpose()).collect(),
        (0..d).map(|i| a.left_mul_matrix(i).transpose()).collect(),
        a.alpha().transpose(),
    )?
    .with_basis_names(a.basis_names().iter().map(|b| format!("{b}*")).collect());
    Bimodule::new(actions)
}
