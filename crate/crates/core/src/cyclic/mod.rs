//! Cyclic and periodic cyclic (co)homology with coefficients in `A` (resp. `A*`).
//!
//! Two constructions are available in each direction: Connes' complex
//! `C^λ = C/(Id − t)` (dually `ker(Id − tᵀ)`), and the total complex of the
//! cyclic bicomplex with columns `b, −b′, b, …` joined by `Id − t` and `N`.

#[cfg(feature = "experimental-bb")]
mod connes;
mod functorial;
mod periodic;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::HomAlgebra;
use crate::coefficients::{dualize_bimodule, regular_bimodule};
use crate::complexes::{
    quotient_class, quotient_complex, sub_complex, Bicomplex, Cell, Grading, HomologyGroup, HomologyReport, Term,
};
use crate::error::{Error, Result};
use crate::hochschild::{
    b_prime, build_hochschild_cohomology_complex, build_hochschild_homology_complex, cyclic_t, hochschild_b, norm_n,
};
use crate::linalg::{image, kernel, Matrix, Scalar, Subspace};
use crate::tensor;

#[cfg(feature = "experimental-bb")]
pub use connes::{connes_bb_bicomplex, connes_operator, ConnesReport};
pub use functorial::{induced_map_on_homology, tensor_power_map, xi_map, Theory, XiMap};
pub use periodic::{periodic_cohomology, periodic_homology, PeriodicDegree, PeriodicReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Lambda,
    Bicomplex,
    Both,
}

impl Method {
    fn lambda(self) -> bool {
        matches!(self, Method::Lambda | Method::Both)
    }

    fn bicomplex(self) -> bool {
        matches!(self, Method::Bicomplex | Method::Both)
    }
}

/// `b`, `b′`, `t` and `N` on `A^{⊗(q+1)}` for `q ≤ top`.
pub(crate) struct Operators {
    pub b: Vec<Matrix>,
    pub b_prime: Vec<Matrix>,
    pub t: Vec<Matrix>,
    pub norm: Vec<Matrix>,
}

impl Operators {
    pub(crate) fn new(a: &HomAlgebra, top: usize) -> Operators {
        let v = regular_bimodule(a);
        let ops: Vec<[Matrix; 4]> = (0..=top)
            .into_par_iter()
            .map(|q| [hochschild_b(&v, q), b_prime(a, q), cyclic_t(a, q), norm_n(a, q)])
            .collect();
        let mut out = Operators {
            b: Vec::new(),
            b_prime: Vec::new(),
            t: Vec::new(),
            norm: Vec::new(),
        };
        for [b, bp, t, n] in ops {
            out.b.push(b);
            out.b_prime.push(bp);
            out.t.push(t);
            out.norm.push(n);
        }
        out
    }

    pub(crate) fn one_minus_t(&self, q: usize) -> Matrix {
        &Matrix::identity(self.t[q].rows()) - &self.t[q]
    }

    /// Vertical map leaving cell `(p, q)` of the homological bicomplex.
    pub(crate) fn vertical(&self, (p, q): Cell) -> Matrix {
        let q = q as usize;
        if p.rem_euclid(2) == 0 {
            self.b[q].clone()
        } else {
            -&self.b_prime[q]
        }
    }

    /// Horizontal map leaving cell `(p, q)` of the homological bicomplex.
    pub(crate) fn horizontal(&self, (p, q): Cell) -> Matrix {
        let q = q as usize;
        if p.rem_euclid(2) == 1 {
            self.one_minus_t(q)
        } else {
            self.norm[q].clone()
        }
    }

    /// Vertical map leaving cell `(p, q)` of the cohomological bicomplex.
    pub(crate) fn co_vertical(&self, (p, q): Cell) -> Matrix {
        self.vertical((p, q + 1)).transpose()
    }

    /// Horizontal map leaving cell `(p, q)` of the cohomological bicomplex.
    pub(crate) fn co_horizontal(&self, (p, q): Cell) -> Matrix {
        self.horizontal((p + 1, q)).transpose()
    }
}

/// Per-degree comparison of the two constructions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicDegree {
    pub degree: i64,
    pub lambda: Option<usize>,
    pub bicomplex: Option<usize>,
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicReport {
    pub algebra: String,
    pub theory: String,
    pub grading: Grading,
    pub max_degree: usize,
    pub columns: usize,
    pub degrees: Vec<CyclicDegree>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<HomologyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bicomplex: Option<HomologyReport>,
}

impl CyclicReport {
    fn assemble(
        a: &HomAlgebra,
        theory: &str,
        grading: Grading,
        n_max: usize,
        columns: usize,
        lambda: Option<HomologyReport>,
        bicomplex: Option<HomologyReport>,
    ) -> CyclicReport {
        let degrees = (0..=n_max as i64)
            .map(|n| {
                let l = lambda.as_ref().and_then(|r| r.betti_at(n));
                let b = bicomplex.as_ref().and_then(|r| r.betti_at(n));
                CyclicDegree {
                    degree: n,
                    lambda: l,
                    bicomplex: b,
                    agree: l.zip(b).map(|(x, y)| x == y),
                }
            })
            .collect();
        CyclicReport {
            algebra: a.name().to_string(),
            theory: theory.to_string(),
            grading,
            max_degree: n_max,
            columns,
            degrees,
            lambda,
            bicomplex,
        }
    }

    /// Betti numbers, from whichever construction ran (the λ one when both did).
    pub fn betti(&self) -> Vec<usize> {
        self.degrees.iter().filter_map(|d| d.lambda.or(d.bicomplex)).collect()
    }

    /// `false` if the constructions disagree in some degree.
    pub fn all_agree(&self) -> bool {
        self.degrees.iter().all(|d| d.agree != Some(false))
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} of {} (max degree {}, columns 0..={})",
            self.theory, self.algebra, self.max_degree, self.columns
        );
        let _ = writeln!(s, "{:>6} {:>8} {:>10} {:>6}", "degree", "lambda", "bicomplex", "agree");
        let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        for d in &self.degrees {
            let agree = d.agree.map_or("-", |a| if a { "yes" } else { "NO" });
            let _ = writeln!(
                s,
                "{:>6} {:>8} {:>10} {:>6}",
                d.degree,
                show(d.lambda),
                show(d.bicomplex),
                agree
            );
        }
        for r in self.lambda.iter().chain(&self.bicomplex) {
            if r.degrees.iter().any(|d| d.representatives.is_some()) {
                s.push('\n');
                s.push_str(&r.to_text());
            }
        }
        s
    }
}

/// `im(Id − t_n)` in `A^{⊗(n+1)}`.
pub fn lambda_relations(a: &HomAlgebra, n: usize) -> Subspace {
    let id = Matrix::identity(tensor::power(a.dim(), n + 1));
    image(&(&id - &cyclic_t(a, n)))
}

/// `ker(Id − tᵀ_n)`: the cyclic cochains of degree `n`.
pub fn cyclic_cochains(a: &HomAlgebra, n: usize) -> Subspace {
    let id = Matrix::identity(tensor::power(a.dim(), n + 1));
    kernel(&(&id - &cyclic_t(a, n).transpose()))
}

/// Class of a chain of `A^{⊗(n+1)}` in `C_n^λ`, as terms on the basis tensors
/// that survive the quotient.
pub fn lambda_class(a: &HomAlgebra, n: usize, chain: &[Scalar]) -> Vec<Term> {
    let sub = lambda_relations(a, n);
    quotient_class(&sub, chain)
        .into_iter()
        .zip(sub.non_pivots())
        .filter(|(c, _)| !c.is_zero())
        .map(|(coefficient, j)| Term {
            label: tensor::label(j, a.basis_names(), n + 1),
            coefficient,
        })
        .collect()
}

fn default_columns(n_max: usize, columns: Option<usize>) -> Result<usize> {
    let p = columns.unwrap_or(n_max + 1);
    if p < n_max + 1 {
        return Err(Error::Precondition(format!(
            "{p} columns cannot reach total degree {n_max}; need at least {}",
            n_max + 1
        )));
    }
    Ok(p)
}

fn chain_label(a: &HomAlgebra, n: i64, index: usize) -> String {
    tensor::label(index, a.basis_names(), n as usize + 1)
}

fn cochain_label(a: &HomAlgebra, n: i64, index: usize) -> String {
    format!("({})*", chain_label(a, n, index))
}

/// Rewrites representatives given in the bases of `subs` as ambient vectors.
fn lift_representatives(groups: &mut [HomologyGroup], subs: &[Subspace]) {
    for g in groups {
        let sub = &subs[g.degree as usize];
        if let Some(reps) = g.representatives.as_mut() {
            for r in reps.iter_mut() {
                *r = sub.combine(r);
            }
        }
    }
}

/// `HC_n` for `n ≤ n_max` from the quotient complex `C/(Id − t)`.
pub fn cyclic_homology_lambda(a: &HomAlgebra, n_max: usize, representatives: bool) -> Result<HomologyReport> {
    let c = build_hochschild_homology_complex(&regular_bimodule(a), n_max)?;
    let subs: Vec<Subspace> = (0..=n_max + 1)
        .into_par_iter()
        .map(|n| lambda_relations(a, n))
        .collect();
    let q = quotient_complex(&c, &subs)?;
    let groups = q.homology_range(0..=n_max as i64, representatives)?;
    let mut r = HomologyReport::new(a.name(), a.name(), "HC", "lambda", Grading::Homological)
        .with_parameter("max_degree", n_max as i64);
    r.push_groups(groups, |n, i| chain_label(a, n, subs[n as usize].non_pivots()[i]));
    Ok(r)
}

/// `HC^n` for `n ≤ n_max` from the sub-complex of cyclic cochains.
pub fn cyclic_cohomology_lambda(a: &HomAlgebra, n_max: usize, representatives: bool) -> Result<HomologyReport> {
    let w = dualize_bimodule(&regular_bimodule(a))?;
    let c = build_hochschild_cohomology_complex(&w, n_max)?;
    let subs: Vec<Subspace> = (0..=n_max + 1).into_par_iter().map(|n| cyclic_cochains(a, n)).collect();
    let sub = sub_complex(&c, &subs)?;
    let mut groups = sub.homology_range(0..=n_max as i64, representatives)?;
    lift_representatives(&mut groups, &subs);
    let mut r = HomologyReport::new(
        a.name(),
        format!("{}*", a.name()),
        "HC^",
        "lambda",
        Grading::Cohomological,
    )
    .with_parameter("max_degree", n_max as i64);
    r.push_groups(groups, |n, i| cochain_label(a, n, i));
    Ok(r)
}

/// First-quadrant cells `(p, q)` with `p ≤ columns` and `p + q ≤ top`.
fn quadrant(a: &HomAlgebra, columns: usize, top: usize) -> BTreeMap<Cell, usize> {
    let mut cells = BTreeMap::new();
    for p in 0..=columns.min(top) {
        for q in 0..=top - p {
            cells.insert((p as i64, q as i64), tensor::power(a.dim(), q + 1));
        }
    }
    cells
}

/// The truncated cyclic bicomplex, homological or cohomological.
pub fn cyclic_bicomplex(a: &HomAlgebra, n_max: usize, columns: usize, grading: Grading) -> Result<Bicomplex> {
    let top = n_max + 1;
    let ops = Operators::new(a, top + 1);
    let cells = quadrant(a, columns, top);
    match grading {
        Grading::Homological => Bicomplex::from_fn(grading, cells, |c| ops.vertical(c), |c| ops.horizontal(c)),
        Grading::Cohomological => Bicomplex::from_fn(grading, cells, |c| ops.co_vertical(c), |c| ops.co_horizontal(c)),
    }
}

fn total_label(bc: &Bicomplex, a: &HomAlgebra, n: i64, index: usize, dual: bool) -> String {
    let ((p, q), offset, _) = bc
        .total_layout(n)
        .into_iter()
        .find(|&(_, off, dim)| (off..off + dim).contains(&index))
        .expect("index inside the total space");
    let l = if dual {
        cochain_label(a, q, index - offset)
    } else {
        chain_label(a, q, index - offset)
    };
    format!("[{p},{q}] {l}")
}

fn bicomplex_report(
    a: &HomAlgebra,
    n_max: usize,
    columns: Option<usize>,
    grading: Grading,
    representatives: bool,
) -> Result<HomologyReport> {
    let columns = default_columns(n_max, columns)?;
    let bc = cyclic_bicomplex(a, n_max, columns, grading)?;
    let tot = bc.total_complex()?;
    let groups = tot.homology_range(0..=n_max as i64, representatives)?;
    let dual = grading == Grading::Cohomological;
    let (theory, coefficients) = if dual {
        ("HC^", format!("{}*", a.name()))
    } else {
        ("HC", a.name().to_string())
    };
    let mut r = HomologyReport::new(a.name(), coefficients, theory, "bicomplex", grading)
        .with_parameter("max_degree", n_max as i64)
        .with_parameter("columns", columns as i64);
    r.push_groups(groups, |n, i| total_label(&bc, a, n, i, dual));
    Ok(r)
}

/// `HC_n` for `n ≤ n_max` from the total complex of the cyclic bicomplex on
/// columns `0..=columns` (default `n_max + 1`).
pub fn cyclic_homology_bicomplex(
    a: &HomAlgebra,
    n_max: usize,
    columns: Option<usize>,
    representatives: bool,
) -> Result<HomologyReport> {
    bicomplex_report(a, n_max, columns, Grading::Homological, representatives)
}

pub fn cyclic_cohomology_bicomplex(
    a: &HomAlgebra,
    n_max: usize,
    columns: Option<usize>,
    representatives: bool,
) -> Result<HomologyReport> {
    bicomplex_report(a, n_max, columns, Grading::Cohomological, representatives)
}

pub fn cyclic_homology(
    a: &HomAlgebra,
    n_max: usize,
    method: Method,
    columns: Option<usize>,
    representatives: bool,
) -> Result<CyclicReport> {
    let cols = default_columns(n_max, columns)?;
    let (lambda, bicomplex) = rayon::join(
        || {
            method
                .lambda()
                .then(|| cyclic_homology_lambda(a, n_max, representatives))
                .transpose()
        },
        || {
            method
                .bicomplex()
                .then(|| cyclic_homology_bicomplex(a, n_max, Some(cols), representatives))
                .transpose()
        },
    );
    Ok(CyclicReport::assemble(
        a,
        "HC",
        Grading::Homological,
        n_max,
        cols,
        lambda?,
        bicomplex?,
    ))
}

pub fn cyclic_cohomology(
    a: &HomAlgebra,
    n_max: usize,
    method: Method,
    columns: Option<usize>,
    representatives: bool,
) -> Result<CyclicReport> {
    let cols = default_columns(n_max, columns)?;
    let (lambda, bicomplex) = rayon::join(
        || {
            method
                .lambda()
                .then(|| cyclic_cohomology_lambda(a, n_max, representatives))
                .transpose()
        },
        || {
            method
                .bicomplex()
                .then(|| cyclic_cohomology_bicomplex(a, n_max, Some(cols), representatives))
                .transpose()
        },
    );
    Ok(CyclicReport::assemble(
        a,
        "HC^",
        Grading::Cohomological,
        n_max,
        cols,
        lambda?,
        bicomplex?,
    ))
}

/// Cells `(p, q)` with `0 < p < last` in their row whose row homology is
/// nonzero, with the offending dimension. Empty when every row is exact away
/// from its ends.
pub fn row_defects(a: &HomAlgebra, n_max: usize, columns: usize) -> Result<Vec<(Cell, usize)>> {
    let bc = cyclic_bicomplex(a, n_max, columns, Grading::Homological)?;
    let rows: Vec<i64> = bc
        .cells()
        .keys()
        .map(|c| c.1)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let found: Result<Vec<Vec<(Cell, usize)>>> = rows
        .par_iter()
        .map(|&q| {
            let row = bc.row_complex(q)?;
            let (lo, hi) = (row.min_degree(), row.max_degree());
            if hi - lo < 2 {
                return Ok(vec![]);
            }
            Ok(row
                .homology_range(lo + 1..=hi - 1, false)?
                .into_iter()
                .filter(|g| g.betti != 0)
                .map(|g| ((g.degree, q), g.betti))
                .collect())
        })
        .collect();
    Ok(found?.into_iter().flatten().collect())
}
