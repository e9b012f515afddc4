//! Connes' operator `B = (Id − t) s N` on a unital algebra and the `(b, B)`
//! bicomplex. The cyclic-module identities are checked, not assumed.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{cyclic_homology_bicomplex, Operators};
use crate::algebra::HomAlgebra;
use crate::complexes::{Bicomplex, Grading, HomologyReport};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::tensor;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnesReport {
    pub algebra: String,
    pub unit: Vec<Scalar>,
    pub max_degree: usize,
    /// Degrees `n` with `B_{n+1} B_n ≠ 0`.
    pub b_squared_failures: Vec<usize>,
    /// Degrees `n` with `b_{n+1} B_n + B_{n−1} b_n ≠ 0`.
    pub anticommutator_failures: Vec<usize>,
    /// Total homology of the `(b, B)` bicomplex, when the identities hold.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homology: Option<HomologyReport>,
    /// Per degree: does it match the cyclic bicomplex?
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agrees_with_cyclic: Option<Vec<bool>>,
}

impl ConnesReport {
    pub fn identities_hold(&self) -> bool {
        self.b_squared_failures.is_empty() && self.anticommutator_failures.is_empty()
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
            "(b, B) bicomplex of {} (max degree {})",
            self.algebra, self.max_degree
        );
        let list = |v: &[usize]| {
            if v.is_empty() {
                "none".to_string()
            } else {
                v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(", ")
            }
        };
        let _ = writeln!(s, "B² ≠ 0 in degrees: {}", list(&self.b_squared_failures));
        let _ = writeln!(s, "bB + Bb ≠ 0 in degrees: {}", list(&self.anticommutator_failures));
        if let Some(h) = &self.homology {
            s.push_str(&h.to_text());
        }
        if let Some(agree) = &self.agrees_with_cyclic {
            let _ = writeln!(s, "matches cyclic bicomplex: {}", agree.iter().all(|&x| x));
        }
        s
    }
}

/// `s: A^{⊗(n+1)} → A^{⊗(n+2)}`, `x ↦ 1 ⊗ x`.
fn extra_degeneracy(unit: &[Scalar], n: usize) -> Matrix {
    let block = tensor::power(unit.len(), n + 1);
    let mut m = Matrix::zeros(unit.len() * block, block);
    for (k, u) in unit.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
        for i in 0..block {
            m[(k * block + i, i)] = u.clone();
        }
    }
    m
}

fn operator(ops: &Operators, unit: &[Scalar], n: usize) -> Matrix {
    ops.one_minus_t(n + 1)
        .matmul(&extra_degeneracy(unit, n))
        .matmul(&ops.norm[n])
}

/// `B_n: C_n(A) → C_{n+1}(A)`. Requires a unit.
pub fn connes_operator(a: &HomAlgebra, n: usize) -> Result<Matrix> {
    let unit = a
        .find_unit()
        .ok_or_else(|| Error::Precondition(format!("{} has no unit", a.name())))?;
    Ok(operator(&Operators::new(a, n + 1), &unit, n))
}

pub fn connes_bb_bicomplex(a: &HomAlgebra, n_max: usize) -> Result<ConnesReport> {
    let unit = a
        .find_unit()
        .ok_or_else(|| Error::Precondition(format!("{} has no unit", a.name())))?;
    let top = n_max + 1;
    let ops = Operators::new(a, top + 2);
    let big_b: Vec<Matrix> = (0..=top + 1).map(|n| operator(&ops, &unit, n)).collect();
    let b_squared_failures: Vec<usize> = (0..=top)
        .filter(|&n| !big_b[n + 1].matmul(&big_b[n]).is_zero())
        .collect();
    let anticommutator_failures: Vec<usize> = (0..=top)
        .filter(|&n| {
            let mut sum = ops.b[n + 1].matmul(&big_b[n]);
            if n > 0 {
                sum = &sum + &big_b[n - 1].matmul(&ops.b[n]);
            }
            !sum.is_zero()
        })
        .collect();
    let mut report = ConnesReport {
        algebra: a.name().to_string(),
        unit,
        max_degree: n_max,
        b_squared_failures,
        anticommutator_failures,
        homology: None,
        agrees_with_cyclic: None,
    };
    if !report.identities_hold() {
        return Ok(report);
    }
    // Cell (p, q) holds C_{q−p}; b goes down, B goes left.
    let mut cells = BTreeMap::new();
    for p in 0..=top as i64 {
        for q in p..=top as i64 - p {
            cells.insert((p, q), tensor::power(a.dim(), (q - p) as usize + 1));
        }
    }
    let bc = Bicomplex::from_fn(
        Grading::Homological,
        cells,
        |(p, q)| ops.b[(q - p) as usize].clone(),
        |(p, q)| big_b[(q - p) as usize].clone(),
    )?;
    let groups = bc.total_complex()?.homology_range(0..=n_max as i64, false)?;
    let mut h = HomologyReport::new(a.name(), a.name(), "HC", "bB", Grading::Homological)
        .with_parameter("max_degree", n_max as i64);
    h.push_groups(groups, |_, i| i.to_string());
    let cyclic = cyclic_homology_bicomplex(a, n_max, None, false)?;
    report.agrees_with_cyclic = Some(h.betti().iter().zip(cyclic.betti()).map(|(x, y)| *x == y).collect());
    report.homology = Some(h);
    Ok(report)
}
