//! Periodic cyclic (co)homology from finite windows of the two-sided bicomplex.
//!
//! Window `P` keeps columns `p ≥ −P`, rows `q ≥ 0`, and cells whose total
//! degree is within one of the requested range. For homology the windows form
//! an inverse system of quotients (the product totalization is their limit);
//! for cohomology a direct system of sub-complexes. Raw homology of a window
//! carries classes sitting on the cut column, so each degree reports the rank
//! of the comparison map between windows `P + 1` and `P`, and is flagged stable
//! when that rank is the same one step further out.

use std::collections::BTreeMap;

use serde::Serialize;

use super::Operators;
use crate::algebra::HomAlgebra;
use crate::complexes::{Bicomplex, Cell, ChainComplex, Grading, HomologyReport};
use crate::error::{Error, Result};
use crate::linalg::{image, kernel, Scalar, Subspace};
use crate::tensor;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicDegree {
    pub degree: i64,
    /// Raw homology of window `P`.
    pub window_betti: usize,
    /// Rank of the comparison map between windows `P` and `P + 1`.
    pub betti: usize,
    /// Same between windows `P + 1` and `P + 2`.
    pub betti_wider: usize,
    pub stabilized: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodicReport {
    pub algebra: String,
    pub theory: String,
    pub grading: Grading,
    pub window: usize,
    pub degrees: Vec<PeriodicDegree>,
    /// Common betti number of the stabilized even degrees, if they agree.
    pub even: Option<usize>,
    /// Same for odd degrees.
    pub odd: Option<usize>,
    /// Raw homology of windows `P` and `P + 1`.
    pub runs: [HomologyReport; 2],
}

impl PeriodicReport {
    pub fn all_stabilized(&self) -> bool {
        self.degrees.iter().all(|d| d.stabilized)
    }

    /// `true` when stabilized betti numbers depend only on the parity of the degree.
    pub fn parity_consistent(&self) -> bool {
        [0, 1].iter().all(|&r| {
            let mut values = self
                .degrees
                .iter()
                .filter(|d| d.stabilized && d.degree.rem_euclid(2) == r)
                .map(|d| d.betti);
            match values.next() {
                None => true,
                Some(first) => values.all(|v| v == first),
            }
        })
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
            "{} of {} (windows from column −{w} and −{w1})",
            self.theory,
            self.algebra,
            w = self.window,
            w1 = self.window + 1
        );
        let _ = writeln!(
            s,
            "{:>6} {:>6} {:>6} {:>6} {:>10}",
            "degree", "window", "betti", "wider", "stabilized"
        );
        for d in &self.degrees {
            let _ = writeln!(
                s,
                "{:>6} {:>6} {:>6} {:>6} {:>10}",
                d.degree,
                d.window_betti,
                d.betti,
                d.betti_wider,
                if d.stabilized { "yes" } else { "no" }
            );
        }
        let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        let _ = writeln!(s, "even: {}, odd: {}", show(self.even), show(self.odd));
        s
    }
}

/// Cells `(p, q)` with `p ≥ −window`, `q ≥ 0` and `lo ≤ p + q ≤ hi`.
fn window_cells(a: &HomAlgebra, window: usize, lo: i64, hi: i64) -> BTreeMap<Cell, usize> {
    let mut cells = BTreeMap::new();
    for p in -(window as i64)..=hi {
        for total in lo.max(p)..=hi {
            let q = total - p;
            cells.insert((p, q), tensor::power(a.dim(), q as usize + 1));
        }
    }
    cells
}

struct Window {
    bicomplex: Bicomplex,
    total: ChainComplex,
}

fn window(a: &HomAlgebra, ops: &Operators, window: usize, lo: i64, hi: i64, grading: Grading) -> Result<Window> {
    let cells = window_cells(a, window, lo, hi);
    let bicomplex = match grading {
        Grading::Homological => Bicomplex::from_fn(grading, cells, |c| ops.vertical(c), |c| ops.horizontal(c))?,
        Grading::Cohomological => Bicomplex::from_fn(grading, cells, |c| ops.co_vertical(c), |c| ops.co_horizontal(c))?,
    };
    let total = bicomplex.total_complex()?;
    Ok(Window { bicomplex, total })
}

/// Rank of the map on degree-`n` homology between `narrow` (columns `≥ −P`)
/// and `wide` (columns `≥ −P−1`): projection for homology, inclusion for cohomology.
fn comparison_rank(narrow: &Window, wide: &Window, n: i64) -> usize {
    let cut = wide
        .bicomplex
        .total_layout(n)
        .first()
        .filter(|(cell, _, _)| !narrow.bicomplex.cells().contains_key(cell))
        .map_or(0, |e| e.2);
    let (from, to) = match narrow.total.grading() {
        Grading::Homological => (wide, narrow),
        Grading::Cohomological => (narrow, wide),
    };
    let cycles = kernel(&from.total.differential(n));
    let moved: Vec<Vec<Scalar>> = cycles
        .basis()
        .iter()
        .map(|z| match narrow.total.grading() {
            Grading::Homological => z[cut..].to_vec(),
            Grading::Cohomological => {
                let mut v = vec![Scalar::zero(); cut];
                v.extend(z.iter().cloned());
                v
            }
        })
        .collect();
    let boundaries = image(&to.total.incoming(n));
    Subspace::span(to.total.dim(n), &moved).sum(&boundaries).dim() - boundaries.dim()
}

fn periodic(
    a: &HomAlgebra,
    p: usize,
    degrees: std::ops::RangeInclusive<i64>,
    grading: Grading,
) -> Result<PeriodicReport> {
    if degrees.is_empty() {
        return Err(Error::Precondition("empty degree range".into()));
    }
    let (lo, hi) = (*degrees.start() - 1, *degrees.end() + 1);
    let ops = Operators::new(a, (hi + p as i64 + 3).max(0) as usize);
    let windows: Result<Vec<Window>> = {
        use rayon::prelude::*;
        (p..=p + 2)
            .into_par_iter()
            .map(|w| window(a, &ops, w, lo, hi, grading))
            .collect()
    };
    let windows = windows?;
    let theory = if grading == Grading::Homological { "HP" } else { "HP^" };
    let runs: Vec<HomologyReport> = windows[..2]
        .iter()
        .zip([p, p + 1])
        .map(|(w, size)| -> Result<HomologyReport> {
            let groups = w.total.homology_range(degrees.clone(), false)?;
            let mut r = HomologyReport::new(a.name(), a.name(), theory, "window", grading)
                .with_parameter("window", size as i64);
            r.push_groups(groups, |_, i| i.to_string());
            Ok(r)
        })
        .collect::<Result<_>>()?;
    let rows: Vec<PeriodicDegree> = degrees
        .clone()
        .map(|n| {
            let betti = comparison_rank(&windows[0], &windows[1], n);
            let betti_wider = comparison_rank(&windows[1], &windows[2], n);
            PeriodicDegree {
                degree: n,
                window_betti: runs[0].betti_at(n).unwrap_or(0),
                betti,
                betti_wider,
                stabilized: betti == betti_wider,
            }
        })
        .collect();
    let parity = |r: i64| {
        let values: Vec<usize> = rows
            .iter()
            .filter(|d| d.stabilized && d.degree.rem_euclid(2) == r)
            .map(|d| d.betti)
            .collect();
        match values.split_first() {
            Some((first, rest)) if rest.iter().all(|v| v == first) => Some(*first),
            _ => None,
        }
    };
    let [narrow, wide]: [HomologyReport; 2] = runs.try_into().expect("two runs");
    Ok(PeriodicReport {
        algebra: a.name().to_string(),
        theory: theory.to_string(),
        grading,
        window: p,
        even: parity(0),
        odd: parity(1),
        degrees: rows,
        runs: [narrow, wide],
    })
}

pub fn periodic_homology(
    a: &HomAlgebra,
    window: usize,
    degrees: std::ops::RangeInclusive<i64>,
) -> Result<PeriodicReport> {
    periodic(a, window, degrees, Grading::Homological)
}

pub fn periodic_cohomology(
    a: &HomAlgebra,
    window: usize,
    degrees: std::ops::RangeInclusive<i64>,
) -> Result<PeriodicReport> {
    periodic(a, window, degrees, Grading::Cohomological)
}
