use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{ChainComplex, Grading};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Position `(p, q)`: column `p`, row `q`.
pub type Cell = (i64, i64);

/// A bicomplex on a finite set of cells. Both differentials move one step in
/// the grading's direction (vertical in `q`, horizontal in `p`), and signs are
/// already part of the stored maps, so squares anticommute and the total
/// differential is their plain sum.
#[derive(Debug, Clone)]
pub struct Bicomplex {
    grading: Grading,
    cells: BTreeMap<Cell, usize>,
    vertical: BTreeMap<Cell, Matrix>,
    horizontal: BTreeMap<Cell, Matrix>,
}

impl Bicomplex {
    /// Builds the maps leaving each cell whose target cell is present.
    pub fn from_fn(
        grading: Grading,
        cells: BTreeMap<Cell, usize>,
        vertical: impl Fn(Cell) -> Matrix + Sync,
        horizontal: impl Fn(Cell) -> Matrix + Sync,
    ) -> Result<Bicomplex> {
        let s = grading.step();
        let list: Vec<Cell> = cells.keys().copied().collect();
        let build = |dir: Cell, f: &(dyn Fn(Cell) -> Matrix + Sync)| -> Result<BTreeMap<Cell, Matrix>> {
            list.par_iter()
                .filter_map(|&(p, q)| {
                    let target = (p + dir.0, q + dir.1);
                    let tdim = *cells.get(&target)?;
                    let m = f((p, q));
                    if m.shape() != (tdim, cells[&(p, q)]) {
                        return Some(Err(Error::Shape(format!(
                            "map from cell {:?} to {:?} is {:?}, expected ({tdim}, {})",
                            (p, q),
                            target,
                            m.shape(),
                            cells[&(p, q)]
                        ))));
                    }
                    Some(Ok(((p, q), m)))
                })
                .collect()
        };
        let vertical = build((0, s), &vertical)?;
        let horizontal = build((s, 0), &horizontal)?;
        Ok(Bicomplex {
            grading,
            cells,
            vertical,
            horizontal,
        })
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn cells(&self) -> &BTreeMap<Cell, usize> {
        &self.cells
    }

    pub fn vertical(&self, c: Cell) -> Option<&Matrix> {
        self.vertical.get(&c)
    }

    pub fn horizontal(&self, c: Cell) -> Option<&Matrix> {
        self.horizontal.get(&c)
    }

    fn compose(second: Option<&Matrix>, first: Option<&Matrix>) -> Option<Matrix> {
        Some(second?.matmul(first?))
    }

    /// Checks `v² = 0`, `h² = 0` and `vh + hv = 0` on every cell.
    pub fn verify(&self) -> Result<()> {
        let s = self.grading.step();
        let cells: Vec<Cell> = self.cells.keys().copied().collect();
        let failure = cells.par_iter().find_map_first(|&(p, q)| {
            let vv = Self::compose(self.vertical.get(&(p, q + s)), self.vertical.get(&(p, q)));
            if vv.is_some_and(|m| !m.is_zero()) {
                return Some(format!("vertical² ≠ 0 at cell {:?}", (p, q)));
            }
            let hh = Self::compose(self.horizontal.get(&(p + s, q)), self.horizontal.get(&(p, q)));
            if hh.is_some_and(|m| !m.is_zero()) {
                return Some(format!("horizontal² ≠ 0 at cell {:?}", (p, q)));
            }
            if !self.cells.contains_key(&(p + s, q + s)) {
                return None;
            }
            let vh = Self::compose(self.vertical.get(&(p + s, q)), self.horizontal.get(&(p, q)));
            let hv = Self::compose(self.horizontal.get(&(p, q + s)), self.vertical.get(&(p, q)));
            let sum = match (vh, hv) {
                (Some(a), Some(b)) => &a + &b,
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => return None,
            };
            (!sum.is_zero()).then(|| format!("square at cell {:?} does not anticommute", (p, q)))
        });
        match failure {
            Some(msg) => Err(Error::IdentityFailure(msg)),
            None => Ok(()),
        }
    }

    /// Range of total degrees `p + q` present.
    pub fn total_degrees(&self) -> std::ops::RangeInclusive<i64> {
        let lo = self.cells.keys().map(|(p, q)| p + q).min().unwrap_or(0);
        let hi = self.cells.keys().map(|(p, q)| p + q).max().unwrap_or(-1);
        lo..=hi
    }

    /// Cells of total degree `n` by increasing `p`, with their offsets in `Tot_n`.
    pub fn total_layout(&self, n: i64) -> Vec<(Cell, usize, usize)> {
        let mut offset = 0;
        self.cells
            .iter()
            .filter(|((p, q), _)| p + q == n)
            .map(|(&c, &dim)| {
                let entry = (c, offset, dim);
                offset += dim;
                entry
            })
            .collect()
    }

    /// `Tot_n = ⊕_{p+q=n} cell(p, q)` with differential `vertical + horizontal`.
    pub fn total_complex(&self) -> Result<ChainComplex> {
        let degrees = self.total_degrees();
        let lo = *degrees.start();
        let s = self.grading.step();
        let layouts: BTreeMap<i64, Vec<(Cell, usize, usize)>> =
            degrees.clone().map(|n| (n, self.total_layout(n))).collect();
        let dim_of = |n: i64| layouts.get(&n).map_or(0, |l| l.iter().map(|e| e.2).sum());
        let outgoing: Vec<Matrix> = degrees
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&n| {
                let src = &layouts[&n];
                let mut m = Matrix::zeros(dim_of(n + s), dim_of(n));
                let Some(tgt) = layouts.get(&(n + s)) else {
                    return m;
                };
                let offset_of = |c: Cell| tgt.iter().find(|e| e.0 == c).map(|e| e.1);
                for &((p, q), col, _) in src {
                    if let (Some(v), Some(row)) = (self.vertical.get(&(p, q)), offset_of((p, q + s))) {
                        m.set_block(row, col, v);
                    }
                    if let (Some(h), Some(row)) = (self.horizontal.get(&(p, q)), offset_of((p + s, q))) {
                        m.set_block(row, col, h);
                    }
                }
                m
            })
            .collect();
        ChainComplex::new(self.grading, lo, outgoing)
    }

    /// Row `q` as a complex in the column index `p`.
    pub fn row_complex(&self, q: i64) -> Result<ChainComplex> {
        self.line(|c| c.1 == q, |c| c.0, &self.horizontal)
    }

    /// Column `p` as a complex in the row index `q`.
    pub fn column_complex(&self, p: i64) -> Result<ChainComplex> {
        self.line(|c| c.0 == p, |c| c.1, &self.vertical)
    }

    fn line(
        &self,
        keep: impl Fn(Cell) -> bool,
        coord: impl Fn(Cell) -> i64,
        maps: &BTreeMap<Cell, Matrix>,
    ) -> Result<ChainComplex> {
        let cells: Vec<(Cell, usize)> = self
            .cells
            .iter()
            .filter(|(&c, _)| keep(c))
            .map(|(&c, &d)| (c, d))
            .collect();
        let Some(first) = cells.first() else {
            return ChainComplex::new(self.grading, 0, vec![]);
        };
        let lo = coord(first.0);
        let len = cells.len() as i64;
        let s = self.grading.step();
        let outgoing = cells
            .iter()
            .enumerate()
            .map(|(k, &(c, d))| {
                let target = k as i64 + s;
                if !(0..len).contains(&target) {
                    return Matrix::zeros(0, d);
                }
                maps.get(&c)
                    .cloned()
                    .unwrap_or_else(|| Matrix::zeros(cells[target as usize].1, d))
            })
            .collect();
        ChainComplex::new(self.grading, lo, outgoing)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(list: &[(Cell, usize)]) -> BTreeMap<Cell, usize> {
        list.iter().copied().collect()
    }

    #[test]
    fn single_column_is_its_column_complex() {
        let d = Matrix::from_ints(&[&[1, 1]]);
        let b = Bicomplex::from_fn(
            Grading::Homological,
            cells(&[((0, 0), 1), ((0, 1), 2)]),
            |_| d.clone(),
            |_| unreachable!(),
        )
        .unwrap();
        b.verify().unwrap();
        let tot = b.total_complex().unwrap();
        assert_eq!(tot, b.column_complex(0).unwrap());
    }

    #[test]
    fn zero_horizontals_give_direct_sum() {
        let b = Bicomplex::from_fn(
            Grading::Homological,
            cells(&[((0, 0), 1), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]),
            |_| Matrix::identity(1),
            |_| Matrix::zeros(1, 1),
        )
        .unwrap();
        b.verify().unwrap();
        let tot = b.total_complex().unwrap();
        assert_eq!(tot.dims(), &[1, 2, 1]);
        let betti: Vec<usize> = tot
            .homology_range(0..=2, false)
            .unwrap()
            .iter()
            .map(|g| g.betti)
            .collect();
        // Each column is ℚ → ℚ by the identity, so acyclic; the direct sum is too.
        assert_eq!(betti, vec![0, 0, 0]);
    }

    #[test]
    fn commuting_square_is_flagged() {
        let b = Bicomplex::from_fn(
            Grading::Homological,
            cells(&[((0, 0), 1), ((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]),
            |_| Matrix::identity(1),
            |_| Matrix::identity(1),
        )
        .unwrap();
        assert!(matches!(b.verify(), Err(Error::IdentityFailure(_))));
        assert!(matches!(b.total_complex(), Err(Error::BoundarySquareNonzero { .. })));
    }

    #[test]
    fn layout_orders_by_column() {
        let b = Bicomplex::from_fn(
            Grading::Homological,
            cells(&[((0, 1), 2), ((1, 0), 3)]),
            |_| unreachable!(),
            |_| unreachable!(),
        )
        .unwrap();
        assert_eq!(b.total_layout(1), vec![((0, 1), 0, 2), ((1, 0), 2, 3)]);
    }
}
