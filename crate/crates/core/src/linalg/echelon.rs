//! Fraction-free row reduction.
//!
//! Rational input rows are cleared of denominators and reduced over the
//! integers: a row update is `a·row_i − b·row_pivot` with `a, b` the pivot
//! entries divided by their gcd, after which the row is divided by its
//! content. Entries therefore stay primitive and small for the structured
//! operator matrices this crate produces. Elimination first runs on `i128`
//! with checked arithmetic and restarts on `BigInt` if anything overflows.
//!
//! Pivoting is deterministic: columns are scanned left to right and the first
//! row (in index order) with a nonzero entry becomes the pivot.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{Matrix, Scalar};

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

trait ExactInt: Clone + Sized {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    /// `a·x − b·y`, or `None` on overflow.
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn mul(a: &Self, x: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div(&self, g: &Self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl ExactInt for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn mul(a: &Self, x: &Self) -> Option<Self> {
        a.checked_mul(*x)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div(&self, g: &Self) -> Self {
        self / g
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn mul(a: &Self, x: &Self) -> Option<Self> {
        Some(a * x)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div(&self, g: &Self) -> Self {
        self / g
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Scales each row by the lcm of its denominators.
fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row
                .iter()
                .filter(|x| !x.is_zero())
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| {
                    if x.is_zero() {
                        BigInt::zero()
                    } else {
                        x.numer() * (&lcm / x.denom())
                    }
                })
                .collect()
        })
        .collect()
}

fn narrow(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>())
        .collect()
}

fn remove_content<T: ExactInt>(row: &mut [T]) {
    let mut g: Option<T> = None;
    for x in row.iter().filter(|x| !x.is_zero()) {
        let next = match &g {
            None => x.gcd(x),
            Some(g) => g.gcd(x),
        };
        if next.is_one() {
            return;
        }
        g = Some(next);
    }
    if let Some(g) = g {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = x.div(&g);
            }
        }
    }
}

/// Row-reduces `rows` in place and returns the pivot columns, or `None` if
/// the integer type overflowed. With `full`, rows above each pivot are
/// cleared too (Gauss–Jordan).
fn eliminate<T: ExactInt>(rows: &mut [Vec<T>], ncols: usize, full: bool) -> Option<Vec<usize>> {
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().expect("pivot row exists");
        let support: Vec<usize> = (0..ncols).filter(|&k| !pivot_row[k].is_zero()).collect();
        let pivot = pivot_row[c].clone();

        let update = |row: &mut Vec<T>| -> Option<()> {
            if row[c].is_zero() {
                return Some(());
            }
            let g = pivot.gcd(&row[c]);
            let a = pivot.div(&g);
            let b = row[c].div(&g);
            if a.is_one() {
                for &k in &support {
                    row[k] = T::mul_sub(&a, &row[k], &b, &pivot_row[k])?;
                }
            } else {
                for k in 0..ncols {
                    if !pivot_row[k].is_zero() {
                        row[k] = T::mul_sub(&a, &row[k], &b, &pivot_row[k])?;
                    } else if !row[k].is_zero() {
                        row[k] = T::mul(&a, &row[k])?;
                    }
                }
            }
            remove_content(row);
            Some(())
        };

        for row in below.iter_mut() {
            update(row)?;
        }
        if full {
            for row in head.iter_mut() {
                update(row)?;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Some(pivots)
}

fn run(m: &Matrix, full: bool) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let big = integer_rows(m);
    if let Some(mut small) = narrow(&big) {
        if let Some(pivots) = eliminate(&mut small, m.cols(), full) {
            let rows = small.iter().map(|r| r.iter().map(ExactInt::to_big).collect()).collect();
            return (rows, pivots);
        }
    }
    let mut big = big;
    let pivots = eliminate(&mut big, m.cols(), full).expect("BigInt elimination cannot overflow");
    (big, pivots)
}

/// Reduced row-echelon form, pivot columns (increasing) and rank.
pub fn rref(m: &Matrix) -> Rref {
    let (rows, pivots) = run(m, true);
    let rank = pivots.len();
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for (r, &c) in pivots.iter().enumerate() {
        let p = rows[r][c].clone();
        for (k, x) in rows[r].iter().enumerate() {
            if !ExactInt::is_zero(x) {
                out[(r, k)] = Scalar::new(x.clone(), p.clone());
            }
        }
    }
    Rref {
        matrix: out,
        pivots,
        rank,
    }
}

/// Rank by forward elimination only.
pub fn rank(m: &Matrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    run(m, false).1.len()
}
