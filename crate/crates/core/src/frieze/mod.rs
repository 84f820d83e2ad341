//! Closed 2-frieze fragments.
//!
//! # Grid convention
//!
//! A fragment of width `m` is stored as an `m × 2n` matrix (`n = m + 4`).
//! Row `r` (1-based, `1..=m`) is the `r`-th nontrivial row below the upper
//! border of ones; rows `0` and `m + 1` are the virtual borders and read as
//! `1`. Columns are taken modulo `2n`. Integer and half-integer diagonals
//! alternate across columns, and the entry `v(i, j)` lives at
//!
//! ```text
//! row = i - j + 1,    col = i + j
//! ```
//!
//! so `v(0,0)` is row 1, column 0. In this layout the local rule reads
//!
//! ```text
//! center = left * right - above * below
//! ```
//!
//! at every cell.

mod index;
mod io;
mod symbolic;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{as_integer, ExactRing, LaurentError};

pub use index::HalfInt;
pub use index::diagonal_coordinates;
pub use symbolic::{cluster_from_columns, complete_symbolic, seed_columns, seed_layout, SymbolicFragment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FriezeError {
    #[error("Shape: {0}")]
    Shape(String),
    #[error("NonPositive: entry {value} at row {row}, column {col}")]
    NonPositive { row: usize, col: usize, value: BigRational },
    #[error("DivisionByZero: entry at row {row}, column {col} is zero")]
    DivisionByZero { row: usize, col: usize },
    #[error("NonIntegral: entry {value} at row {row}, column {col}")]
    NonIntegral { row: usize, col: usize, value: BigRational },
    #[error("NotClosed: column {col} does not reproduce seed column {seed_col}")]
    NotClosed { col: usize, seed_col: usize },
    #[error("NotDivisible at row {row}, column {col}: {source}")]
    NotDivisible { row: usize, col: usize, source: LaurentError },
    #[error("IndexOutOfStripe: ({i}, {j}) lies outside -1 <= i-j <= {width}")]
    IndexOutOfStripe { i: HalfInt, j: HalfInt, width: usize },
    #[error("IndexParity: ({i}, {j}) mixes integer and half-integer coordinates")]
    IndexParity { i: HalfInt, j: HalfInt },
    #[error("Parse: {0}")]
    Parse(String),
}

/// One local-rule failure: `lhs` is the stored entry, `rhs` the value the rule demands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub row: usize,
    pub col: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// One period of an integral closed 2-frieze.
///
/// Construction checks shape and positivity only; the local rule is
/// checked by [`Fragment::check_local_rule`]. Equality is entrywise on the
/// stored window. The derived ordering is row-major lexicographic, which
/// is the order used for canonical forms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fragment {
    width: usize,
    rows: Vec<Vec<BigInt>>,
}

impl Fragment {
    pub fn new(width: usize, rows: Vec<Vec<BigInt>>) -> Result<Self, FriezeError> {
        let period = period_of(width);
        if rows.len() != width {
            return Err(FriezeError::Shape(format!("expected {} rows, got {}", width, rows.len())));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != period {
                return Err(FriezeError::Shape(format!(
                    "row {} has {} entries, expected period {}",
                    r + 1,
                    row.len(),
                    period
                )));
            }
            if let Some((c, v)) = row.iter().enumerate().find(|(_, v)| !v.is_positive()) {
                return Err(FriezeError::NonPositive {
                    row: r + 1,
                    col: c,
                    value: BigRational::from_integer(v.clone()),
                });
            }
        }
        Ok(Fragment { width, rows })
    }

    pub fn from_rows_i64(rows: &[&[i64]]) -> Result<Self, FriezeError> {
        let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let width = rows.len();
        Self::new(width, rows)
    }

    /// The width-0 frieze: two adjacent rows of ones.
    pub fn trivial() -> Self {
        Fragment { width: 0, rows: Vec::new() }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// `n = m + 4`.
    pub fn n(&self) -> usize {
        self.width + 4
    }

    /// `2n`, the number of stored columns.
    pub fn period(&self) -> usize {
        period_of(self.width)
    }

    /// Nontrivial rows, top to bottom.
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<BigInt>> {
        self.rows
    }

    /// Entry at `row` in `0..=m+1` (borders read as one) and any column,
    /// taken modulo the period.
    pub fn entry(&self, row: usize, col: isize) -> BigInt {
        assert!(row <= self.width + 1, "row {} outside 0..={}", row, self.width + 1);
        if row == 0 || row == self.width + 1 {
            return BigInt::one();
        }
        self.rows[row - 1][self.wrap(col)].clone()
    }

    pub(crate) fn wrap(&self, col: isize) -> usize {
        col.rem_euclid(self.period() as isize) as usize
    }

    /// Column `col` (modulo the period), rows `1..=m`.
    pub fn column(&self, col: isize) -> Vec<BigInt> {
        let c = self.wrap(col);
        self.rows.iter().map(|r| r[c].clone()).collect()
    }

    /// Cyclic shift: column `c` of the result is column `c + k` of `self`.
    pub fn rotate(&self, k: isize) -> Self {
        let p = self.period() as isize;
        let rows = self
            .rows
            .iter()
            .map(|row| (0..p).map(|c| row[(c + k).rem_euclid(p) as usize].clone()).collect())
            .collect();
        Fragment { width: self.width, rows }
    }

    /// All cells where `center = left * right - above * below` fails.
    pub fn check_local_rule(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for r in 1..=self.width {
            for c in 0..self.period() {
                let ci = c as isize;
                let rhs = self.entry(r, ci - 1) * self.entry(r, ci + 1) - self.entry(r - 1, ci) * self.entry(r + 1, ci);
                let lhs = &self.rows[r - 1][c];
                if *lhs != rhs {
                    out.push(Violation { row: r, col: c, lhs: lhs.clone(), rhs });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.check_local_rule().is_empty()
    }

    /// Smallest divisor `p` of `2n` such that shifting every row by `p`
    /// columns is the identity.
    pub fn minimal_period(&self) -> usize {
        let period = self.period();
        (1..=period)
            .filter(|p| period % p == 0)
            .find(|&p| self.rows.iter().all(|row| (0..period).all(|c| row[c] == row[(c + p) % period])))
            .unwrap_or(period)
    }

    /// Entry `v(i, j)` in diagonal coordinates, `-1 <= i - j <= m`.
    pub fn entry_at(&self, i: HalfInt, j: HalfInt) -> Result<BigInt, FriezeError> {
        let (row, col) = index::grid_position(self.width, i, j)?;
        Ok(self.entry(row, col))
    }

    /// The largest entry.
    pub fn max_entry(&self) -> BigInt {
        self.rows.iter().flatten().max().cloned().unwrap_or_else(BigInt::one)
    }
}

impl fmt::Debug for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Fragment(width {}, period {})", self.width, self.period())?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn period_of(width: usize) -> usize {
    2 * (width + 4)
}

/// Rightward propagation from two seed columns, producing `ncols` columns
/// (`ncols >= 2`) of rows `1..=m`:
///
/// `x[r][c+1] = (x[r][c] + x[r-1][c] * x[r+1][c]) / x[r][c-1]`.
pub(crate) fn propagate_generic<T: ExactRing>(
    col0: &[T],
    col1: &[T],
    ncols: usize,
) -> Result<Vec<Vec<T>>, FriezeError> {
    let m = col0.len();
    assert_eq!(m, col1.len(), "seed columns differ in height");
    assert!(ncols >= 2);
    let mut rows: Vec<Vec<T>> = (0..m)
        .map(|r| {
            let mut v = Vec::with_capacity(ncols);
            v.push(col0[r].clone());
            v.push(col1[r].clone());
            v
        })
        .collect();
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if v.is_zero_value() {
                return Err(FriezeError::DivisionByZero { row: r + 1, col: c });
            }
        }
    }
    if m == 0 {
        return Ok(rows);
    }
    let one = col0[0].unit_like();
    for c in 1..ncols - 1 {
        let next: Vec<T> = (0..m)
            .map(|r| {
                let above = if r == 0 { &one } else { &rows[r - 1][c] };
                let below = if r + 1 == m { &one } else { &rows[r + 1][c] };
                let numer = rows[r][c].plus(&above.times(below));
                numer.divide(&rows[r][c - 1]).map_err(|e| match e {
                    LaurentError::DivisionByZero => FriezeError::DivisionByZero { row: r + 1, col: c - 1 },
                    source => FriezeError::NotDivisible { row: r + 1, col: c + 1, source },
                })
            })
            .collect::<Result<_, _>>()?;
        for (r, v) in next.into_iter().enumerate() {
            if v.is_zero_value() {
                return Err(FriezeError::DivisionByZero { row: r + 1, col: c + 1 });
            }
            rows[r].push(v);
        }
    }
    Ok(rows)
}

/// Exact rational propagation over `ncols` columns.
pub fn propagate(col0: &[BigRational], col1: &[BigRational], ncols: usize) -> Result<Vec<Vec<BigRational>>, FriezeError> {
    propagate_generic(col0, col1, ncols)
}

/// Completes a fragment from two consecutive seed columns (placed at
/// columns 0 and 1).
///
/// Propagation runs over exact rationals for `2n + 2` columns. The result
/// is rejected with the first offending cell (in propagation order) if an
/// entry is non-positive or non-integral, or if columns `2n`, `2n + 1` do
/// not reproduce the seeds.
pub fn complete_from_columns(col0: &[BigRational], col1: &[BigRational]) -> Result<Fragment, FriezeError> {
    if col0.len() != col1.len() {
        return Err(FriezeError::Shape(format!(
            "seed columns have heights {} and {}",
            col0.len(),
            col1.len()
        )));
    }
    let m = col0.len();
    let period = period_of(m);
    for (c, col) in [col0, col1].iter().enumerate() {
        if let Some((r, v)) = col.iter().enumerate().find(|(_, v)| !v.is_positive()) {
            if v.is_zero() {
                return Err(FriezeError::DivisionByZero { row: r + 1, col: c });
            }
            return Err(FriezeError::NonPositive { row: r + 1, col: c, value: v.clone() });
        }
    }
    let rows = propagate(col0, col1, period + 2)?;
    let mut non_integral = None;
    for c in 0..period + 2 {
        for r in 0..m {
            let v = &rows[r][c];
            if !v.is_positive() {
                return Err(FriezeError::NonPositive { row: r + 1, col: c, value: v.clone() });
            }
            if non_integral.is_none() && !v.is_integer() {
                non_integral = Some((r + 1, c, v.clone()));
            }
        }
    }
    if let Some((row, col, value)) = non_integral {
        return Err(FriezeError::NonIntegral { row, col, value });
    }
    for k in 0..2 {
        if (0..m).any(|r| rows[r][period + k] != rows[r][k]) {
            return Err(FriezeError::NotClosed { col: period + k, seed_col: k });
        }
    }
    let int_rows = rows
        .into_iter()
        .map(|row| row.into_iter().take(period).map(|v| as_integer(&v).expect("checked integral")).collect())
        .collect();
    Ok(Fragment { width: m, rows: int_rows })
}

/// [`complete_from_columns`] for integer seeds.
pub fn complete_from_integer_columns(col0: &[BigInt], col1: &[BigInt]) -> Result<Fragment, FriezeError> {
    let to_rat = |c: &[BigInt]| c.iter().map(|v| BigRational::from_integer(v.clone())).collect::<Vec<_>>();
    complete_from_columns(&to_rat(col0), &to_rat(col1))
}
