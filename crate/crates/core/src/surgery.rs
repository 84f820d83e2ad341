//! Cutting and gluing integral friezes.
//!
//! All three operations build two seed columns and complete them, so each
//! result has its seed columns at positions 0 and 1. Outputs are verified
//! in full before they are returned.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::json;
use thiserror::Error;

use crate::exact::{congruent_one, mod_floor};
use crate::frieze::{complete_from_integer_columns, Fragment, FriezeError};

/// The pair `x = rows[row][col]`, `y = rows[row][col + 1]` (row 1-based)
/// with `u`, `v` directly below them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CutSite {
    pub row: usize,
    pub col: usize,
}

/// Which congruence failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// `u ≡ 1 (mod y)`
    UModY,
    /// `v ≡ 1 (mod x)`
    VModX,
    /// `r ≡ 1 (mod y)`
    RModY,
    /// `s ≡ 1 (mod x)`
    SModX,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::UModY => "u = 1 mod y",
            Condition::VModX => "v = 1 mod x",
            Condition::RModY => "r = 1 mod y",
            Condition::SModX => "s = 1 mod x",
        })
    }
}

/// Everything needed to replay a failed operation.
#[derive(Debug, Clone, PartialEq)]
pub struct ReproBundle {
    pub operation: &'static str,
    pub inputs: serde_json::Value,
    pub seed_columns: (Vec<BigInt>, Vec<BigInt>),
    pub detail: String,
}

impl ReproBundle {
    pub fn to_json(&self) -> serde_json::Value {
        let col = |c: &Vec<BigInt>| c.iter().map(|v| v.to_string()).collect::<Vec<_>>();
        json!({
            "operation": self.operation,
            "inputs": self.inputs,
            "seed_columns": [col(&self.seed_columns.0), col(&self.seed_columns.1)],
            "detail": self.detail,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurgeryError {
    #[error("ConditionViolated: {which} fails, residue {residue}")]
    ConditionViolated { which: Condition, residue: BigInt },
    #[error("PairMismatch: bottom pair ({}, {}) of the upper fragment differs from top pair ({}, {}) of the lower", .upper.0, .upper.1, .lower.0, .lower.1)]
    PairMismatch { upper: (BigInt, BigInt), lower: (BigInt, BigInt) },
    #[error("InvalidSite: {0}")]
    InvalidSite(String),
    #[error("InternalContradiction: {}", .0.detail)]
    InternalContradiction(Box<ReproBundle>),
}

fn check(which: Condition, value: &BigInt, modulus: &BigInt) -> Result<(), SurgeryError> {
    if congruent_one(value, modulus) {
        Ok(())
    } else {
        Err(SurgeryError::ConditionViolated { which, residue: mod_floor(value, modulus) })
    }
}

fn column_slice(f: &Fragment, col: usize, rows: std::ops::Range<usize>) -> Vec<BigInt> {
    f.column(col as isize)[rows].to_vec()
}

fn check_col(f: &Fragment, col: usize, what: &str) -> Result<(), SurgeryError> {
    if col >= f.period() {
        return Err(SurgeryError::InvalidSite(format!("{what} column {col} not in 0..{}", f.period())));
    }
    Ok(())
}

/// Completes and re-verifies, reporting any failure as an internal
/// contradiction.
fn finish(
    operation: &'static str,
    inputs: serde_json::Value,
    col0: Vec<BigInt>,
    col1: Vec<BigInt>,
) -> Result<Fragment, SurgeryError> {
    let contradiction = |detail: String, col0: Vec<BigInt>, col1: Vec<BigInt>| {
        SurgeryError::InternalContradiction(Box::new(ReproBundle {
            operation,
            inputs: inputs.clone(),
            seed_columns: (col0, col1),
            detail,
        }))
    };
    match complete_from_integer_columns(&col0, &col1) {
        Ok(f) => {
            let violations = f.check_local_rule();
            if violations.is_empty() {
                Ok(f)
            } else {
                Err(contradiction(format!("{} local rule violations in output", violations.len()), col0, col1))
            }
        }
        Err(e) => Err(contradiction(e.to_string(), col0, col1)),
    }
}

/// Stacks columns `(c1, c1+1)` of `f1`, a pair of ones, and columns
/// `(c2, c2+1)` of `f2`; the result has width `m + l + 1`.
pub fn glue_over_ones(f1: &Fragment, c1: usize, f2: &Fragment, c2: usize) -> Result<Fragment, SurgeryError> {
    check_col(f1, c1, "upper")?;
    check_col(f2, c2, "lower")?;
    let stack = |k: usize| {
        let mut col = f1.column((c1 + k) as isize);
        col.push(BigInt::one());
        col.extend(f2.column((c2 + k) as isize));
        col
    };
    let inputs = json!({"upper": f1.to_json_value(), "c1": c1, "lower": f2.to_json_value(), "c2": c2});
    finish("glue_over_ones", inputs, stack(0), stack(1))
}

/// Seeds of the cut at `site` without checking the congruences: columns
/// `col`, `col + 1` truncated to rows `1..=row`, then completed.
pub fn truncate_and_complete(f: &Fragment, site: CutSite) -> Result<Fragment, FriezeError> {
    complete_from_integer_columns(&column_slice(f, site.col, 0..site.row), &column_slice(f, site.col + 1, 0..site.row))
}

fn check_site(f: &Fragment, site: CutSite) -> Result<(), SurgeryError> {
    if site.row == 0 || site.row >= f.width() {
        return Err(SurgeryError::InvalidSite(format!("row {} not in 1..{}", site.row, f.width())));
    }
    check_col(f, site.col, "cut")
}

/// The four values `(x, y, u, v)` at a site.
pub fn site_values(f: &Fragment, site: CutSite) -> (BigInt, BigInt, BigInt, BigInt) {
    let c = site.col as isize;
    (f.entry(site.row, c), f.entry(site.row, c + 1), f.entry(site.row + 1, c), f.entry(site.row + 1, c + 1))
}

/// Whether `u ≡ 1 (mod y)` and `v ≡ 1 (mod x)` hold at `site`.
pub fn cut_conditions(f: &Fragment, site: CutSite) -> Result<(), SurgeryError> {
    let (x, y, u, v) = site_values(f, site);
    check(Condition::UModY, &u, &y)?;
    check(Condition::VModX, &v, &x)
}

/// Keeps rows `1..=row` of columns `col`, `col + 1` and completes them to a
/// frieze of width `row`. Fails exactly when no integral cut exists.
///
/// The completed frieze must also agree with `f` on the triangle above the
/// pair that the two seed columns determine on their own.
pub fn cut_above(f: &Fragment, site: CutSite) -> Result<Fragment, SurgeryError> {
    check_site(f, site)?;
    cut_conditions(f, site)?;
    let col0 = column_slice(f, site.col, 0..site.row);
    let col1 = column_slice(f, site.col + 1, 0..site.row);
    let inputs = json!({"fragment": f.to_json_value(), "row": site.row, "col": site.col});
    let out = finish("cut_above", inputs.clone(), col0.clone(), col1.clone())?;
    let c = site.col as isize;
    for k in 1..site.row {
        for r in 1..=site.row - k {
            let right = out.entry(r, 1 + k as isize) == f.entry(r, c + 1 + k as isize);
            let left = out.entry(r, -(k as isize)) == f.entry(r, c - k as isize);
            if !right || !left {
                return Err(SurgeryError::InternalContradiction(Box::new(ReproBundle {
                    operation: "cut_above",
                    inputs,
                    seed_columns: (col0, col1),
                    detail: format!("cut disagrees with the original above the pair at row {r}, offset {k}"),
                })));
            }
        }
    }
    Ok(out)
}

/// Mirror image of [`cut_above`]: keeps rows `row..=m` and completes them.
pub fn cut_below(f: &Fragment, site: CutSite) -> Result<Fragment, SurgeryError> {
    let flipped = flip_rows(f);
    let m = f.width();
    if site.row < 2 || site.row > m {
        return Err(SurgeryError::InvalidSite(format!("row {} not in 2..={m}", site.row)));
    }
    cut_above(&flipped, CutSite { row: m + 1 - site.row, col: site.col }).map(|g| flip_rows(&g))
}

fn flip_rows(f: &Fragment) -> Fragment {
    let rows = f.rows().iter().rev().cloned().collect();
    Fragment::new(f.width(), rows).expect("same shape")
}

/// Glues `f1` on top of `f2` over the pair `(x, y)` that is the bottom row
/// of `f1` at `(c1, c1+1)` and the top row of `f2` at `(c2, c2+1)`. The
/// result has width `m + l - 1`.
pub fn glue_over_pair(f1: &Fragment, c1: usize, f2: &Fragment, c2: usize) -> Result<Fragment, SurgeryError> {
    check_col(f1, c1, "upper")?;
    check_col(f2, c2, "lower")?;
    if f1.width() == 0 || f2.width() == 0 {
        return Err(SurgeryError::InvalidSite("both fragments need a nontrivial row".into()));
    }
    let (m, l) = (f1.width(), f2.width());
    let (a, b) = (c1 as isize, c2 as isize);
    let upper = (f1.entry(m, a), f1.entry(m, a + 1));
    let lower = (f2.entry(1, b), f2.entry(1, b + 1));
    if upper != lower {
        return Err(SurgeryError::PairMismatch { upper, lower });
    }
    let (x, y) = upper;
    let (r, s) = (f1.entry(m - 1, a), f1.entry(m - 1, a + 1));
    let (u, v) = (f2.entry(2, b), f2.entry(2, b + 1));
    check(Condition::UModY, &u, &y)?;
    check(Condition::RModY, &r, &y)?;
    check(Condition::VModX, &v, &x)?;
    check(Condition::SModX, &s, &x)?;
    let stack = |k: usize| {
        let mut col = f1.column((c1 + k) as isize);
        col.extend(column_slice(f2, c2 + k, 1..l));
        col
    };
    let inputs = json!({"upper": f1.to_json_value(), "c1": c1, "lower": f2.to_json_value(), "c2": c2});
    finish("glue_over_pair", inputs, stack(0), stack(1))
}

/// Every site whose pair reads `(x, y)`, row-major.
pub fn find_pair(f: &Fragment, x: &BigInt, y: &BigInt) -> Vec<CutSite> {
    let mut out = Vec::new();
    for row in 1..=f.width() {
        for col in 0..f.period() {
            let c = col as isize;
            if &f.entry(row, c) == x && &f.entry(row, c + 1) == y {
                out.push(CutSite { row, col });
            }
        }
    }
    out
}

/// Column pairs `(c1, c2)` where the bottom row of `f1` and the top row of
/// `f2` both read `(x, y)`.
pub fn find_glue_seams(f1: &Fragment, f2: &Fragment, x: &BigInt, y: &BigInt) -> Vec<(usize, usize)> {
    let bottom: Vec<usize> = find_pair(f1, x, y).into_iter().filter(|s| s.row == f1.width()).map(|s| s.col).collect();
    let top: Vec<usize> = find_pair(f2, x, y).into_iter().filter(|s| s.row == 1).map(|s| s.col).collect();
    bottom.iter().flat_map(|&a| top.iter().map(move |&b| (a, b))).collect()
}
