use std::fmt;

use num_rational::BigRational;

use super::{period_of, propagate_generic, Fragment, FriezeError};
use crate::exact::{as_integer, LaurentPoly};

/// Cluster-variable numbers (1-based) sitting in the two seed columns.
///
/// Column 0 holds `x1, x_{m+2}, x3, x_{m+4}, …` and column 1 holds
/// `x_{m+1}, x2, x_{m+3}, x4, …`, top to bottom.
pub fn seed_layout(m: usize) -> (Vec<usize>, Vec<usize>) {
    let col0 = (1..=m).map(|r| if r % 2 == 1 { r } else { m + r }).collect();
    let col1 = (1..=m).map(|r| if r % 2 == 1 { m + r } else { r }).collect();
    (col0, col1)
}

/// Places a cluster `(x1, …, x_{2m})` into the two seed columns.
pub fn seed_columns<T: Clone>(values: &[T]) -> (Vec<T>, Vec<T>) {
    assert!(values.len() % 2 == 0);
    let (c0, c1) = seed_layout(values.len() / 2);
    (
        c0.iter().map(|&k| values[k - 1].clone()).collect(),
        c1.iter().map(|&k| values[k - 1].clone()).collect(),
    )
}

/// Inverse of [`seed_columns`].
pub fn cluster_from_columns<T: Clone>(col0: &[T], col1: &[T]) -> Vec<T> {
    let m = col0.len();
    let (l0, l1) = seed_layout(m);
    let mut out: Vec<Option<T>> = vec![None; 2 * m];
    for (r, &k) in l0.iter().enumerate() {
        out[k - 1] = Some(col0[r].clone());
    }
    for (r, &k) in l1.iter().enumerate() {
        out[k - 1] = Some(col1[r].clone());
    }
    out.into_iter().map(|v| v.expect("layout covers every variable")).collect()
}

/// The formal frieze `F(x1, …, x_{2m})`: one period of Laurent polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolicFragment {
    width: usize,
    rows: Vec<Vec<LaurentPoly>>,
}

impl SymbolicFragment {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn period(&self) -> usize {
        period_of(self.width)
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.rows
    }

    pub fn entry(&self, row: usize, col: isize) -> &LaurentPoly {
        &self.rows[row - 1][col.rem_euclid(self.period() as isize) as usize]
    }

    /// Substitutes `point` for `(x1, …, x_{2m})` in every entry.
    pub fn evaluate(&self, point: &[BigRational]) -> Vec<Vec<BigRational>> {
        self.rows.iter().map(|row| row.iter().map(|p| p.evaluate(point)).collect()).collect()
    }

    /// Evaluation as an integral fragment, when every value is a positive integer.
    pub fn evaluate_integral(&self, point: &[BigRational]) -> Result<Fragment, FriezeError> {
        let rows = self
            .evaluate(point)
            .into_iter()
            .enumerate()
            .map(|(r, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(c, v)| {
                        as_integer(&v).ok_or(FriezeError::NonIntegral { row: r + 1, col: c, value: v })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Fragment::new(self.width, rows)
    }

    /// Every entry satisfies the local rule over the Laurent ring.
    pub fn check_local_rule(&self) -> bool {
        let nv = 2 * self.width;
        let one = LaurentPoly::one(nv);
        let get = |r: usize, c: isize| -> &LaurentPoly {
            if r == 0 || r == self.width + 1 {
                &one
            } else {
                self.entry(r, c)
            }
        };
        (1..=self.width).all(|r| {
            (0..self.period() as isize).all(|c| {
                let rhs = &(get(r, c - 1) * get(r, c + 1)) - &(get(r - 1, c) * get(r + 1, c));
                *get(r, c) == rhs
            })
        })
    }
}

impl fmt::Debug for SymbolicFragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymbolicFragment(width {})", self.width)?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "  {}", cells.join(" | "))?;
        }
        Ok(())
    }
}

/// Builds the formal frieze of width `m` by exact Laurent propagation from
/// the zigzag seed columns. A failed exact division or a period mismatch is
/// reported as an error; neither happens for `m >= 1`.
pub fn complete_symbolic(m: usize) -> Result<SymbolicFragment, FriezeError> {
    assert!(m >= 1, "formal frieze needs width >= 1");
    let nv = 2 * m;
    let vars: Vec<LaurentPoly> = (0..nv).map(|i| LaurentPoly::var(nv, i)).collect();
    let (col0, col1) = seed_columns(&vars);
    let period = period_of(m);
    let mut rows = propagate_generic(&col0, &col1, period + 2)?;
    for k in 0..2 {
        if (0..m).any(|r| rows[r][period + k] != rows[r][k]) {
            return Err(FriezeError::NotClosed { col: period + k, seed_col: k });
        }
    }
    for row in &mut rows {
        row.truncate(period);
    }
    Ok(SymbolicFragment { width: m, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rats;
    use crate::frieze::complete_from_columns;

    fn p(s: &str, n: usize) -> LaurentPoly {
        LaurentPoly::parse(s, n).unwrap()
    }

    #[test]
    fn layout_matches_zigzag() {
        assert_eq!(seed_layout(2), (vec![1, 4], vec![3, 2]));
        assert_eq!(seed_layout(3), (vec![1, 5, 3], vec![4, 2, 6]));
        let (c0, c1) = seed_columns(&[10, 20, 30, 40]);
        assert_eq!((c0.clone(), c1.clone()), (vec![10, 40], vec![30, 20]));
        assert_eq!(cluster_from_columns(&c0, &c1), vec![10, 20, 30, 40]);
    }

    #[test]
    fn formal_width_one() {
        let f = complete_symbolic(1).unwrap();
        let want = ["x1", "x2", "(x2+1)/x1", "(x1+x2+1)/(x1*x2)", "(x1+1)/x2"];
        for (c, w) in want.iter().enumerate() {
            assert_eq!(f.rows()[0][c], p(w, 2), "column {c}");
            assert_eq!(f.rows()[0][c + 5], p(w, 2), "column {}", c + 5);
        }
    }

    #[test]
    fn formal_width_two_third_entry() {
        let f = complete_symbolic(2).unwrap();
        assert_eq!(f.rows()[0][2], p("(x3+x2)/x1", 4));
        assert!(f.check_local_rule());
    }

    #[test]
    fn positive_coefficients_up_to_width_four() {
        for m in 1..=4 {
            let f = complete_symbolic(m).unwrap();
            assert!(f.rows().iter().flatten().all(|p| p.has_positive_coefficients()), "width {m}");
        }
    }

    #[test]
    fn all_ones_evaluation_matches_numeric_completion() {
        for m in 1..=4 {
            let f = complete_symbolic(m).unwrap();
            let ones = rats(&vec![1; 2 * m]);
            let numeric = complete_from_columns(&rats(&vec![1; m]), &rats(&vec![1; m])).unwrap();
            assert_eq!(f.evaluate_integral(&ones).unwrap(), numeric);
        }
    }
}
