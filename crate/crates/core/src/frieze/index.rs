use std::fmt;
use std::str::FromStr;

use super::FriezeError;

/// An integer or half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn int(k: i64) -> Self {
        HalfInt(2 * k)
    }

    /// `k + 1/2`
    pub const fn plus_half(k: i64) -> Self {
        HalfInt(2 * k + 1)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = FriezeError;

    /// Accepts `k`, `k/2` (odd or even `k`) and `k.5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FriezeError::Parse(format!("not an integer or half-integer: {s:?}"));
        let s = s.trim();
        if let Some(num) = s.strip_suffix("/2") {
            return num.trim().parse::<i64>().map(HalfInt).map_err(|_| bad());
        }
        if let Some(whole) = s.strip_suffix(".5") {
            let k: i64 = whole.parse().map_err(|_| bad())?;
            let neg = whole.starts_with('-');
            return Ok(HalfInt(2 * k + if neg { -1 } else { 1 }));
        }
        s.parse::<i64>().map(HalfInt::int).map_err(|_| bad())
    }
}

/// `(i, j)` to `(row, col)` with `row` in `0..=m+1` and an unreduced column.
pub(super) fn grid_position(width: usize, i: HalfInt, j: HalfInt) -> Result<(usize, isize), FriezeError> {
    if (i.0 - j.0) % 2 != 0 {
        return Err(FriezeError::IndexParity { i, j });
    }
    let diff = (i.0 - j.0) / 2;
    if diff < -1 || diff > width as i64 {
        return Err(FriezeError::IndexOutOfStripe { i, j, width });
    }
    let col = (i.0 + j.0) / 2;
    Ok(((diff + 1) as usize, col as isize))
}

/// Inverse of [`grid_position`] for a given column representative.
pub fn diagonal_coordinates(row: usize, col: isize) -> (HalfInt, HalfInt) {
    let d = row as i64 - 1;
    let c = col as i64;
    (HalfInt(c + d), HalfInt(c - d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frieze::{complete_from_columns, Fragment};
    use crate::exact::rats;

    #[test]
    fn parse_and_display() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap(), HalfInt::plus_half(1));
        assert_eq!("-1/2".parse::<HalfInt>().unwrap(), HalfInt::from_twice(-1));
        assert_eq!("2.5".parse::<HalfInt>().unwrap(), HalfInt::plus_half(2));
        assert_eq!("-0.5".parse::<HalfInt>().unwrap(), HalfInt::from_twice(-1));
        assert_eq!("4".parse::<HalfInt>().unwrap(), HalfInt::int(4));
        assert_eq!(HalfInt::plus_half(1).to_string(), "3/2");
        assert!("x".parse::<HalfInt>().is_err());
    }

    #[test]
    fn boundary_entries_are_one() {
        let f = complete_from_columns(&rats(&[1, 2]), &rats(&[1, 3])).unwrap();
        for t in -6..12i64 {
            // v(i-1, i) and v(i + m/2, i - m/2) for integer and half-integer i
            let i = HalfInt::from_twice(t);
            let top = f.entry_at(HalfInt::from_twice(t - 2), i).unwrap();
            assert_eq!(top, 1.into());
            let bottom = f
                .entry_at(HalfInt::from_twice(t + f.width() as i64), HalfInt::from_twice(t - f.width() as i64))
                .unwrap();
            assert_eq!(bottom, 1.into());
        }
    }

    #[test]
    fn round_trip_against_grid_all_cells() {
        for m in 1..=4usize {
            let f: Fragment = complete_from_columns(&rats(&vec![1; m]), &rats(&vec![1; m])).unwrap();
            for r in 1..=m {
                for c in 0..f.period() as isize {
                    let (i, j) = diagonal_coordinates(r, c);
                    assert_eq!(f.entry_at(i, j).unwrap(), f.rows()[r - 1][c as usize]);
                }
            }
        }
    }

    #[test]
    fn out_of_stripe_and_parity() {
        let f = complete_from_columns(&rats(&[1]), &rats(&[1])).unwrap();
        assert!(matches!(
            f.entry_at(HalfInt::int(0), HalfInt::int(2)),
            Err(FriezeError::IndexOutOfStripe { .. })
        ));
        assert!(matches!(
            f.entry_at(HalfInt::int(3), HalfInt::int(0)),
            Err(FriezeError::IndexOutOfStripe { .. })
        ));
        assert!(matches!(
            f.entry_at(HalfInt::int(0), HalfInt::plus_half(0)),
            Err(FriezeError::IndexParity { .. })
        ));
    }
}
