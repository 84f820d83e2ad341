//! Closed friezes as polygons `V_1, …, V_n` in 3-space with
//! `det(V_i, V_{i+1}, V_{i+2}) = 1`, where `n = m + 4`.
//!
//! The lift runs the recurrence `V_k = v(k,k) V_{k-1} - v(k-1/2,k-1/2) V_{k-2} + V_{k-3}`
//! from `V_{-2}, V_{-1}, V_0 = e1, e2, e3`. Entries come back as
//! `v(i,j) = det(V_{j-3}, V_{j-2}, V_i)` and
//! `v(i-1/2, j-1/2) = det(V_{i-1}, V_i, V_{j-3})`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Number;
use thiserror::Error;

use crate::frieze::{diagonal_coordinates, Fragment, FriezeError};

pub type Vec3 = [BigInt; 3];
pub type Mat3 = [[BigInt; 3]; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("MonodromyNotIdentity: V_{{k+{n}}} differs from V_k for k = {index}")]
    MonodromyNotIdentity { n: usize, index: i64 },
    #[error("NotUnimodular: det(V_i, V_i+1, V_i+2) != 1 at i in {0:?}")]
    NotUnimodular(Vec<usize>),
    #[error("NonPositive: entry {value} at row {row}, column {col}")]
    NonPositive { row: usize, col: usize, value: BigInt },
    #[error("Shape: {0}")]
    Shape(String),
    #[error("internal error: {0}")]
    Frieze(FriezeError),
}

pub fn det(a: &Vec3, b: &Vec3, c: &Vec3) -> BigInt {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

fn vec3(a: i64, b: i64, c: i64) -> Vec3 {
    [BigInt::from(a), BigInt::from(b), BigInt::from(c)]
}

fn lin(a: &BigInt, u: &Vec3, b: &BigInt, v: &Vec3, w: &Vec3) -> Vec3 {
    std::array::from_fn(|t| a * &u[t] - b * &v[t] + &w[t])
}

/// Matrix with the given vectors as columns.
pub fn from_columns(a: &Vec3, b: &Vec3, c: &Vec3) -> Mat3 {
    std::array::from_fn(|r| [a[r].clone(), b[r].clone(), c[r].clone()])
}

pub fn mat_det(m: &Mat3) -> BigInt {
    let col = |j: usize| -> Vec3 { std::array::from_fn(|r| m[r][j].clone()) };
    det(&col(0), &col(1), &col(2))
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum()))
}

pub fn mat_vec(a: &Mat3, v: &Vec3) -> Vec3 {
    std::array::from_fn(|i| (0..3).map(|k| &a[i][k] * &v[k]).sum())
}

/// Adjugate; the inverse when the determinant is one.
pub fn adjugate(m: &Mat3) -> Mat3 {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0];
    let cof = |i: usize, j: usize| {
        let rows: Vec<usize> = (0..3).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..3).filter(|&c| c != j).collect();
        let v = minor(rows[0], rows[1], cols[0], cols[1]);
        if (i + j) % 2 == 0 {
            v
        } else {
            -v
        }
    };
    std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i)))
}

/// Cyclic sequence of integer vectors, stored as `V_1..V_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<Vec3>,
}

impl Polygon {
    pub fn new(vertices: Vec<Vec3>) -> Result<Self, GeometryError> {
        if vertices.len() < 4 {
            return Err(GeometryError::Shape(format!("need at least 4 vertices, got {}", vertices.len())));
        }
        Ok(Polygon { vertices })
    }

    pub fn from_i64(vertices: &[[i64; 3]]) -> Result<Self, GeometryError> {
        Polygon::new(vertices.iter().map(|v| vec3(v[0], v[1], v[2])).collect())
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    /// `V_i` for any integer `i`, indices taken modulo `n` (1-based).
    pub fn vertex(&self, i: i64) -> &Vec3 {
        &self.vertices[(i - 1).rem_euclid(self.n() as i64) as usize]
    }

    /// Image under `A`.
    pub fn transform(&self, a: &Mat3) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|v| mat_vec(a, v)).collect() }
    }

    /// `V_{1+k}, …, V_{n+k}`.
    pub fn shifted(&self, k: i64) -> Polygon {
        Polygon { vertices: (1..=self.n() as i64).map(|i| self.vertex(i + k).clone()).collect() }
    }

    /// JSON array of integer triples.
    pub fn to_json(&self) -> String {
        let doc: Vec<Vec<Number>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x.to_string().parse().expect("integer")).collect())
            .collect();
        let mut s = serde_json::to_string(&doc).expect("serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        let doc: Vec<Vec<Number>> = serde_json::from_str(text).map_err(|e| GeometryError::Shape(e.to_string()))?;
        let vertices = doc
            .iter()
            .map(|v| {
                if v.len() != 3 {
                    return Err(GeometryError::Shape(format!("vertex with {} coordinates", v.len())));
                }
                let coords: Result<Vec<BigInt>, _> = v
                    .iter()
                    .map(|x| x.to_string().parse::<BigInt>().map_err(|_| GeometryError::Shape(format!("{x} is not an integer"))))
                    .collect();
                let c = coords?;
                Ok([c[0].clone(), c[1].clone(), c[2].clone()])
            })
            .collect::<Result<Vec<_>, _>>()?;
        Polygon::new(vertices)
    }
}

/// Indices `i` (1-based) with `det(V_i, V_{i+1}, V_{i+2}) != 1`.
pub fn check_normalization(p: &Polygon) -> Vec<usize> {
    (1..=p.n())
        .filter(|&i| {
            let i = i as i64;
            !det(p.vertex(i), p.vertex(i + 1), p.vertex(i + 2)).is_one()
        })
        .collect()
}

/// The vectors `V_{-2}, …, V_{count-3}` produced by the recurrence.
pub fn lift_sequence(f: &Fragment, count: usize) -> Vec<Vec3> {
    let mut v = vec![vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)];
    for k in 1..count.saturating_sub(2) as isize {
        let a = f.entry(1, 2 * k);
        let b = f.entry(1, 2 * k - 1);
        let t = v.len();
        let next = lin(&a, &v[t - 1], &b, &v[t - 2], &v[t - 3]);
        v.push(next);
    }
    v
}

/// `V_1, …, V_n`, after checking that the recurrence closes up.
pub fn lift_to_polygon(f: &Fragment) -> Result<Polygon, GeometryError> {
    let n = f.n();
    let seq = lift_sequence(f, n + 6);
    // seq[t] is V_{t-2}
    for k in -2..=3i64 {
        let a = &seq[(k + 2) as usize];
        let b = &seq[(k + 2 + n as i64) as usize];
        if a != b {
            return Err(GeometryError::MonodromyNotIdentity { n, index: k });
        }
    }
    Polygon::new(seq[3..3 + n].to_vec())
}

/// Frieze entry at grid cell `(row, col)` from the determinant formulas;
/// rows `0` and `m+1` give the border ones.
pub fn entry_from_polygon(p: &Polygon, row: usize, col: isize) -> BigInt {
    let (i, j) = diagonal_coordinates(row, col);
    if i.is_integer() {
        let (i, j) = (i.twice() / 2, j.twice() / 2);
        det(p.vertex(j - 3), p.vertex(j - 2), p.vertex(i))
    } else {
        let (i, j) = ((i.twice() + 1) / 2, (j.twice() + 1) / 2);
        det(p.vertex(i - 1), p.vertex(i), p.vertex(j - 3))
    }
}

/// The width `n - 4` fragment whose entries are the polygon's determinants.
pub fn polygon_to_fragment(p: &Polygon) -> Result<Fragment, GeometryError> {
    let bad = check_normalization(p);
    if !bad.is_empty() {
        return Err(GeometryError::NotUnimodular(bad));
    }
    let m = p.n() - 4;
    let period = 2 * p.n();
    let mut rows = Vec::with_capacity(m);
    for row in 1..=m {
        let mut out = Vec::with_capacity(period);
        for col in 0..period {
            let v = entry_from_polygon(p, row, col as isize);
            if !v.is_positive() {
                return Err(GeometryError::NonPositive { row, col, value: v });
            }
            out.push(v);
        }
        rows.push(out);
    }
    let f = Fragment::new(m, rows).map_err(GeometryError::Frieze)?;
    if !f.is_valid() {
        return Err(GeometryError::Frieze(FriezeError::Shape("determinants violate the local rule".into())));
    }
    Ok(f)
}

/// An `A` in `SL_3(Z)` and shift `k` with `A V_i = W_{i+k}` for all `i`.
pub fn find_sl3_match(p: &Polygon, q: &Polygon) -> Option<(i64, Mat3)> {
    if p.n() != q.n() {
        return None;
    }
    let l = from_columns(p.vertex(1), p.vertex(2), p.vertex(3));
    let l_inv = adjugate(&l);
    for k in 0..p.n() as i64 {
        let r = from_columns(q.vertex(1 + k), q.vertex(2 + k), q.vertex(3 + k));
        let a = mat_mul(&r, &l_inv);
        if !mat_det(&a).is_one() {
            continue;
        }
        if p.transform(&a) == q.shifted(k) {
            return Some((k, a));
        }
    }
    None
}

pub fn identity() -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { BigInt::one() } else { BigInt::zero() }))
}
