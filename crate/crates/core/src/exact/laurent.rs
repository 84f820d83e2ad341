use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("NotDivisible: {dividend} is not divisible by {divisor} in the Laurent ring")]
    NotDivisible { dividend: String, divisor: String },
    #[error("DivisionByZero: divisor is the zero polynomial")]
    DivisionByZero,
    #[error("Parse: {message} at byte {position}")]
    Parse { position: usize, message: String },
}

/// Exponent vector of a Laurent monomial, ordered graded-lexicographically
/// (total degree first, then lexicographic with `x1` most significant).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[i32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn from_exponents(exponents: Vec<i32>) -> Self {
        Monomial(exponents.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    fn shifted(&self, shift: &[i32]) -> Monomial {
        Monomial(self.0.iter().zip(shift).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0)
    }
}

/// Multivariate Laurent polynomial with big-integer coefficients in the
/// variables `x1 .. x{nvars}`.
///
/// The term map never holds a zero coefficient, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    /// The variable `x{index+1}` (zero-based index).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable x{} out of range for {} variables", index + 1, nvars);
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(nvars, Monomial::from_exponents(e), 1)
    }

    pub fn monomial(nvars: usize, m: Monomial, c: impl Into<BigInt>) -> Self {
        assert_eq!(m.0.len(), nvars);
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Single term with coefficient `±1`, if any.
    pub fn as_unit_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.abs().is_one() => Some((m, c)),
            _ => None,
        }
    }

    pub fn has_positive_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Componentwise minimum exponent; all zeros for the zero polynomial.
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut min = first.0.to_vec();
        for m in it {
            for (a, &b) in min.iter_mut().zip(m.0.iter()) {
                *a = (*a).min(b);
            }
        }
        min
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shifted(&self, shift: &[i32]) -> Self {
        assert_eq!(shift.len(), self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.shifted(shift), c.clone())).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self -= coeff * x^shift * other`
    fn sub_scaled(&mut self, other: &LaurentPoly, shift: &Monomial, coeff: &BigInt) {
        for (m, c) in &other.terms {
            self.add_term(m.times(shift), -(c * coeff));
        }
    }

    /// Exact quotient in the Laurent ring.
    ///
    /// Both operands are first multiplied by the monomial that clears their
    /// negative (and common positive) exponents, then ordinary multivariate
    /// division by the single divisor runs in graded-lex order. A nonzero
    /// remainder, or a leading coefficient that does not divide, is reported
    /// as `NotDivisible`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        assert_eq!(self.nvars, divisor.nvars, "variable count mismatch");
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let not_divisible = || LaurentError::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let a = self.min_exponents();
        let b = divisor.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let mut rem = self.shifted(&neg(&a));
        let d = divisor.shifted(&neg(&b));
        let (dm, dc) = {
            let (m, c) = d.leading_term().expect("nonzero divisor");
            (m.clone(), c.clone())
        };
        let mut quotient = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading_term() {
            let diff: Vec<i32> = rm.0.iter().zip(dm.0.iter()).map(|(x, y)| x - y).collect();
            if diff.iter().any(|&e| e < 0) {
                return Err(not_divisible());
            }
            let (q, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            let shift = Monomial::from_exponents(diff);
            rem.sub_scaled(&d, &shift, &q);
            quotient.add_term(shift, q);
        }
        let offset: Vec<i32> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        Ok(quotient.shifted(&offset))
    }

    /// Exact value at `point`.
    ///
    /// # Panics
    /// If the point has the wrong length or a coordinate is zero where a
    /// negative exponent occurs.
    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        let mut sum = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (&e, x) in m.0.iter().zip(point) {
                if e != 0 {
                    t *= num_traits::pow::Pow::pow(x, e);
                }
            }
            sum += t;
        }
        sum
    }

    /// Replaces each variable `x_i` by `images[i]` (itself a Laurent
    /// polynomial); negative powers require the image to be a unit monomial.
    pub fn substitute(&self, images: &[LaurentPoly]) -> Result<LaurentPoly, LaurentError> {
        assert_eq!(images.len(), self.nvars);
        let nv = images.first().map_or(self.nvars, |p| p.nvars);
        let mut out = Self::zero(nv);
        for (m, c) in &self.terms {
            let mut t = Self::constant(nv, c.clone());
            for (&e, img) in m.0.iter().zip(images) {
                if e > 0 {
                    t = &t * &img.pow(e as u32);
                } else if e < 0 {
                    t = t.div_exact(&img.pow((-e) as u32))?;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Splits `self = numerator * x^denominator_shift` where the numerator is
    /// an ordinary polynomial and the shift has only non-positive entries.
    pub fn numerator_denominator(&self) -> (LaurentPoly, Vec<i32>) {
        let shift: Vec<i32> = self.min_exponents().into_iter().map(|e| e.min(0)).collect();
        let neg: Vec<i32> = shift.iter().map(|e| -e).collect();
        (self.shifted(&neg), shift)
    }

    pub fn parse(text: &str, nvars: usize) -> Result<LaurentPoly, LaurentError> {
        super::parse::parse(text, nvars)
    }
}

fn write_monomial_factors(f: &mut fmt::Formatter<'_>, m: &Monomial, first: &mut bool) -> fmt::Result {
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !*first {
            f.write_str("*")?;
        }
        *first = false;
        if e == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "x{}^{}", i + 1, e)?;
        }
    }
    Ok(())
}

fn write_polynomial(f: &mut fmt::Formatter<'_>, p: &LaurentPoly) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (k, (m, c)) in p.terms.iter().rev().enumerate() {
        if c.is_negative() {
            f.write_str("-")?;
        } else if k > 0 {
            f.write_str("+")?;
        }
        let a = c.abs();
        let mut first = true;
        if !a.is_one() || m.is_one() {
            write!(f, "{}", a)?;
            first = false;
        }
        write_monomial_factors(f, m, &mut first)?;
    }
    Ok(())
}

/// Canonical text form, e.g. `(x2+1)*x1^-1` or `x1+x2+1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, shift) = self.numerator_denominator();
        if shift.iter().all(|&e| e == 0) {
            return write_polynomial(f, &num);
        }
        let den = Monomial::from_exponents(shift);
        if num.is_one() {
            let mut first = true;
            return write_monomial_factors(f, &den, &mut first);
        }
        if num.num_terms() == 1 {
            write_polynomial(f, &num)?;
        } else {
            f.write_str("(")?;
            write_polynomial(f, &num)?;
            f.write_str(")")?;
        }
        let mut first = false;
        write_monomial_factors(f, &den, &mut first)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = LaurentPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.times(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
