//! Exact numbers and Laurent polynomials.
//!
//! Integers and rationals come from `num-bigint` / `num-rational`; the
//! multivariate Laurent polynomial ring lives in [`laurent`].

mod laurent;
mod parse;

pub use laurent::{LaurentError, LaurentPoly, Monomial};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_traits::{One, Signed, Zero};

/// Rational with denominator one.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Converts a vector of machine integers into exact rationals.
pub fn rats(values: &[i64]) -> Vec<BigRational> {
    values.iter().map(|&v| rat(v)).collect()
}

/// `Some(n)` when `q` is an integer.
pub fn as_integer(q: &BigRational) -> Option<BigInt> {
    if q.denom().is_one() {
        Some(q.numer().clone())
    } else {
        None
    }
}

/// Mathematical remainder in `[0, modulus)`. A modulus of one always yields zero.
pub fn mod_floor(value: &BigInt, modulus: &BigInt) -> BigInt {
    debug_assert!(modulus.is_positive());
    let r = value % modulus;
    if r.is_negative() {
        r + modulus
    } else {
        r
    }
}

/// `true` when `value ≡ 1 (mod modulus)`.
pub fn congruent_one(value: &BigInt, modulus: &BigInt) -> bool {
    if modulus.is_one() {
        return true;
    }
    mod_floor(value, modulus) == BigInt::one()
}

/// Field-like operations shared by numeric and symbolic frieze entries and
/// cluster variables. `divide` is exact division (failing for the Laurent
/// ring when the quotient does not exist).
pub trait ExactRing: Clone + PartialEq {
    fn unit_like(&self) -> Self;
    fn is_zero_value(&self) -> bool;
    fn times(&self, other: &Self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn divide(&self, divisor: &Self) -> Result<Self, LaurentError>;
}

impl ExactRing for BigRational {
    fn unit_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn divide(&self, divisor: &Self) -> Result<Self, LaurentError> {
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        Ok(self / divisor)
    }
}

impl ExactRing for LaurentPoly {
    fn unit_like(&self) -> Self {
        LaurentPoly::one(self.nvars())
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn divide(&self, divisor: &Self) -> Result<Self, LaurentError> {
        self.div_exact(divisor)
    }
}
