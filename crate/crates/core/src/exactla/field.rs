use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::{det_gauss, det_rational, Matrix};
use crate::arith::Fp;
use crate::error::Result;

/// The operations elimination needs from a field.
///
/// Elements may carry their own context (a modulus, a cyclotomic order), so
/// constants are produced from an existing element rather than statically.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64_like(&self, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }

    /// Determinant of a square matrix over this field. The default is
    /// Gaussian elimination with first-nonzero pivoting.
    fn determinant(m: &Matrix<Self>) -> Result<Self> {
        det_gauss(m)
    }
}

impl Field for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    #[allow(clippy::wrong_self_convention)]
    fn from_i64_like(&self, v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn determinant(m: &Matrix<Self>) -> Result<Self> {
        det_rational(m)
    }
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp::new(0, self.modulus())
    }
    fn one_like(&self) -> Self {
        Fp::new(1, self.modulus())
    }
    #[allow(clippy::wrong_self_convention)]
    fn from_i64_like(&self, v: i64) -> Self {
        Fp::new(v, self.modulus())
    }
    fn is_zero(&self) -> bool {
        Fp::is_zero(*self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn negated(&self) -> Self {
        -*self
    }
    fn inverse(&self) -> Option<Self> {
        Fp::inverse(*self)
    }
}
