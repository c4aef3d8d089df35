//! Exact coefficient arithmetic: polynomials in `N` over the rationals,
//! `g_s`-graded values, the `[N]_k^l` product calculus, and truncated series
//! in the inverse variables `ξ_i^{-1}`.
//!
//! Nothing in here rounds. Truncated series drop terms past their cap; they
//! never approximate the terms they keep.

mod evalvec;
mod graded;
mod npoly;
mod series;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use evalvec::EvalVec;
pub use graded::Graded;
pub use npoly::{interpolate, rising_product, NPoly};
pub use series::{geometric_expand, Series, SeriesTermJson, Space};

/// The coefficient ring of a [`Series`].
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
    fn is_zero(&self) -> bool;
    fn add_to(&mut self, other: &Self);
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Coeff for NPoly {
    fn zero() -> Self {
        NPoly::zero()
    }
    fn from_i64(v: i64) -> Self {
        NPoly::constant(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_bigint(v: &BigInt) -> Self {
        NPoly::constant(BigRational::from_integer(v.clone()))
    }
    fn is_zero(&self) -> bool {
        NPoly::is_zero(self)
    }
    fn add_to(&mut self, other: &Self) {
        *self += other;
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

#[cfg(test)]
pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn rat_int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub(crate) fn is_one(r: &BigRational) -> bool {
    r.is_one()
}
