use std::fmt;
use std::ops::{Div, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational number, the exact ground field.
pub type Rat = BigRational;

/// Coefficient field for the generic polynomial and matrix layers.
///
/// Implemented by [`Rat`] (the exact rationals used everywhere) and by the
/// fixed prime field [`crate::fp::Fp`] used by the randomized verification
/// fallback. Floating point types are deliberately not supported: every
/// identity in this crate is checked with zero tolerance.
pub trait Coeff:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(n: i64) -> Self;

    /// Exact quotient `numer / denom`; panics when `denom == 0`.
    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
}

impl Coeff for Rat {
    fn from_i64(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rat::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rat::one() / self.clone())
        }
    }
}

/// Shorthand for integer rationals in tests and builders.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn ratq(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}
