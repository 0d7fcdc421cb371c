//! Coefficient traits shared by the series and polynomial types.
//!
//! Everything in this crate is generic over the coefficient ring; the exact
//! instantiations (`BigInt`, `BigRational`, cyclotomic integers) are the ones
//! the checks run on, `f64` is accepted where only a field is required.

use std::fmt::Debug;
use std::ops::{Div, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

/// A commutative ring with identity.
pub trait Coefficient:
    Clone + Debug + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Send + Sync
{
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Neg<Output = Self>
        + Sub<Output = Self>
        + Send
        + Sync
{
}

/// A field of characteristic zero.
pub trait Field: Coefficient + Div<Output = Self> + FromPrimitive {
    fn from_bigint(n: &BigInt) -> Self;

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        Self::from_bigint(num) / Self::from_bigint(den)
    }
}

impl Field for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }
}

impl Field for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
}

impl Field for f32 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f32().unwrap_or(f32::NAN)
    }
}

pub(crate) fn field_from_usize<F: Field>(k: usize) -> F {
    F::from_usize(k).expect("small integer is representable")
}

/// Exact conversion of a rational to an integer, if it is one.
pub fn rational_to_integer(q: &BigRational) -> Option<BigInt> {
    if q.denom().is_one() {
        Some(q.numer().clone())
    } else {
        None
    }
}
