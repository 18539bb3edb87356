//! Coefficient scalars.
//!
//! Everything in the exact-arithmetic stack is generic over a rational
//! scalar `Q`. The crate-root aliases pick `BigRational`; `Rational64`
//! works for small computations where overflow is ruled out.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

/// An exact ordered field of characteristic zero (in practice, a rational type).
pub trait Scalar:
    Clone + Debug + Display + Ord + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits the scalar type")
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + Ord + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}
