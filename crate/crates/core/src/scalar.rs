//! The floating-point element type shared by every numeric routine.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar used for matrices, centrality scores and network weights.
///
/// Implemented for `f32` and `f64`. Everything that is compared against an
/// oracle in this crate is exercised with `f64`.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`; panics only if the target cannot
    /// represent a finite `f64` at all, which never happens for `f32`/`f64`.
    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("scalar conversion from f64")
    }

    #[inline]
    fn of_usize(v: usize) -> Self {
        Self::from_usize(v).expect("scalar conversion from usize")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar conversion to f64")
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + Sum
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + 'static
{
}
