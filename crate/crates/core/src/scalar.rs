//! Floating point abstraction shared by every numeric module.
//!
//! All metrics, weights, topic distributions and test statistics are computed
//! over a type implementing [`Scalar`]. Implementations are provided for `f32`
//! and `f64`; the crate root re-exports `f64` aliases for the common case.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::fmt::{Debug, Display, LowerExp};

pub trait Scalar:
    'static
    + Send
    + Sync
    + Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Default
    + Display
    + LowerExp
    + Debug
    + Serialize
    + DeserializeOwned
{
    /// Converts a literal or count into the scalar type.
    #[inline]
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_count(count: u64) -> Self {
        Self::from_u64(count).expect("count representable in scalar type")
    }

    #[inline]
    fn from_len(len: usize) -> Self {
        Self::from_usize(len).expect("length representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar convertible to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `x * log2(x / y)` with the `0 * log(0 / y) = 0` convention.
#[inline]
pub(crate) fn xlog2_ratio<T: Scalar>(x: T, y: T) -> T {
    if x <= T::zero() {
        T::zero()
    } else {
        x * (x / y).log2()
    }
}
