//! Scalar abstraction shared by every floating-point construction.

use std::fmt::{Debug, Display};
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
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
    /// Tolerance used when checking that glued chains coincide.
    fn gluing_tolerance() -> Self {
        let floor = Self::from_f64(1e-9).unwrap();
        let scaled = Self::epsilon() * Self::from_f64(64.0).unwrap();
        floor.max(scaled)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Converts an integer count into `T`.
#[inline]
pub fn count<T: Real>(k: i64) -> T {
    T::from_i64(k).expect("integer representable in scalar type")
}

/// Lossy conversion to `f64` for diagnostics and hashing.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
