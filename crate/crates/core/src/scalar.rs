//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::LowerExp;

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real floating-point scalar usable throughout the crate (`f32` or `f64`).
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + LowerExp + Send + Sync {
    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal must be representable")
}

/// Converts a working scalar back to `f64` (for reporting only).
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Tolerance that is `target` in double precision and degrades gracefully
/// for narrower types: never tighter than `headroom` machine epsilons.
#[inline]
pub fn tolerance<T: Real>(target: f64, headroom: f64) -> T {
    let eps = to_f64(T::default_epsilon());
    lit(target.max(headroom * eps))
}
