//! Floating point scalar abstraction shared by the numeric modules.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// f32 or f64
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Slack used when snapping values that should sit exactly on a rounding boundary.
    fn snap_tolerance() -> Self;
}

impl Scalar for f32 {
    fn snap_tolerance() -> Self {
        1e-5
    }
}

impl Scalar for f64 {
    fn snap_tolerance() -> Self {
        1e-9
    }
}

/// Converts an `f64` literal into the scalar type.
#[inline]
pub fn lit<T: Scalar>(value: f64) -> T {
    T::from_f64(value).expect("f64 literal representable in scalar type")
}

/// Rounds half away from zero, treating values within the scalar's snap
/// tolerance of a `.5` boundary as lying exactly on it.
pub fn round_half_away<T: Scalar>(x: T) -> T {
    let half = lit::<T>(0.5);
    let magnitude = x.abs();
    let frac = magnitude - magnitude.floor();
    let rounded = if (frac - half).abs() <= T::snap_tolerance() {
        magnitude.floor() + T::one()
    } else {
        magnitude.round()
    };
    if x < T::zero() {
        -rounded
    } else {
        rounded
    }
}
