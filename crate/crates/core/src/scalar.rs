//! Scalar abstraction shared by every module of the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point type the geometry is generic over (`f32` or `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Default + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` literal. Never fails for the supported types.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts a count.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    /// A tolerance of `x`, but never tighter than a few hundred ulps of the type.
    ///
    /// The tolerances fixed for `f64` (1e-10 rad, 1e-12 relative, ...) are meaningless in
    /// `f32`; this keeps the same code path usable there.
    fn tol(x: f64) -> Self {
        Self::of(x).max(Self::epsilon() * Self::of(256.0))
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Clamps `x` into `[-1, 1]` before an inverse trigonometric call.
pub(crate) fn clamp_unit<T: Scalar>(x: T) -> T {
    x.max(-T::one()).min(T::one())
}

/// Wraps an angle into `(-pi, pi]`.
pub(crate) fn wrap_angle<T: Scalar>(a: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut r = a % two_pi;
    if r > T::PI() {
        r = r - two_pi;
    } else if r <= -T::PI() {
        r = r + two_pi;
    }
    r
}

/// Square root of a radicand that may be slightly negative from rounding.
///
/// Values in `[-slack, 0)` are treated as zero; anything below returns `None`.
pub(crate) fn guarded_sqrt<T: Scalar>(radicand: T, slack: T) -> Option<T> {
    if radicand >= T::zero() {
        Some(radicand.sqrt())
    } else if radicand >= -slack {
        Some(T::zero())
    } else {
        None
    }
}
