//! Ready-made smooth surfaces: the paraboloid examples and two generic test surfaces.

use crate::error::Result;
use crate::scalar::Scalar;
use crate::smooth::deform::reconstruct_c;
use crate::smooth::function::{Interval, ScalarFunction};
use crate::smooth::spec::{AxialSpec, SmoothSpec, TranslationalSpec};

/// The paraboloid `z = x^2 + y^2` over `[0, a]^2` as a translation surface, in the frame
/// where the profile planes are vertical: `x(u) = u^2`, `y(u) = u`, `f(v) = v^2`, `z(v) = v`.
/// The point `(u, v)` of the paraboloid is `(y, z, x + f)` of this surface.
pub fn translational_paraboloid<T: Scalar>(a: T) -> Result<TranslationalSpec<T>> {
    let d = Interval::new(T::zero(), a)?;
    let square = || ScalarFunction::polynomial(vec![T::zero(), T::zero(), T::one()], d);
    let identity = || ScalarFunction::linear(T::zero(), T::one(), d);
    TranslationalSpec::new(square(), identity(), square(), identity())
}

/// Wedge `0 <= phi <= 1` of the paraboloid of revolution with profile `f(v) = v`,
/// `z(v) = v^2`, `0.1 <= v <= 1`.
pub fn paraboloid_wedge<T: Scalar>() -> Result<AxialSpec<T>> {
    let u = Interval::new(T::zero(), T::one())?;
    let v = Interval::new(T::of(0.1), T::one())?;
    AxialSpec::revolution(
        ScalarFunction::linear(T::zero(), T::one(), v),
        ScalarFunction::linear(T::zero(), T::one(), u),
        ScalarFunction::polynomial(vec![T::zero(), T::zero(), T::one()], v),
    )
}

/// Molding surface over a unit circle: `g = 1`, `psi = phi = u` on `[0, 1]`, `c = 1`, profile
/// `f(v) = v`, `z(v) = v + v^2` on `[0, 1]`.
pub fn circular_molding<T: Scalar>() -> Result<SmoothSpec<T>> {
    let u = Interval::new(T::zero(), T::one())?;
    let v = Interval::new(T::zero(), T::one())?;
    let angle = || ScalarFunction::linear(T::zero(), T::one(), u);
    SmoothSpec::new(
        ScalarFunction::constant(T::one(), u),
        angle(),
        ScalarFunction::constant(T::one(), u),
        angle(),
        ScalarFunction::linear(T::zero(), T::one(), v),
        ScalarFunction::polynomial(vec![T::zero(), T::one(), T::one()], v),
    )
}

/// A T-surface with no special structure: `phi = u`, `eta = 0.3 + 0.2 u`, `c` from the
/// compatibility condition, `g = 1 + u / 2` on `[0, 1]`; profile `f = v`, `z = v + v^2 / 2`
/// on `[0, 1/2]`.
pub fn generic_tsurface<T: Scalar>() -> Result<SmoothSpec<T>> {
    let u = Interval::new(T::zero(), T::one())?;
    let v = Interval::new(T::zero(), T::of(0.5))?;
    let phi = ScalarFunction::linear(T::zero(), T::one(), u);
    let eta = ScalarFunction::linear(T::of(0.3), T::of(0.2), u);
    let c = reconstruct_c(&phi, &eta, T::one());
    SmoothSpec::new(
        ScalarFunction::linear(T::one(), T::of(0.5), u),
        ScalarFunction::linear(T::of(-0.3), T::of(0.8), u),
        c,
        phi,
        ScalarFunction::linear(T::zero(), T::one(), v),
        ScalarFunction::polynomial(vec![T::zero(), T::one(), T::of(0.5)], v),
    )
}
