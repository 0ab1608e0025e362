//! Isometric deformations of smooth T-surfaces.
//!
//! Translational and molding surfaces use the exponential parameter `s`; axial, revolution
//! and general surfaces the additive parameter `t` with `|xi^t|^2 = |xi|^2 + t`. The two
//! agree for `t = e^{-2s} - 1` ([`smooth_exponential_to_additive`]). Note the sign: the
//! discrete bridge is `t = e^{2s} - 1`, so a discrete translational deformation at `s`
//! matches the smooth one at `-s`.

use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::scalar::Scalar;
use crate::smooth::function::{Interval, ScalarFunction};
use crate::smooth::quadrature::QuadratureMode;
use crate::smooth::spec::{sign_changes, AxialSpec, SmoothSpec, Surface, TranslationalSpec};

/// Residual of `c' cos(eta) = c phi' sin(eta)` above which a deformed surface is rejected.
pub const DRIFT_TOL: f64 = 1e-6;
const RANGE_SAMPLES: usize = 1025;
const MOLDING_TOL: f64 = 1e-8;

/// `t = e^{-2s} - 1`.
pub fn smooth_exponential_to_additive<T: Scalar>(s: T) -> T {
    (-(s + s)).exp_m1()
}

/// `s = -ln(1 + t) / 2`.
pub fn smooth_additive_to_exponential<T: Scalar>(t: T) -> T {
    -t.ln_1p() * T::of(0.5)
}

/// Admissible deformation parameters and where each end is attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothRange<T> {
    pub t_min: T,
    pub t_max: T,
    /// Parameter value (`u` for the lower end of axial and general ranges, otherwise the
    /// curve parameter of the vanishing radicand) where the bound is attained.
    pub t_min_at: Option<T>,
    pub t_max_at: Option<T>,
    /// The lower end itself is excluded (the profile direction would degenerate).
    pub min_open: bool,
}

impl<T: Scalar> SmoothRange<T> {
    pub fn contains(&self, t: T) -> bool {
        let slack = |b: T| T::tol(1e-12) * b.abs().max(T::one());
        let above = if self.min_open {
            t > self.t_min
        } else {
            t >= self.t_min - slack(self.t_min)
        };
        above && t <= self.t_max + slack(self.t_max)
    }

    pub fn is_two_sided(&self) -> bool {
        self.t_min < T::zero() && self.t_max > T::zero()
    }
}

/// Result of a smooth deformation.
#[derive(Debug, Clone)]
pub struct SmoothDeformation<T, S> {
    pub surface: S,
    pub parameter: T,
    /// `u`-values where the deformed surface is creased along a profile curve.
    pub creases_u: Vec<T>,
    /// `v`-values where the deformed surface is creased along a trajectory curve.
    pub creases_v: Vec<T>,
}

/// `(min h, argmin)` over dense samples refined by golden-section search.
fn minimize<T: Scalar>(h: impl Fn(T) -> T, d: Interval<T>) -> (T, T) {
    let xs = d.samples(RANGE_SAMPLES);
    let (mut k, mut best) = (0, T::infinity());
    for (i, x) in xs.iter().enumerate() {
        let y = h(*x);
        if y < best {
            best = y;
            k = i;
        }
    }
    if !best.is_finite() {
        return (best, xs[k]);
    }
    let (mut a, mut b) = (xs[k.saturating_sub(1)], xs[(k + 1).min(xs.len() - 1)]);
    let r = T::of(0.618_033_988_749_894_8);
    let (mut x1, mut x2) = (b - r * (b - a), a + r * (b - a));
    let (mut h1, mut h2) = (h(x1), h(x2));
    for _ in 0..80 {
        if h1 < h2 {
            b = x2;
            x2 = x1;
            h2 = h1;
            x1 = b - r * (b - a);
            h1 = h(x1);
        } else {
            a = x1;
            x1 = x2;
            h1 = h2;
            x2 = a + r * (b - a);
            h2 = h(x2);
        }
    }
    let (x, y) = if h1 < h2 { (x1, h1) } else { (x2, h2) };
    if y < best {
        (y, x)
    } else {
        (best, xs[k])
    }
}

/// `min (a'^2 / b'^2)` over the domain, ignoring points with `b' = 0`.
fn min_ratio<T: Scalar>(a: &ScalarFunction<T>, b: &ScalarFunction<T>) -> (T, Option<T>) {
    let (v, at) = minimize(
        |x| {
            let (da, db) = (a.derivative(x), b.derivative(x));
            if db == T::zero() {
                T::infinity()
            } else {
                (da / db).powi(2)
            }
        },
        a.domain(),
    );
    (v, v.is_finite().then_some(at))
}

/// Range of the additive parameter over the profile `(f, z)`: `t <= min z'^2 / f'^2`.
fn profile_upper<T: Scalar>(f: &ScalarFunction<T>, z: &ScalarFunction<T>) -> (T, Option<T>) {
    min_ratio(z, f)
}

fn out_of_range<T: Scalar>(what: &'static str, at: Option<T>, value: T) -> Error {
    Error::RadicandNegative {
        what,
        at: at.map_or(f64::NAN, |a| a.to_f64_lossy()),
        value: value.to_f64_lossy(),
    }
}

/// `initial + integral sign(h') sqrt(h'^2 + k o'^2)`.
fn stretched<T: Scalar>(h: &ScalarFunction<T>, o: &ScalarFunction<T>, k: T) -> ScalarFunction<T> {
    let (h1, o1) = (h.clone(), o.clone());
    ScalarFunction::antiderivative(
        move |w| {
            let (dh, dot) = (h1.derivative(w), o1.derivative(w));
            let r = (dh * dh + k * dot * dot).max(T::zero()).sqrt();
            if dh > T::zero() {
                r
            } else if dh < T::zero() {
                -r
            } else {
                T::zero()
            }
        },
        h.domain(),
        h.value(h.domain().lo),
        QuadratureMode::EndpointSingular,
    )
}

fn derivative_sign_changes<T: Scalar>(h: &ScalarFunction<T>) -> Vec<T> {
    let h1 = h.clone();
    sign_changes(move |x| h1.derivative(x), h.domain())
}

/// Range of the exponential parameter of a translational surface:
/// `-ln(1 + min z'^2/f'^2) / 2 <= s <= ln(1 + min y'^2/x'^2) / 2`.
pub fn translational_surface_range<T: Scalar>(spec: &TranslationalSpec<T>) -> SmoothRange<T> {
    let half = T::of(0.5);
    let (up, up_at) = min_ratio(spec.y(), spec.x());
    let (low, low_at) = min_ratio(spec.z(), spec.f());
    SmoothRange {
        t_min: -low.ln_1p() * half,
        t_max: up.ln_1p() * half,
        t_min_at: low_at,
        t_max_at: up_at,
        min_open: false,
    }
}

/// `x -> e^s x`, `f -> e^{-s} f`, `y' -> sign(y') sqrt(y'^2 + (1 - e^{2s}) x'^2)`,
/// `z' -> sign(z') sqrt(z'^2 + (1 - e^{-2s}) f'^2)`.
///
/// Where `z'` (or `y'`) changes sign the deformation is one-sided: only the sign of `s` that
/// keeps the radicand positive is admitted, and the surface creases there.
pub fn deform_translational_surface<T: Scalar>(
    spec: &TranslationalSpec<T>,
    s: T,
) -> Result<SmoothDeformation<T, TranslationalSpec<T>>> {
    let range = translational_surface_range(spec);
    let (ky, kz) = (-(s + s).exp_m1(), -(-(s + s)).exp_m1());
    if !range.contains(s) {
        return Err(if s > range.t_max {
            let at = range.t_max_at.unwrap_or(spec.x().domain().lo);
            let (dx, dy) = (spec.x().derivative(at), spec.y().derivative(at));
            out_of_range("y'^2 + (1 - e^{2s}) x'^2", Some(at), dy * dy + ky * dx * dx)
        } else {
            let at = range.t_min_at.unwrap_or(spec.f().domain().lo);
            let (df, dz) = (spec.f().derivative(at), spec.z().derivative(at));
            out_of_range(
                "z'^2 + (1 - e^{-2s}) f'^2",
                Some(at),
                dz * dz + kz * df * df,
            )
        });
    }
    let surface = TranslationalSpec::unchecked(
        spec.x().scale(s.exp()),
        stretched(spec.y(), spec.x(), ky),
        spec.f().scale((-s).exp()),
        stretched(spec.z(), spec.f(), kz),
    );
    Ok(SmoothDeformation {
        surface,
        parameter: s,
        creases_u: if s < T::zero() {
            derivative_sign_changes(spec.y())
        } else {
            Vec::new()
        },
        creases_v: if s > T::zero() {
            derivative_sign_changes(spec.z())
        } else {
            Vec::new()
        },
    })
}

/// Fails unless `c` is constant and `eta = 0`.
fn require_molding<T: Scalar>(spec: &SmoothSpec<T>) -> Result<T> {
    let d = spec.u_domain();
    let c0 = spec.c().value(d.lo);
    for u in d.samples(257) {
        let drift = (spec.c().derivative(u) * d.length()).abs() / c0.abs();
        let eta = spec.eta(u).abs();
        if drift > T::tol(MOLDING_TOL) || eta > T::tol(MOLDING_TOL) {
            return Err(Error::NotInClass {
                class: "a molding surface",
                detail: format!("at u = {u}: |c'| L / c = {drift}, |eta| = {eta}"),
            });
        }
    }
    Ok(c0)
}

/// Range of the exponential parameter of a molding surface: bounded below by
/// `-ln(1 + min z'^2 / (c f')^2) / 2`, unbounded above.
pub fn molding_surface_range<T: Scalar>(spec: &SmoothSpec<T>) -> Result<SmoothRange<T>> {
    let c = require_molding(spec)?;
    let (low, at) = min_ratio(spec.z(), &spec.f().scale(c));
    Ok(SmoothRange {
        t_min: -low.ln_1p() * T::of(0.5),
        t_max: T::infinity(),
        t_min_at: at,
        t_max_at: None,
        min_open: false,
    })
}

/// `psi -> psi(u0) + e^s (psi - psi(u0))`, `f -> e^{-s} f`,
/// `z' -> sign(z') sqrt(z'^2 + (1 - e^{-2s}) c^2 f'^2)`; `g` and `c` are kept.
pub fn deform_molding_surface<T: Scalar>(
    spec: &SmoothSpec<T>,
    s: T,
) -> Result<SmoothDeformation<T, SmoothSpec<T>>> {
    let range = molding_surface_range(spec)?;
    let c = spec.c().value(spec.u_domain().lo);
    let k = -(-(s + s)).exp_m1();
    if !range.contains(s) {
        let at = range.t_min_at.unwrap_or(spec.v_domain().lo);
        let (df, dz) = (spec.f().derivative(at) * c, spec.z().derivative(at));
        return Err(out_of_range(
            "z'^2 + (1 - e^{-2s}) c^2 f'^2",
            Some(at),
            dz * dz + k * df * df,
        ));
    }
    let psi0 = spec.psi().value(spec.u_domain().lo);
    let grow = s.exp();
    let psi = spec.psi().affine(psi0 * (T::one() - grow), grow);
    let surface = SmoothSpec::unnormalized(
        spec.g().clone(),
        psi.clone(),
        spec.c().clone(),
        psi,
        spec.f().scale((-s).exp()),
        stretched(spec.z(), &spec.f().scale(c), k),
    );
    Ok(SmoothDeformation {
        surface,
        parameter: s,
        creases_u: Vec::new(),
        creases_v: if s > T::zero() {
            derivative_sign_changes(spec.z())
        } else {
            Vec::new()
        },
    })
}

/// Range of the additive parameter of an axial surface:
/// `-min c^2 cos^2(eta) < t <= min z'^2 / f'^2` with `tan(eta) = c' / (c phi')`.
pub fn axial_surface_range<T: Scalar>(spec: &AxialSpec<T>) -> SmoothRange<T> {
    let (c, phi) = (spec.c(), spec.phi());
    let (low, low_at) = minimize(
        |u| {
            let (cv, dc, dphi) = (c.value(u), c.derivative(u), phi.derivative(u));
            let a = cv * cv * dphi * dphi;
            cv * cv * a / (a + dc * dc)
        },
        c.domain(),
    );
    let (up, up_at) = profile_upper(spec.f(), spec.z());
    SmoothRange {
        t_min: -low,
        t_max: up,
        t_min_at: Some(low_at),
        t_max_at: up_at,
        min_open: true,
    }
}

/// `c -> sqrt(c^2 + t)`.
fn stretched_norm<T: Scalar>(c: &ScalarFunction<T>, t: T) -> ScalarFunction<T> {
    let (c1, c2) = (c.clone(), c.clone());
    ScalarFunction::custom_with_derivative(
        move |u| {
            let v = c1.value(u);
            (v * v + t).sqrt()
        },
        move |u| {
            let v = c2.value(u);
            v * c2.derivative(u) / (v * v + t).sqrt()
        },
        c.domain(),
    )
}

fn profile_error<T: Scalar>(
    f: &ScalarFunction<T>,
    z: &ScalarFunction<T>,
    at: Option<T>,
    t: T,
) -> Error {
    let at_v = at.unwrap_or(f.domain().lo);
    let (df, dz) = (f.derivative(at_v), z.derivative(at_v));
    out_of_range("z'^2 - t f'^2", Some(at_v), dz * dz - t * df * df)
}

/// `c^t = sqrt(c^2 + t)`,
/// `phi^t' = sign(phi') sqrt(c^4 phi'^2 + t (c^2 phi'^2 + c'^2)) / (c^2 + t)`,
/// `z^t' = sign(z') sqrt(z'^2 - t f'^2)`.
pub fn deform_axial_surface<T: Scalar>(
    spec: &AxialSpec<T>,
    t: T,
) -> Result<SmoothDeformation<T, AxialSpec<T>>> {
    let range = axial_surface_range(spec);
    if !range.contains(t) {
        return Err(if t > range.t_max {
            profile_error(spec.f(), spec.z(), range.t_max_at, t)
        } else {
            out_of_range("c^2 cos^2(eta) + t", range.t_min_at, t - range.t_min)
        });
    }
    let (c, phi) = (spec.c().clone(), spec.phi().clone());
    let ud = c.domain();
    let phi_t = ScalarFunction::antiderivative(
        move |u| {
            let (cv, dc, dphi) = (c.value(u), c.derivative(u), phi.derivative(u));
            let c2 = cv * cv;
            let r = (c2 * c2 * dphi * dphi + t * (c2 * dphi * dphi + dc * dc))
                .max(T::zero())
                .sqrt();
            dphi.signum() * r / (c2 + t)
        },
        ud,
        spec.phi().value(ud.lo),
        QuadratureMode::EndpointSingular,
    );
    let surface = AxialSpec::unchecked(
        stretched_norm(spec.c(), t),
        phi_t,
        spec.f().clone(),
        stretched(spec.z(), spec.f(), -t),
    );
    Ok(SmoothDeformation {
        surface,
        parameter: t,
        creases_u: Vec::new(),
        creases_v: if t < T::zero() {
            derivative_sign_changes(spec.z())
        } else {
            Vec::new()
        },
    })
}

/// Surface of revolution `(f(v) e(phi(u)), z(v))`: the radius scales by `sqrt(1 + t)` and
/// the angle by `1 / sqrt(1 + t)` about `phi(u0)`.
pub fn deform_revolution_surface<T: Scalar>(
    f: &ScalarFunction<T>,
    phi: &ScalarFunction<T>,
    z: &ScalarFunction<T>,
    t: T,
) -> Result<SmoothDeformation<T, AxialSpec<T>>> {
    let spec = AxialSpec::revolution(f.clone(), phi.clone(), z.clone())?;
    let range = axial_surface_range(&spec);
    if !range.contains(t) {
        return Err(if t > range.t_max {
            profile_error(f, z, range.t_max_at, t)
        } else {
            out_of_range("1 + t", range.t_min_at, T::one() + t)
        });
    }
    let root = (T::one() + t).sqrt();
    let phi0 = phi.value(phi.domain().lo);
    let surface = AxialSpec::unchecked(
        ScalarFunction::constant(root, phi.domain()),
        phi.affine(phi0 * (T::one() - T::one() / root), T::one() / root),
        f.clone(),
        stretched(z, f, -t),
    );
    Ok(SmoothDeformation {
        surface,
        parameter: t,
        creases_u: Vec::new(),
        creases_v: if t < T::zero() {
            derivative_sign_changes(z)
        } else {
            Vec::new()
        },
    })
}

/// Range of the additive parameter of a T-surface:
/// `-min c^2 cos^2(eta) < t <= min z'^2 / f'^2`.
pub fn general_surface_range<T: Scalar>(spec: &SmoothSpec<T>) -> SmoothRange<T> {
    let (low, low_at) = minimize(
        |u| {
            let c = spec.c().value(u);
            let k = c * spec.eta(u).cos();
            k * k
        },
        spec.u_domain(),
    );
    let (up, up_at) = profile_upper(spec.f(), spec.z());
    SmoothRange {
        t_min: -low,
        t_max: up,
        t_min_at: Some(low_at),
        t_max_at: up_at,
        min_open: true,
    }
}

/// The general deformation: `g`, `f` kept, `c^t = sqrt(c^2 + t)`,
/// `phi^t' = phi' c sqrt(c^2 + t / cos^2(eta)) / (c^2 + t)`,
/// `eta^t = atan(c sin(eta) / sqrt(c^2 cos^2(eta) + t))`, `psi^t = phi^t - eta^t`,
/// `z^t' = sign(z') sqrt(z'^2 - t f'^2)`.
///
/// Inputs whose `phi'` changes sign are rejected; `phi' = 0` throughout is fine.
pub fn deform_general_surface<T: Scalar>(
    spec: &SmoothSpec<T>,
    t: T,
) -> Result<SmoothDeformation<T, SmoothSpec<T>>> {
    let ud = spec.u_domain();
    if let Some(at) = ud
        .samples(257)
        .into_iter()
        .find(|u| spec.c().value(*u) <= T::zero())
    {
        return Err(Error::SignChange {
            function: "c",
            at: at.to_f64_lossy(),
        });
    }
    if let Some(at) = derivative_sign_changes(spec.phi()).first() {
        return Err(Error::SignChange {
            function: "phi'",
            at: at.to_f64_lossy(),
        });
    }
    let range = general_surface_range(spec);
    if !range.contains(t) {
        return Err(if t > range.t_max {
            profile_error(spec.f(), spec.z(), range.t_max_at, t)
        } else {
            out_of_range("c^2 cos^2(eta) + t", range.t_min_at, t - range.t_min)
        });
    }
    let s1 = spec.clone();
    let phi_t = ScalarFunction::antiderivative(
        move |u| {
            let c = s1.c().value(u);
            let cos = s1.eta(u).cos();
            let r = (c * c + t / (cos * cos)).max(T::zero()).sqrt();
            s1.phi().derivative(u) * c * r / (c * c + t)
        },
        ud,
        spec.phi().value(ud.lo),
        QuadratureMode::EndpointSingular,
    );
    let (s2, phi2) = (spec.clone(), phi_t.clone());
    let psi_t = ScalarFunction::custom(
        move |u| {
            let (c, eta) = (s2.c().value(u), s2.eta(u));
            let den = (c * c * eta.cos() * eta.cos() + t).max(T::zero()).sqrt();
            phi2.value(u) - (c * eta.sin()).atan2(den)
        },
        ud,
    );
    let surface = SmoothSpec::unnormalized(
        spec.g().clone(),
        psi_t,
        stretched_norm(spec.c(), t),
        phi_t,
        spec.f().clone(),
        stretched(spec.z(), spec.f(), -t),
    );
    let residual = surface.compatibility_residual();
    if residual.is_nan() || residual > T::of(DRIFT_TOL) {
        return Err(Error::CompatibilityDrift {
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(SmoothDeformation {
        surface,
        parameter: t,
        creases_u: Vec::new(),
        creases_v: if t < T::zero() {
            derivative_sign_changes(spec.z())
        } else {
            Vec::new()
        },
    })
}

/// `c(u) = c0 exp(integral_{u0}^u phi' tan(eta))`, the length of `xi` recovered from the
/// directions alone.
pub fn reconstruct_c<T: Scalar>(
    phi: &ScalarFunction<T>,
    eta: &ScalarFunction<T>,
    c0: T,
) -> ScalarFunction<T> {
    let (p1, e1) = (phi.clone(), eta.clone());
    let rate = move |u: T| p1.derivative(u) * e1.value(u).tan();
    let rate2 = rate.clone();
    let log = ScalarFunction::antiderivative(rate, phi.domain(), T::zero(), QuadratureMode::Smooth);
    let log2 = log.clone();
    ScalarFunction::custom_with_derivative(
        move |u| c0 * log.value(u).exp(),
        move |u| c0 * log2.value(u).exp() * rate2(u),
        phi.domain(),
    )
}

/// Which trajectory a parallel partner uses.
#[derive(Debug, Clone)]
pub enum Partner<T> {
    /// `gamma' = xi - xi(u0)`: the partner is axial.
    Axial,
    /// A user curve `(x(u), y(u))` whose tangents must be parallel to those of `gamma`.
    Curve {
        x: ScalarFunction<T>,
        y: ScalarFunction<T>,
    },
}

/// Largest admissible angle between the tangents of a partner curve and of `gamma`.
pub const PARTNER_ANGLE_TOL: f64 = 1e-8;

/// A T-surface with the same `xi`, `f` and `z` and a parallel trajectory; its deformations
/// stay parallel to those of `spec`.
pub fn smooth_parallel_partner<T: Scalar>(
    spec: &SmoothSpec<T>,
    partner: Partner<T>,
) -> Result<SmoothSpec<T>> {
    let ud = spec.u_domain();
    let g = match partner {
        Partner::Axial => {
            let len = ud.length();
            if let Some(u) = ud
                .samples(257)
                .into_iter()
                .find(|u| (spec.phi().derivative(*u) * len).abs() <= T::tol(1e-10))
            {
                return Err(Error::InvalidSmooth {
                    condition: 5,
                    detail: format!("the axial partner needs phi' != 0, which fails at u = {u}"),
                });
            }
            let s = spec.clone();
            ScalarFunction::custom(
                move |u| {
                    let eta = s.eta(u);
                    s.c().derivative(u) * eta.sin()
                        + s.c().value(u) * s.phi().derivative(u) * eta.cos()
                },
                ud,
            )
        }
        Partner::Curve { x, y } => {
            if x.domain() != ud || y.domain() != ud {
                return Err(Error::InvalidFunction(
                    "partner curve must share the trajectory domain".into(),
                ));
            }
            for u in ud.samples(257) {
                let d = Vec2::new(x.derivative(u), y.derivative(u));
                let dir = Vec2::from_angle(spec.psi().value(u));
                let angle = (d.dot(dir).abs() / d.norm()).min(T::one()).asin();
                if angle.is_nan() || angle > T::of(PARTNER_ANGLE_TOL) {
                    return Err(Error::NonParallelInput {
                        angle: angle.to_f64_lossy(),
                        at: u.to_f64_lossy(),
                    });
                }
            }
            let s = spec.clone();
            ScalarFunction::custom(
                move |u| {
                    Vec2::new(x.derivative(u), y.derivative(u))
                        .dot(Vec2::from_angle_perp(s.psi().value(u)))
                },
                ud,
            )
        }
    };
    SmoothSpec::new(
        g,
        spec.psi().clone(),
        spec.c().clone(),
        spec.phi().clone(),
        spec.f().clone(),
        spec.z().clone(),
    )
}
