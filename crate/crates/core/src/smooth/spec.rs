//! Smooth T-surfaces `sigma(u, v) = (gamma(u) + f(v) xi(u), z(v))` and the two special
//! parametrizations (axial, translational) that do not fit that normal form directly.

use crate::error::{Error, Result};
use crate::geom::{Vec2, Vec3};
use crate::mesh::ClassTag;
use crate::scalar::{wrap_angle, Scalar};
use crate::smooth::function::{Interval, ScalarFunction};
use crate::smooth::quadrature::QuadratureMode;

/// Points per domain used by every sampled validity check.
pub const VALIDATION_SAMPLES: usize = 257;
/// Relative tolerance of the compatibility condition `c' cos(eta) = c phi' sin(eta)`.
pub const COMPATIBILITY_TOL: f64 = 1e-8;
/// Threshold of the normalized windowed Gram determinant of `(f, z)`.
pub const GRAM_TOL: f64 = 1e-10;
const NONZERO_TOL: f64 = 1e-10;
const WINDOW_SAMPLES: usize = 33;

/// Coefficients of the first fundamental form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForm<T> {
    pub e: T,
    pub f: T,
    pub g: T,
}

impl<T: Scalar> FundamentalForm<T> {
    pub fn max_difference(&self, other: &Self) -> T {
        (self.e - other.e)
            .abs()
            .max((self.f - other.f).abs())
            .max((self.g - other.g).abs())
    }

    /// `max(E, G)`, the natural scale of the form.
    pub fn scale(&self) -> T {
        self.e.max(self.g)
    }
}

/// A parametrized surface on a rectangle of parameters.
pub trait Surface<T: Scalar>: Send + Sync {
    fn u_domain(&self) -> Interval<T>;
    fn v_domain(&self) -> Interval<T>;
    /// Point without a domain check.
    fn point_at(&self, u: T, v: T) -> Vec3<T>;
    /// `(sigma_u, sigma_v)` without a domain check.
    fn partials_at(&self, u: T, v: T) -> (Vec3<T>, Vec3<T>);

    fn class_tag(&self) -> ClassTag {
        ClassTag::General
    }

    fn check_domain(&self, u: T, v: T) -> Result<()> {
        self.u_domain().check(u)?;
        self.v_domain().check(v)
    }

    fn point(&self, u: T, v: T) -> Result<Vec3<T>> {
        self.check_domain(u, v)?;
        Ok(self.point_at(u, v))
    }

    fn partials(&self, u: T, v: T) -> Result<(Vec3<T>, Vec3<T>)> {
        self.check_domain(u, v)?;
        Ok(self.partials_at(u, v))
    }

    fn first_fundamental_form(&self, u: T, v: T) -> Result<FundamentalForm<T>> {
        let (su, sv) = self.partials(u, v)?;
        Ok(FundamentalForm {
            e: su.dot(su),
            f: su.dot(sv),
            g: sv.dot(sv),
        })
    }
}

pub fn evaluate<T: Scalar, S: Surface<T> + ?Sized>(surface: &S, u: T, v: T) -> Result<Vec3<T>> {
    surface.point(u, v)
}

pub fn first_fundamental_form<T: Scalar, S: Surface<T> + ?Sized>(
    surface: &S,
    u: T,
    v: T,
) -> Result<FundamentalForm<T>> {
    surface.first_fundamental_form(u, v)
}

fn same_domain<T: Scalar>(fs: &[(&str, &ScalarFunction<T>)]) -> Result<Interval<T>> {
    let d = fs[0].1.domain();
    for (name, f) in &fs[1..] {
        if f.domain() != d {
            return Err(Error::InvalidFunction(format!(
                "`{name}` is defined on [{}, {}], expected [{}, {}] like `{}`",
                f.domain().lo,
                f.domain().hi,
                d.lo,
                d.hi,
                fs[0].0
            )));
        }
    }
    Ok(d)
}

fn invalid(condition: u8, detail: String) -> Error {
    Error::InvalidSmooth { condition, detail }
}

/// The profile `(f, z)` contains no straight segment: on every window of length `domain / 8`
/// the normalized Gram determinant of the centred samples stays above [`GRAM_TOL`].
fn check_profile_not_straight<T: Scalar>(
    f: &ScalarFunction<T>,
    z: &ScalarFunction<T>,
) -> Result<()> {
    let d = f.domain();
    let (width, step) = (d.length() / T::of(8.0), d.length() / T::of(16.0));
    for w in 0..15 {
        let lo = d.lo + step * T::of_usize(w);
        let window = Interval {
            lo,
            hi: (lo + width).min(d.hi),
        };
        let pts: Vec<(T, T)> = window
            .samples(WINDOW_SAMPLES)
            .into_iter()
            .map(|v| (f.value(v), z.value(v)))
            .collect();
        let count = T::of_usize(pts.len());
        let (mf, mz) = pts
            .iter()
            .fold((T::zero(), T::zero()), |(a, b), p| (a + p.0, b + p.1));
        let (mf, mz) = (mf / count, mz / count);
        let (mut sff, mut szz, mut sfz) = (T::zero(), T::zero(), T::zero());
        for (a, b) in &pts {
            let (x, y) = (*a - mf, *b - mz);
            sff = sff + x * x;
            szz = szz + y * y;
            sfz = sfz + x * y;
        }
        let trace = sff + szz;
        let ratio = if trace > T::zero() {
            (sff * szz - sfz * sfz) / (trace * trace)
        } else {
            T::zero()
        };
        if ratio <= T::tol(GRAM_TOL) {
            return Err(invalid(
                2,
                format!(
                    "profile is straight on [{}, {}] (Gram ratio {ratio})",
                    window.lo, window.hi
                ),
            ));
        }
    }
    Ok(())
}

/// `(f', z') != (0, 0)` at every sample.
fn check_profile_regular<T: Scalar>(f: &ScalarFunction<T>, z: &ScalarFunction<T>) -> Result<()> {
    let vs = f.domain().samples(VALIDATION_SAMPLES);
    let speeds: Vec<T> = vs
        .iter()
        .map(|v| f.derivative(*v).hypot(z.derivative(*v)))
        .collect();
    let scale = speeds.iter().copied().fold(T::zero(), T::max);
    for (v, s) in vs.iter().zip(&speeds) {
        if *s <= T::tol(NONZERO_TOL) * scale.max(T::min_positive_value()) {
            return Err(invalid(3, format!("(f', z') vanishes at v = {v}")));
        }
    }
    Ok(())
}

/// Sign changes of a sampled function, located by bisection.
pub(crate) fn sign_changes<T: Scalar>(h: impl Fn(T) -> T, domain: Interval<T>) -> Vec<T> {
    let xs = domain.samples(4 * VALIDATION_SAMPLES);
    let mut out = Vec::new();
    let mut last: Option<(T, T)> = None;
    for x in xs {
        let y = h(x);
        if y == T::zero() {
            continue;
        }
        if let Some((px, py)) = last {
            if (py > T::zero()) != (y > T::zero()) {
                let (mut a, mut b, sa) = (px, x, py > T::zero());
                for _ in 0..60 {
                    let m = (a + b) * T::of(0.5);
                    let hm = h(m);
                    if hm == T::zero() {
                        a = m;
                        b = m;
                        break;
                    }
                    if (hm > T::zero()) == sa {
                        a = m;
                    } else {
                        b = m;
                    }
                }
                out.push((a + b) * T::of(0.5));
            }
        }
        last = Some((x, y));
    }
    out
}

/// Functional data of a smooth T-surface.
///
/// `gamma' = g (-sin psi, cos psi)` with `gamma(u0) = 0`, `xi = c (cos phi, sin phi)`, and
/// `sigma(u, v) = (gamma(u) + f(v) xi(u), z(v))`. The angle `eta = phi - psi` is measured
/// from the right-hand normal of `gamma` to `xi`.
#[derive(Debug, Clone)]
pub struct SmoothSpec<T> {
    g: ScalarFunction<T>,
    psi: ScalarFunction<T>,
    c: ScalarFunction<T>,
    phi: ScalarFunction<T>,
    f: ScalarFunction<T>,
    z: ScalarFunction<T>,
    gamma: [ScalarFunction<T>; 2],
}

impl<T: Scalar> SmoothSpec<T> {
    /// Normalizes `|xi(u0)| = 1` (scaling `c` down and `f` up) and checks the six conditions
    /// on a sample grid.
    pub fn new(
        g: ScalarFunction<T>,
        psi: ScalarFunction<T>,
        c: ScalarFunction<T>,
        phi: ScalarFunction<T>,
        f: ScalarFunction<T>,
        z: ScalarFunction<T>,
    ) -> Result<Self> {
        let u = same_domain(&[("g", &g), ("psi", &psi), ("c", &c), ("phi", &phi)])?;
        same_domain(&[("f", &f), ("z", &z)])?;
        let k = c.value(u.lo).abs();
        if !(k.is_finite() && k > T::zero()) {
            return Err(invalid(5, format!("|xi(u0)| = {k} must be positive")));
        }
        let spec = Self::unnormalized(g, psi, c.scale(T::one() / k), phi, f.scale(k), z);
        spec.validate()?;
        Ok(spec)
    }

    /// Assembles the data as given, without normalization or checks.
    pub(crate) fn unnormalized(
        g: ScalarFunction<T>,
        psi: ScalarFunction<T>,
        c: ScalarFunction<T>,
        phi: ScalarFunction<T>,
        f: ScalarFunction<T>,
        z: ScalarFunction<T>,
    ) -> Self {
        let u = g.domain();
        let component = |k: usize| {
            let (g, psi) = (g.clone(), psi.clone());
            ScalarFunction::antiderivative(
                move |w| {
                    let e = Vec2::from_angle_perp(psi.value(w));
                    g.value(w) * if k == 0 { e.x } else { e.y }
                },
                u,
                T::zero(),
                QuadratureMode::Smooth,
            )
        };
        let gamma = [component(0), component(1)];
        Self {
            g,
            psi,
            c,
            phi,
            f,
            z,
            gamma,
        }
    }

    pub fn g(&self) -> &ScalarFunction<T> {
        &self.g
    }
    pub fn psi(&self) -> &ScalarFunction<T> {
        &self.psi
    }
    pub fn c(&self) -> &ScalarFunction<T> {
        &self.c
    }
    pub fn phi(&self) -> &ScalarFunction<T> {
        &self.phi
    }
    pub fn f(&self) -> &ScalarFunction<T> {
        &self.f
    }
    pub fn z(&self) -> &ScalarFunction<T> {
        &self.z
    }
    /// Coordinate functions of the trajectory curve `gamma`.
    pub fn gamma_components(&self) -> &[ScalarFunction<T>; 2] {
        &self.gamma
    }

    pub fn gamma(&self, u: T) -> Vec2<T> {
        Vec2::new(self.gamma[0].value(u), self.gamma[1].value(u))
    }

    pub fn gamma_dot(&self, u: T) -> Vec2<T> {
        Vec2::from_angle_perp(self.psi.value(u)) * self.g.value(u)
    }

    /// `eta = phi - psi`, wrapped into `(-pi, pi]`.
    pub fn eta(&self, u: T) -> T {
        wrap_angle(self.phi.value(u) - self.psi.value(u))
    }

    pub fn xi(&self, u: T) -> Vec2<T> {
        Vec2::from_angle(self.phi.value(u)) * self.c.value(u)
    }

    pub fn xi_dot(&self, u: T) -> Vec2<T> {
        let phi = self.phi.value(u);
        Vec2::from_angle(phi) * self.c.derivative(u)
            + Vec2::from_angle_perp(phi) * (self.c.value(u) * self.phi.derivative(u))
    }

    /// `lambda` with `xi' = lambda gamma'`.
    pub fn lambda(&self, u: T) -> T {
        let eta = self.eta(u);
        (self.c.derivative(u) * eta.sin() + self.c.value(u) * self.phi.derivative(u) * eta.cos())
            / self.g.value(u)
    }

    /// Largest relative residual of `c' cos(eta) - c phi' sin(eta)` over the samples.
    pub fn compatibility_residual(&self) -> T {
        let d = self.u_domain();
        d.samples(VALIDATION_SAMPLES)
            .into_iter()
            .map(|u| {
                let (c, dc, dphi, eta) = (
                    self.c.value(u),
                    self.c.derivative(u),
                    self.phi.derivative(u),
                    self.eta(u),
                );
                let scale = dc.abs() + (c * dphi).abs() + c.abs() / d.length();
                (dc * eta.cos() - c * dphi * eta.sin()).abs() / scale
            })
            .fold(T::zero(), T::max)
    }

    /// Checks the six conditions on [`VALIDATION_SAMPLES`] points per domain.
    pub fn validate(&self) -> Result<()> {
        let (ud, vd) = (self.u_domain(), self.v_domain());
        let fscale = self
            .f
            .sample(VALIDATION_SAMPLES)
            .into_iter()
            .fold(T::zero(), |a, x| a.max(x.abs()));
        if self.f.value(vd.lo).abs() > T::tol(NONZERO_TOL) * fscale.max(T::one()) {
            return Err(invalid(
                1,
                format!("f(v0) = {} must vanish", self.f.value(vd.lo)),
            ));
        }
        check_profile_not_straight(&self.f, &self.z)?;
        check_profile_regular(&self.f, &self.z)?;

        let (width, step) = (ud.length() / T::of(8.0), ud.length() / T::of(16.0));
        for w in 0..15 {
            let lo = ud.lo + step * T::of_usize(w);
            let window = Interval {
                lo,
                hi: (lo + width).min(ud.hi),
            };
            let turn = window
                .samples(WINDOW_SAMPLES)
                .into_iter()
                .map(|u| self.psi.derivative(u).abs())
                .fold(T::zero(), T::max)
                * ud.length();
            if turn <= T::tol(NONZERO_TOL) {
                return Err(invalid(
                    4,
                    format!("trajectory is straight on [{}, {}]", window.lo, window.hi),
                ));
            }
        }

        let us = ud.samples(VALIDATION_SAMPLES);
        let gscale = us
            .iter()
            .fold(T::zero(), |a, u| a.max(self.g.value(*u).abs()));
        for u in &us {
            if self.g.value(*u).abs() <= T::tol(NONZERO_TOL) * gscale.max(T::min_positive_value()) {
                return Err(invalid(5, format!("gamma' vanishes at u = {u}")));
            }
            let cos = self.eta(*u).cos();
            if cos <= T::tol(NONZERO_TOL) {
                return Err(invalid(
                    5,
                    format!("|eta| reaches pi/2 at u = {u} (cos eta = {cos})"),
                ));
            }
        }

        let residual = self.compatibility_residual();
        if residual > T::tol(COMPATIBILITY_TOL) {
            return Err(invalid(
                6,
                format!("c' cos(eta) = c phi' sin(eta) violated by {residual} (relative)"),
            ));
        }
        let fs = self.f.sample(VALIDATION_SAMPLES);
        let (fmin, fmax) = fs
            .iter()
            .fold((T::infinity(), T::neg_infinity()), |(a, b), x| {
                (a.min(*x), b.max(*x))
            });
        for u in &us {
            let l = self.lambda(*u);
            let worst = (T::one() + fmin * l).min(T::one() + fmax * l);
            if worst <= T::tol(NONZERO_TOL) {
                return Err(invalid(
                    6,
                    format!("1 + f lambda reaches {worst} at u = {u}: the surface is singular"),
                ));
            }
        }
        Ok(())
    }
}

impl<T: Scalar> Surface<T> for SmoothSpec<T> {
    fn u_domain(&self) -> Interval<T> {
        self.g.domain()
    }

    fn v_domain(&self) -> Interval<T> {
        self.f.domain()
    }

    fn point_at(&self, u: T, v: T) -> Vec3<T> {
        (self.gamma(u) + self.xi(u) * self.f.value(v)).lift(self.z.value(v))
    }

    fn partials_at(&self, u: T, v: T) -> (Vec3<T>, Vec3<T>) {
        let su = self.gamma_dot(u) + self.xi_dot(u) * self.f.value(v);
        let sv = self.xi(u) * self.f.derivative(v);
        (su.lift(T::zero()), sv.lift(self.z.derivative(v)))
    }
}

/// Axial T-surface `sigma(u, v) = (f(v) c(u) (cos phi(u), sin phi(u)), z(v))`: every profile
/// plane contains the z-axis.
#[derive(Debug, Clone)]
pub struct AxialSpec<T> {
    c: ScalarFunction<T>,
    phi: ScalarFunction<T>,
    f: ScalarFunction<T>,
    z: ScalarFunction<T>,
}

impl<T: Scalar> AxialSpec<T> {
    /// Needs `c > 0`, `phi' != 0`, `f != 0` and a regular, nowhere straight profile.
    pub fn new(
        c: ScalarFunction<T>,
        phi: ScalarFunction<T>,
        f: ScalarFunction<T>,
        z: ScalarFunction<T>,
    ) -> Result<Self> {
        same_domain(&[("c", &c), ("phi", &phi)])?;
        same_domain(&[("f", &f), ("z", &z)])?;
        let spec = Self { c, phi, f, z };
        spec.validate()?;
        Ok(spec)
    }

    /// Surface of revolution: `c = 1`.
    pub fn revolution(
        f: ScalarFunction<T>,
        phi: ScalarFunction<T>,
        z: ScalarFunction<T>,
    ) -> Result<Self> {
        Self::new(ScalarFunction::constant(T::one(), phi.domain()), phi, f, z)
    }

    pub(crate) fn unchecked(
        c: ScalarFunction<T>,
        phi: ScalarFunction<T>,
        f: ScalarFunction<T>,
        z: ScalarFunction<T>,
    ) -> Self {
        Self { c, phi, f, z }
    }

    fn validate(&self) -> Result<()> {
        check_profile_not_straight(&self.f, &self.z)?;
        check_profile_regular(&self.f, &self.z)?;
        let ud = self.c.domain();
        for u in ud.samples(VALIDATION_SAMPLES) {
            if self.c.value(u) <= T::zero() {
                return Err(invalid(
                    5,
                    format!("c must be positive, c({u}) = {}", self.c.value(u)),
                ));
            }
            if (self.phi.derivative(u) * ud.length()).abs() <= T::tol(NONZERO_TOL) {
                return Err(invalid(
                    4,
                    format!("phi' vanishes at u = {u}: consecutive profile planes coincide"),
                ));
            }
        }
        let fs = self.f.sample(VALIDATION_SAMPLES);
        let scale = fs.iter().fold(T::zero(), |a, x| a.max(x.abs()));
        if fs.iter().any(|x| x.abs() <= T::tol(NONZERO_TOL) * scale) {
            return Err(invalid(5, "f vanishes: the profile meets the axis".into()));
        }
        Ok(())
    }

    pub fn c(&self) -> &ScalarFunction<T> {
        &self.c
    }
    pub fn phi(&self) -> &ScalarFunction<T> {
        &self.phi
    }
    pub fn f(&self) -> &ScalarFunction<T> {
        &self.f
    }
    pub fn z(&self) -> &ScalarFunction<T> {
        &self.z
    }

    /// The same surface in the normal form, translated by `-f(v0) xi(u0)`:
    /// `gamma = f(v0) (xi - xi(u0))`, `f -> f - f(v0)`, `tan(eta) = c' / (c phi')`.
    pub fn to_general(&self) -> Result<SmoothSpec<T>> {
        let ud = self.c.domain();
        let f0 = self.f.value(self.f.domain().lo);
        let (c1, phi1) = (self.c.clone(), self.phi.clone());
        let eta = move |u: T| (c1.derivative(u) / (c1.value(u) * phi1.derivative(u))).atan();
        let (eta1, phi2) = (eta.clone(), self.phi.clone());
        let psi = ScalarFunction::custom(move |u| phi2.value(u) - eta1(u), ud);
        let (c2, phi3) = (self.c.clone(), self.phi.clone());
        let g = ScalarFunction::custom(
            move |u| {
                let e = eta(u);
                f0 * (c2.derivative(u) * e.sin() + c2.value(u) * phi3.derivative(u) * e.cos())
            },
            ud,
        );
        SmoothSpec::new(
            g,
            psi,
            self.c.clone(),
            self.phi.clone(),
            self.f.affine(-f0, T::one()),
            self.z.clone(),
        )
    }
}

impl<T: Scalar> Surface<T> for AxialSpec<T> {
    fn u_domain(&self) -> Interval<T> {
        self.c.domain()
    }

    fn v_domain(&self) -> Interval<T> {
        self.f.domain()
    }

    fn class_tag(&self) -> ClassTag {
        ClassTag::Axial
    }

    fn point_at(&self, u: T, v: T) -> Vec3<T> {
        let xi = Vec2::from_angle(self.phi.value(u)) * self.c.value(u);
        (xi * self.f.value(v)).lift(self.z.value(v))
    }

    fn partials_at(&self, u: T, v: T) -> (Vec3<T>, Vec3<T>) {
        let phi = self.phi.value(u);
        let xi = Vec2::from_angle(phi) * self.c.value(u);
        let xi_dot = Vec2::from_angle(phi) * self.c.derivative(u)
            + Vec2::from_angle_perp(phi) * (self.c.value(u) * self.phi.derivative(u));
        (
            (xi_dot * self.f.value(v)).lift(T::zero()),
            (xi * self.f.derivative(v)).lift(self.z.derivative(v)),
        )
    }
}

/// Translational T-surface `sigma(u, v) = (x(u) + f(v), y(u), z(v))`: the trajectory
/// `(x, y, 0)` translated along the profile `(f, 0, z)`.
#[derive(Debug, Clone)]
pub struct TranslationalSpec<T> {
    x: ScalarFunction<T>,
    y: ScalarFunction<T>,
    f: ScalarFunction<T>,
    z: ScalarFunction<T>,
}

impl<T: Scalar> TranslationalSpec<T> {
    pub fn new(
        x: ScalarFunction<T>,
        y: ScalarFunction<T>,
        f: ScalarFunction<T>,
        z: ScalarFunction<T>,
    ) -> Result<Self> {
        same_domain(&[("x", &x), ("y", &y)])?;
        same_domain(&[("f", &f), ("z", &z)])?;
        let spec = Self { x, y, f, z };
        spec.validate()?;
        Ok(spec)
    }

    pub(crate) fn unchecked(
        x: ScalarFunction<T>,
        y: ScalarFunction<T>,
        f: ScalarFunction<T>,
        z: ScalarFunction<T>,
    ) -> Self {
        Self { x, y, f, z }
    }

    fn validate(&self) -> Result<()> {
        check_profile_regular(&self.f, &self.z)?;
        check_profile_regular(&self.x, &self.y)
            .map_err(|_| invalid(5, "the trajectory (x, y) is singular".into()))?;
        let min_abs = |h: &ScalarFunction<T>| {
            let s = h.domain().samples(VALIDATION_SAMPLES);
            let scale = s
                .iter()
                .fold(T::zero(), |a, x| a.max(h.derivative(*x).abs()));
            let low = s
                .iter()
                .fold(T::infinity(), |a, x| a.min(h.derivative(*x).abs()));
            low <= T::tol(NONZERO_TOL) * scale.max(T::min_positive_value())
        };
        if min_abs(&self.y) && min_abs(&self.z) {
            return Err(invalid(
                5,
                "y' and z' both vanish somewhere: the generators become parallel".into(),
            ));
        }
        Ok(())
    }

    pub fn x(&self) -> &ScalarFunction<T> {
        &self.x
    }
    pub fn y(&self) -> &ScalarFunction<T> {
        &self.y
    }
    pub fn f(&self) -> &ScalarFunction<T> {
        &self.f
    }
    pub fn z(&self) -> &ScalarFunction<T> {
        &self.z
    }

    /// The same surface in the normal form (`xi = (1, 0)`), translated so that the point
    /// `(u0, v0)` moves to `(0, 0, z(v0))`. Needs `y' != 0`.
    pub fn to_general(&self) -> Result<SmoothSpec<T>> {
        let ud = self.x.domain();
        let (x1, y1) = (self.x.clone(), self.y.clone());
        let psi =
            ScalarFunction::custom(move |u| (-x1.derivative(u) / y1.derivative(u)).atan(), ud);
        let (x2, y2) = (self.x.clone(), self.y.clone());
        let g = ScalarFunction::custom(
            move |u| {
                let dy = y2.derivative(u);
                dy.signum() * x2.derivative(u).hypot(dy)
            },
            ud,
        );
        let f0 = self.f.value(self.f.domain().lo);
        SmoothSpec::new(
            g,
            psi,
            ScalarFunction::constant(T::one(), ud),
            ScalarFunction::constant(T::zero(), ud),
            self.f.affine(-f0, T::one()),
            self.z.clone(),
        )
    }
}

impl<T: Scalar> Surface<T> for TranslationalSpec<T> {
    fn u_domain(&self) -> Interval<T> {
        self.x.domain()
    }

    fn v_domain(&self) -> Interval<T> {
        self.f.domain()
    }

    fn class_tag(&self) -> ClassTag {
        ClassTag::Translational
    }

    fn point_at(&self, u: T, v: T) -> Vec3<T> {
        Vec3::new(
            self.x.value(u) + self.f.value(v),
            self.y.value(u),
            self.z.value(v),
        )
    }

    fn partials_at(&self, u: T, v: T) -> (Vec3<T>, Vec3<T>) {
        (
            Vec3::new(self.x.derivative(u), self.y.derivative(u), T::zero()),
            Vec3::new(self.f.derivative(v), T::zero(), self.z.derivative(v)),
        )
    }
}
