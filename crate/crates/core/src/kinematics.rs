//! One-parameter isometric deformations of T-hedra in closed form.
//!
//! The general deformation uses the additive parameter `t` with `C_i(t) = sqrt(C_i^2 + t)`.
//! Translational T-hedra and the Miura-ori use the exponential parameter `s`; the two are
//! related through the scale of `L_0`: `sqrt(1 + t) = e^s`.

use crate::builders::{
    axial_ratios, require_molding, AxialDesign, RevolutionData, TranslationalData,
};
use crate::design::{derive, DerivedQuantities, DesignData};
use crate::error::{AngleKind, Blocking, Error, Result};
use crate::geom::{Grid, Vec2, Vec3};
use crate::mesh::{ClassTag, THedron};
use crate::scalar::{clamp_unit, guarded_sqrt, Scalar};

/// Relative slack admitted at the ends of a parameter range and under square roots.
const RANGE_SLACK: f64 = 1e-12;

/// Additive parameter for a given exponential parameter: `t = e^{2s} - 1`.
pub fn exponential_to_additive<T: Scalar>(s: T) -> T {
    (s + s).exp_m1()
}

/// Exponential parameter for a given additive parameter: `s = ln(1 + t) / 2`.
pub fn additive_to_exponential<T: Scalar>(t: T) -> T {
    t.ln_1p() * T::of(0.5)
}

/// Admissible interval of a deformation parameter and what blocks each end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParameterRange<T> {
    pub t_min: T,
    pub t_max: T,
    pub min_blocking: Blocking,
    pub max_blocking: Blocking,
}

impl<T: Scalar> ParameterRange<T> {
    /// Closed-interval membership with a small relative slack at finite ends.
    pub fn contains(&self, t: T) -> bool {
        let slack = |b: T| T::tol(RANGE_SLACK) * b.abs().max(T::one());
        t.is_finite() && t >= self.t_min - slack(self.t_min) && t <= self.t_max + slack(self.t_max)
    }

    pub fn is_bounded_above(&self) -> bool {
        self.t_max.is_finite()
    }

    fn check(&self, t: T) -> Result<()> {
        if self.contains(t) {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                t: t.to_f64_lossy(),
                t_min: self.t_min.to_f64_lossy(),
                t_max: self.t_max.to_f64_lossy(),
                blocking: if t < self.t_min {
                    self.min_blocking
                } else {
                    self.max_blocking
                },
            })
        }
    }

    /// The same interval in the exponential parameter.
    pub fn to_exponential(&self) -> Self {
        Self {
            t_min: additive_to_exponential(self.t_min),
            t_max: additive_to_exponential(self.t_max),
            ..*self
        }
    }

    /// `count` evenly spaced samples of the closed interval. An unbounded upper end is
    /// replaced by `fallback_max`.
    pub fn samples(&self, count: usize, fallback_max: T) -> Vec<T> {
        let hi = if self.t_max.is_finite() {
            self.t_max
        } else {
            fallback_max
        };
        match count {
            0 => Vec::new(),
            1 => vec![T::zero()],
            _ => (0..count)
                .map(|k| self.t_min + (hi - self.t_min) * T::of_usize(k) / T::of_usize(count - 1))
                .collect(),
        }
    }
}

/// Deformed angles, scale factors and heights at parameter `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformationState<T> {
    pub t: T,
    /// `C_i(t) = sqrt(C_i^2 + t)`, `i = 0..m`.
    pub ct: Vec<T>,
    /// `eta_i(t)`, `i = 1..m` (stored at `i - 1`).
    pub eta_t: Vec<T>,
    pub theta_t: Vec<T>,
    pub phi_t: Vec<T>,
    pub psi_t: Vec<T>,
    /// `z_j(t)`, `j = 0..n`.
    pub z_t: Vec<T>,
    /// `k_i(t) = C_i(t) / C_i`, `i = 0..m`.
    pub k: Vec<T>,
}

/// Range of `t` over which all radicands of the general deformation stay nonnegative.
pub fn parameter_range<T: Scalar>(design: &DesignData<T>) -> Result<ParameterRange<T>> {
    let dq = derive(design)?;
    Ok(range_from_derived(&dq, &design.z))
}

fn range_from_derived<T: Scalar>(dq: &DerivedQuantities<T>, z: &[T]) -> ParameterRange<T> {
    let mut t_min = T::neg_infinity();
    let mut min_blocking = Blocking::Unbounded;
    for i in 1..=dq.eta.len() {
        let candidates = [
            (dq.cum_c[i - 1] * dq.eta[i - 1].cos(), AngleKind::Eta),
            (dq.cum_c[i] * dq.theta[i - 1].cos(), AngleKind::Theta),
        ];
        for (r, angle) in candidates {
            let bound = -(r * r);
            if bound > t_min {
                t_min = bound;
                min_blocking = Blocking::ProfileFlattening { strip: i, angle };
            }
        }
    }
    let mut t_max = T::infinity();
    let mut max_blocking = Blocking::Unbounded;
    let df = dq.delta_f();
    for j in 1..z.len() {
        if df[j - 1] != T::zero() {
            let ratio = (z[j] - z[j - 1]) / df[j - 1];
            let bound = ratio * ratio;
            if bound < t_max {
                t_max = bound;
                max_blocking = Blocking::TrajectoryFlattening { strip: j };
            }
        }
    }
    ParameterRange {
        t_min,
        t_max,
        min_blocking,
        max_blocking,
    }
}

/// `sum sign(dz) sqrt(dz^2 - t dF^2)` for every prefix; `dz` from `z`, `dF` from `delta_f`.
fn deformed_heights<T: Scalar>(z: &[T], delta_f: &[T], t: T) -> Result<Vec<T>> {
    let mut out = Vec::with_capacity(z.len());
    out.push(T::zero());
    for j in 1..z.len() {
        let dz = z[j] - z[j - 1];
        let df = delta_f[j - 1];
        let radicand = dz * dz - t * df * df;
        let slack = T::tol(RANGE_SLACK) * (dz * dz).max(t.abs() * df * df);
        let root = guarded_sqrt(radicand, slack).ok_or(Error::RadicandNegative {
            what: "trajectory strip height",
            at: j as f64,
            value: radicand.to_f64_lossy(),
        })?;
        let last = out[j - 1];
        out.push(last + dz.signum() * root);
    }
    Ok(out)
}

/// Evaluates the deformed angles and heights.
pub fn deformation_state<T: Scalar>(design: &DesignData<T>, t: T) -> Result<DeformationState<T>> {
    let dq = derive(design)?;
    range_from_derived(&dq, &design.z).check(t)?;
    state_from_derived(&dq, &design.z, t)
}

fn state_from_derived<T: Scalar>(
    dq: &DerivedQuantities<T>,
    z: &[T],
    t: T,
) -> Result<DeformationState<T>> {
    let ct: Vec<T> = dq
        .cum_c
        .iter()
        .map(|c| (*c * *c + t).max(T::zero()).sqrt())
        .collect();
    let k = ct.iter().zip(&dq.cum_c).map(|(a, b)| *a / *b).collect();
    let m = dq.eta.len();
    let mut eta_t = Vec::with_capacity(m);
    let mut theta_t = Vec::with_capacity(m);
    let mut phi_t = Vec::with_capacity(m);
    let mut psi_t = Vec::with_capacity(m);
    let mut phi = T::zero();
    for i in 1..=m {
        let e = scaled_arcsine(dq.eta[i - 1], dq.cum_c[i - 1], ct[i - 1]);
        let th = scaled_arcsine(dq.theta[i - 1], dq.cum_c[i], ct[i]);
        psi_t.push(phi + e);
        phi = phi + e + th;
        phi_t.push(phi);
        eta_t.push(e);
        theta_t.push(th);
    }
    let z_t = deformed_heights(z, &dq.delta_f(), t)?;
    Ok(DeformationState {
        t,
        ct,
        eta_t,
        theta_t,
        phi_t,
        psi_t,
        z_t,
        k,
    })
}

/// `asin(C sin(angle) / C(t))`; at a flat end the ratio reaches 1 and the result `+-pi/2`.
fn scaled_arcsine<T: Scalar>(angle: T, c: T, ct: T) -> T {
    if ct == T::zero() {
        return angle.signum() * T::FRAC_PI_2();
    }
    clamp_unit(c * angle.sin() / ct).asin()
}

/// Vertices of the deformed T-hedron:
/// `tau_ij(t) = sum g_a0 (-sin psi_a(t), cos psi_a(t)) + C_i(t) F_j (cos phi_i(t), sin phi_i(t))`,
/// `sigma_ij(t) = (tau_ij(t), z_j(t))`.
pub fn deform<T: Scalar>(design: &DesignData<T>, t: T) -> Result<THedron<T>> {
    let dq = derive(design)?;
    range_from_derived(&dq, &design.z).check(t)?;
    let st = state_from_derived(&dq, &design.z, t)?;
    let m = design.m();
    let mut base = Vec::with_capacity(m + 1);
    base.push(Vec2::zero());
    for i in 1..=m {
        let prev = base[i - 1];
        base.push(prev + Vec2::from_angle_perp(st.psi_t[i - 1]) * design.g0[i - 1]);
    }
    let points = Grid::from_fn(m + 1, design.n() + 1, |i, j| {
        let phi = if i == 0 { T::zero() } else { st.phi_t[i - 1] };
        (base[i] + Vec2::from_angle(phi) * (st.ct[i] * dq.cum_f[j])).lift(st.z_t[j])
    });
    THedron::from_grid_unchecked(points, ClassTag::General)
}

/// Range of the exponential parameter `s` of a translational T-hedron.
///
/// Below, a radicand `dy^2 + (1 - e^{-2s}) dx_row^2` vanishes (a profile strip turns parallel
/// to the profile planes); above, `dz^2 + (1 - e^{2s}) dx_col^2` vanishes.
pub fn translational_parameter_range<T: Scalar>(data: &TranslationalData<T>) -> ParameterRange<T> {
    let half = T::of(0.5);
    let mut t_min = T::neg_infinity();
    let mut min_blocking = Blocking::Unbounded;
    for a in 1..data.x_row.len() {
        let dx = data.x_row[a] - data.x_row[a - 1];
        if dx != T::zero() {
            let dy = data.y[a] - data.y[a - 1];
            let bound = -((dy / dx).powi(2)).ln_1p() * half;
            if bound > t_min {
                t_min = bound;
                min_blocking = Blocking::ProfileFlattening {
                    strip: a,
                    angle: AngleKind::Eta,
                };
            }
        }
    }
    let mut t_max = T::infinity();
    let mut max_blocking = Blocking::Unbounded;
    for b in 1..data.x_col.len() {
        let dx = data.x_col[b] - data.x_col[b - 1];
        if dx != T::zero() {
            let dz = data.z[b] - data.z[b - 1];
            let bound = ((dz / dx).powi(2)).ln_1p() * half;
            if bound < t_max {
                t_max = bound;
                max_blocking = Blocking::TrajectoryFlattening { strip: b };
            }
        }
    }
    ParameterRange {
        t_min,
        t_max,
        min_blocking,
        max_blocking,
    }
}

/// `sum sign(d) sqrt(d^2 + factor dx^2)` over the increments of `values`.
fn stretched_prefix<T: Scalar>(
    values: &[T],
    x: &[T],
    factor: T,
    what: &'static str,
) -> Result<Vec<T>> {
    let mut out = vec![T::zero()];
    for k in 1..values.len() {
        let d = values[k] - values[k - 1];
        let dx = x[k] - x[k - 1];
        let radicand = d * d + factor * dx * dx;
        let slack = T::tol(RANGE_SLACK) * (d * d).max(factor.abs() * dx * dx);
        let root = guarded_sqrt(radicand, slack).ok_or(Error::RadicandNegative {
            what,
            at: k as f64,
            value: radicand.to_f64_lossy(),
        })?;
        let last = out[k - 1];
        out.push(last + d.signum() * root);
    }
    Ok(out)
}

/// Translational deformation in the exponential parameter `s`:
/// `x_i0(s) = e^{-s} x_i0`, `x_0j(s) = e^s x_0j`,
/// `y_i(s) = sum sign(dy) sqrt(dy^2 + (1 - e^{-2s}) dx_a0^2)`,
/// `z_j(s) = sum sign(dz) sqrt(dz^2 + (1 - e^{2s}) dx_0b^2)`.
pub fn deform_translational<T: Scalar>(data: &TranslationalData<T>, s: T) -> Result<THedron<T>> {
    translational_parameter_range(data).check(s)?;
    deformed_translational_data(data, s).map(|d| {
        THedron::from_grid_unchecked(d.evaluate(), ClassTag::Translational)
            .expect("shape of valid data")
    })
}

/// Generator polygons of the deformed translational T-hedron (not re-validated: at a flat
/// end the generators may become parallel).
pub fn deformed_translational_data<T: Scalar>(
    data: &TranslationalData<T>,
    s: T,
) -> Result<TranslationalData<T>> {
    let (up, down) = (s.exp(), (-s).exp());
    let y = stretched_prefix(
        &data.y,
        &data.x_row,
        -(-(s + s)).exp_m1(),
        "profile strip width",
    )?;
    let z = stretched_prefix(
        &data.z,
        &data.x_col,
        -(s + s).exp_m1(),
        "trajectory strip height",
    )?;
    Ok(TranslationalData {
        x_row: data.x_row.iter().map(|x| *x * down).collect(),
        x_col: data.x_col.iter().map(|x| *x * up).collect(),
        y,
        z,
    })
}

/// The two flat states `(t_-, t_+)` of a Miura-ori in the exponential parameter:
/// `t_+ = ln(sqrt(a^2 + d^2) / a)`, `t_- = ln(c / sqrt(b^2 + c^2))`.
pub fn miura_flat_parameters<T: Scalar>(a: T, b: T, c: T, d: T) -> (T, T) {
    let half = T::of(0.5);
    let t_plus = ((d / a).powi(2)).ln_1p() * half;
    let t_minus = -((b / c).powi(2)).ln_1p() * half;
    (t_minus, t_plus)
}

/// Side lengths of a deformed Miura-ori.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiuraDimensions<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

/// `a(s) = e^s a`, `b(s) = sqrt(b^2 + (1 - e^{-2s}) c^2)`, `c(s) = e^{-s} c`,
/// `d(s) = sqrt(d^2 + (1 - e^{2s}) a^2)`.
pub fn miura_dimensions<T: Scalar>(a: T, b: T, c: T, d: T, s: T) -> MiuraDimensions<T> {
    let root = |r: T| r.max(T::zero()).sqrt();
    MiuraDimensions {
        a: s.exp() * a,
        b: root(b * b - (-(s + s)).exp_m1() * c * c),
        c: (-s).exp() * c,
        d: root(d * d - (s + s).exp_m1() * a * a),
    }
}

/// Molding deformation: `F(t) = sqrt(1 + t) F`, `sin eta_i(t) = sin eta_i / sqrt(1 + t)`,
/// `phi_i(t) = 2 (eta_1(t) + ... + eta_i(t))`, `g` unchanged.
pub fn deform_molding<T: Scalar>(design: &DesignData<T>, t: T) -> Result<THedron<T>> {
    require_molding(design)?;
    let dq = derive(design)?;
    range_from_derived(&dq, &design.z).check(t)?;
    let scale = (T::one() + t).max(T::zero()).sqrt();
    let z_t = deformed_heights(&design.z, &dq.delta_f(), t)?;
    let mut base = Vec2::zero();
    let mut phi = T::zero();
    let mut rows = vec![(base, phi)];
    for i in 1..=design.m() {
        let eta = scaled_arcsine(dq.eta[i - 1], T::one(), scale);
        base = base + Vec2::from_angle_perp(phi + eta) * design.g0[i - 1];
        phi = phi + eta + eta;
        rows.push((base, phi));
    }
    let points = Grid::from_fn(design.m() + 1, design.n() + 1, |i, j| {
        let (base, phi) = rows[i];
        (base + Vec2::from_angle(phi) * (scale * dq.cum_f[j])).lift(z_t[j])
    });
    THedron::from_grid_unchecked(points, ClassTag::Molding)
}

/// Axial deformation about the fixed z-axis:
/// `sigma_ij(t) = (C_i(t) F_j cos phi_i(t), C_i(t) F_j sin phi_i(t), z_j(t))`.
pub fn deform_axial<T: Scalar>(axial: &AxialDesign<T>, t: T) -> Result<THedron<T>> {
    let design = axial.to_design()?;
    let dq = derive(&design)?;
    range_from_derived(&dq, &design.z).check(t)?;
    let st = state_from_derived(&dq, &design.z, t)?;
    let radii = axial.radii();
    let points = Grid::from_fn(axial.m() + 1, axial.n() + 1, |i, j| {
        let phi = if i == 0 { T::zero() } else { st.phi_t[i - 1] };
        (Vec2::from_angle(phi) * (st.ct[i] * radii[j])).lift(st.z_t[j])
    });
    THedron::from_grid_unchecked(points, ClassTag::Axial)
}

/// Parameter range of an axial T-hedron (that of its normal form).
pub fn axial_parameter_range<T: Scalar>(axial: &AxialDesign<T>) -> Result<ParameterRange<T>> {
    parameter_range(&axial.to_design()?)
}

/// Revolution deformation: `sigma_ij(t) = (sqrt(1 + t) F_j e(phi_i(t)), z_j(t))` with
/// `phi_i(t) = 2 sum asin(sin(dphi_a / 2) / sqrt(1 + t))`.
pub fn deform_revolution<T: Scalar>(data: &RevolutionData<T>, t: T) -> Result<THedron<T>> {
    let range = revolution_parameter_range(data)?;
    range.check(t)?;
    let scale = (T::one() + t).max(T::zero()).sqrt();
    let delta_f: Vec<T> = data.radii.windows(2).map(|w| w[1] - w[0]).collect();
    let z_t = deformed_heights(&data.z, &delta_f, t)?;
    let half = T::of(0.5);
    let mut phis = vec![T::zero()];
    let mut prev = T::zero();
    for p in &data.phi {
        let eta = scaled_arcsine((*p - prev) * half, T::one(), scale);
        let last = *phis.last().expect("non-empty");
        phis.push(last + eta + eta);
        prev = *p;
    }
    let points = Grid::from_fn(data.m() + 1, data.n() + 1, |i, j| {
        (Vec2::from_angle(phis[i]) * (scale * data.radii[j])).lift(z_t[j])
    });
    THedron::from_grid_unchecked(points, ClassTag::Revolution)
}

/// `t_min = -min cos^2(dphi / 2)`, `t_max = min (dz / dF)^2`.
pub fn revolution_parameter_range<T: Scalar>(
    data: &RevolutionData<T>,
) -> Result<ParameterRange<T>> {
    axial_parameter_range(&data.to_axial()?)
}

/// The axial T-hedron parallel to `design` that shares its angles, `f`, `z` and `g_10`.
pub fn parallel_axial<T: Scalar>(design: &DesignData<T>) -> Result<DesignData<T>> {
    let dq = derive(design)?;
    for i in 1..=design.m() {
        if (dq.eta[i - 1] + dq.theta[i - 1]).sin().abs() <= T::tol(crate::design::ANGLE_TOL) {
            return Err(Error::ConsecutiveParallelPlanes { index: i });
        }
    }
    let ratios = axial_ratios(design)?;
    let mut out = design.clone();
    out.g0 = ratios.iter().map(|r| *r * design.g0[0]).collect();
    // The first ratio is 1 by definition; keep g_10 bit-identical.
    out.g0[0] = design.g0[0];
    Ok(out)
}

/// True iff every pair of corresponding edges is parallel within `tol` radians.
pub fn is_parallel<T: Scalar>(a: &THedron<T>, b: &THedron<T>, tol: T) -> Result<bool> {
    Ok(max_edge_angle(a, b)? <= tol)
}

/// Largest angle between corresponding edges of two equally shaped grids.
pub fn max_edge_angle<T: Scalar>(a: &THedron<T>, b: &THedron<T>) -> Result<T> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: b.shape(),
        });
    }
    let (pa, pb) = (a.points(), b.points());
    let edge =
        |p: &Grid<Vec3<T>>, i0: usize, j0: usize, i1: usize, j1: usize| p[(i1, j1)] - p[(i0, j0)];
    let mut worst = T::zero();
    for i in 0..pa.rows() {
        for j in 0..pa.cols() {
            if j + 1 < pa.cols() {
                worst = worst.max(edge(pa, i, j, i, j + 1).line_angle(edge(pb, i, j, i, j + 1)));
            }
            if i + 1 < pa.rows() {
                worst = worst.max(edge(pa, i, j, i + 1, j).line_angle(edge(pb, i, j, i + 1, j)));
            }
        }
    }
    Ok(worst)
}
