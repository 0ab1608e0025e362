//! Constructors for T-hedra and the special classes, and a classifier.

use crate::design::{build_tnet, derive, ground_view, DesignData, TNet, ANGLE_TOL, COLLINEAR_TOL};
use crate::error::{Error, Result};
use crate::geom::{planar_spread, Grid, Vec2, Vec3};
use crate::mesh::{ClassTag, THedron};
use crate::scalar::Scalar;

/// Lifts a T-net: `sigma_ij = (tau_ij, z_j)`.
pub fn lift<T: Scalar>(net: &TNet<T>, z: &[T]) -> Result<THedron<T>> {
    check_heights(z, net.n())?;
    if net.n() >= 2 {
        let tol = T::tol(COLLINEAR_TOL);
        for (i, line) in net.lines().iter().enumerate() {
            let profile: Vec<_> = net
                .points()
                .row(i)
                .iter()
                .zip(z)
                .map(|(p, z)| Vec2::new(line.coordinate(*p), *z))
                .collect();
            if planar_spread(&profile) <= tol {
                return Err(Error::CollinearProfile { index: i });
            }
        }
    }
    let points = Grid::from_fn(net.points().rows(), net.points().cols(), |i, j| {
        net.points()[(i, j)].lift(z[j])
    });
    THedron::new(points, ClassTag::General)
}

fn check_heights<T: Scalar>(z: &[T], n: usize) -> Result<()> {
    if z.len() != n + 1 {
        return Err(Error::LengthMismatch {
            field: "z",
            expected: n + 1,
            actual: z.len(),
        });
    }
    if z[0] != T::zero() {
        return Err(Error::BaseHeight {
            value: z[0].to_f64_lossy(),
        });
    }
    if let Some(j) = (1..z.len()).find(|&j| z[j] == z[j - 1]) {
        return Err(Error::DegenerateHeights { index: j });
    }
    Ok(())
}

/// The T-hedron generated by a design: `build_tnet` followed by `lift`.
pub fn build_thedron<T: Scalar>(design: &DesignData<T>) -> Result<THedron<T>> {
    lift(&build_tnet(design)?, &design.z)
}

/// Generator polygons of a translational T-hedron
/// `sigma_ij = (x_i0 + x_0j, y_i, z_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TranslationalData<T> {
    /// `x_00..x_m0`, the x-coordinates of the trajectory generator.
    pub x_row: Vec<T>,
    /// `x_00..x_0n`, the x-coordinates of the profile generator.
    pub x_col: Vec<T>,
    /// `y_0..y_m`.
    pub y: Vec<T>,
    /// `z_0..z_n`.
    pub z: Vec<T>,
}

impl<T: Scalar> TranslationalData<T> {
    pub fn new(x_row: Vec<T>, x_col: Vec<T>, y: Vec<T>, z: Vec<T>) -> Result<Self> {
        let d = Self { x_row, x_col, y, z };
        d.validate()?;
        Ok(d)
    }

    pub fn m(&self) -> usize {
        self.x_row.len() - 1
    }

    pub fn n(&self) -> usize {
        self.x_col.len() - 1
    }

    fn validate(&self) -> Result<()> {
        for (field, v) in [("x_row", &self.x_row), ("x_col", &self.x_col)] {
            if v.len() < 2 {
                return Err(Error::LengthMismatch {
                    field,
                    expected: 2,
                    actual: v.len(),
                });
            }
        }
        for (field, v, len) in [
            ("y", &self.y, self.x_row.len()),
            ("z", &self.z, self.x_col.len()),
        ] {
            if v.len() != len {
                return Err(Error::LengthMismatch {
                    field,
                    expected: len,
                    actual: v.len(),
                });
            }
        }
        for (field, v) in [
            ("x_row", &self.x_row),
            ("x_col", &self.x_col),
            ("y", &self.y),
            ("z", &self.z),
        ] {
            if let Some(index) = v.iter().position(|x| !x.is_finite()) {
                return Err(Error::NotFinite { field, index });
            }
            if v[0] != T::zero() {
                return Err(Error::NotATHedron {
                    reason: format!("{field}[0] must be 0"),
                });
            }
        }
        let tol = T::tol(ANGLE_TOL);
        for a in 1..self.x_row.len() {
            let row_edge = Vec3::new(
                self.x_row[a] - self.x_row[a - 1],
                self.y[a] - self.y[a - 1],
                T::zero(),
            );
            for b in 1..self.x_col.len() {
                let col_edge = Vec3::new(
                    self.x_col[b] - self.x_col[b - 1],
                    T::zero(),
                    self.z[b] - self.z[b - 1],
                );
                if row_edge.norm() > T::zero()
                    && col_edge.norm() > T::zero()
                    && row_edge.line_angle(col_edge) <= tol
                {
                    return Err(Error::ParallelGenerators {
                        row_edge: a,
                        col_edge: b,
                    });
                }
            }
        }
        Ok(())
    }

    /// Design data of the same surface (`phi = 0`). Needs `y_i != y_{i-1}` and `z_j != z_{j-1}`.
    pub fn to_design(&self) -> Result<DesignData<T>> {
        let mut psi = Vec::with_capacity(self.m());
        let mut g0 = Vec::with_capacity(self.m());
        for a in 1..=self.m() {
            let dx = self.x_row[a] - self.x_row[a - 1];
            let dy = self.y[a] - self.y[a - 1];
            if dy == T::zero() {
                return Err(Error::CoincidentPlanes { index: a });
            }
            psi.push((-dx / dy).atan());
            g0.push(dy.signum() * dx.hypot(dy));
        }
        let f0 = self.x_col.windows(2).map(|w| w[1] - w[0]).collect();
        DesignData::new(vec![T::zero(); self.m()], psi, f0, g0, self.z.clone())
    }

    pub(crate) fn evaluate(&self) -> Grid<Vec3<T>> {
        Grid::from_fn(self.x_row.len(), self.x_col.len(), |i, j| {
            Vec3::new(self.x_row[i] + self.x_col[j], self.y[i], self.z[j])
        })
    }
}

/// `sigma_ij = (x_i0 + x_0j, y_i, z_j)`; every face is a parallelogram.
pub fn build_translational<T: Scalar>(data: &TranslationalData<T>) -> Result<THedron<T>> {
    data.validate()?;
    THedron::new(data.evaluate(), ClassTag::Translational)
}

/// Largest `|theta_i - eta_i|` of a design.
pub fn molding_residual<T: Scalar>(design: &DesignData<T>) -> Result<(usize, T)> {
    let dq = derive(design)?;
    Ok(dq
        .eta
        .iter()
        .zip(&dq.theta)
        .enumerate()
        .map(|(k, (e, t))| (k + 1, (*t - *e).abs()))
        .fold((0, T::zero()), |a, b| if b.1 > a.1 { b } else { a }))
}

pub(crate) fn require_molding<T: Scalar>(design: &DesignData<T>) -> Result<()> {
    let (index, residual) = molding_residual(design)?;
    if residual > T::tol(ANGLE_TOL) {
        return Err(Error::NotMolding {
            index,
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(())
}

/// Discrete molding surface: `psi_i = (phi_{i-1} + phi_i) / 2`, so `C_i = 1` and
/// `sigma_ij = (sum g_a0 (-sin psi_a, cos psi_a) + F_j (cos phi_i, sin phi_i), z_j)`.
pub fn build_molding<T: Scalar>(design: &DesignData<T>) -> Result<THedron<T>> {
    require_molding(design)?;
    // Validates sign consistency and the polygon conditions.
    build_tnet(design)?;
    let dq = derive(design)?;
    let mut base = Vec2::zero();
    let mut rows = Vec::with_capacity(design.m() + 1);
    for i in 0..=design.m() {
        if i > 0 {
            base = base + Vec2::from_angle_perp(design.psi[i - 1]) * design.g0[i - 1];
        }
        let dir = Vec2::from_angle(design.phi_at(i));
        rows.push((base, dir));
    }
    let points = Grid::from_fn(design.m() + 1, design.n() + 1, |i, j| {
        let (base, dir) = rows[i];
        (base + dir * dq.cum_f[j]).lift(design.z[j])
    });
    THedron::new(points, ClassTag::Molding)
}

/// Axial T-hedron data: profile lines through a common axis at distance `f00` from `tau_00`.
///
/// The signed lengths `g_i0` are implied by the axis and are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct AxialDesign<T> {
    pub phi: Vec<T>,
    pub psi: Vec<T>,
    /// Signed distance from the axis to `tau_00` along `L_0`.
    pub f00: T,
    pub f0: Vec<T>,
    pub z: Vec<T>,
}

impl<T: Scalar> AxialDesign<T> {
    pub fn new(phi: Vec<T>, psi: Vec<T>, f00: T, f0: Vec<T>, z: Vec<T>) -> Result<Self> {
        let a = Self {
            phi,
            psi,
            f00,
            f0,
            z,
        };
        a.to_design()?;
        Ok(a)
    }

    pub fn m(&self) -> usize {
        self.phi.len()
    }

    pub fn n(&self) -> usize {
        self.f0.len()
    }

    /// Radii `f00 + F_j` of the extended cumulative sum.
    pub fn radii(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.n() + 1);
        out.push(self.f00);
        for f in &self.f0 {
            let last = *out.last().expect("non-empty");
            out.push(last + *f);
        }
        out
    }

    /// The same surface in normal form (translated so that `tau_00` is the origin), with
    /// `g_i0 = f00 C_{i-1} sin(eta_i + theta_i) / cos(theta_i)`.
    pub fn to_design(&self) -> Result<DesignData<T>> {
        if self.f00 == T::zero() || !self.f00.is_finite() {
            return Err(Error::AxisDegenerate);
        }
        let m = self.phi.len();
        // Any nonzero placeholder lets `derive` check the angles first.
        let probe = DesignData::new(
            self.phi.clone(),
            self.psi.clone(),
            self.f0.clone(),
            vec![T::one(); m],
            self.z.clone(),
        )?;
        let dq = derive(&probe)?;
        let mut g0 = Vec::with_capacity(m);
        for i in 1..=m {
            let (e, t) = (dq.eta[i - 1], dq.theta[i - 1]);
            let s = (e + t).sin();
            if s.abs() <= T::tol(ANGLE_TOL) {
                return Err(Error::ConsecutiveParallelPlanes { index: i });
            }
            g0.push(self.f00 * dq.cum_c[i - 1] * s / t.cos());
        }
        DesignData::new(
            self.phi.clone(),
            self.psi.clone(),
            self.f0.clone(),
            g0,
            self.z.clone(),
        )
    }

    /// Reads the axis off a design satisfying the axiality criterion.
    pub fn from_design(design: &DesignData<T>, tol: T) -> Result<Self> {
        let dq = derive(design)?;
        let (e, t) = (dq.eta[0], dq.theta[0]);
        let s = (e + t).sin();
        if s.abs() <= T::tol(ANGLE_TOL) {
            return Err(Error::ConsecutiveParallelPlanes { index: 1 });
        }
        let residual = axial_residual(design)?;
        if residual > tol {
            return Err(Error::NotATHedron {
                reason: format!("design is not axial (criterion residual {residual})"),
            });
        }
        Ok(Self {
            phi: design.phi.clone(),
            psi: design.psi.clone(),
            f00: design.g0[0] * t.cos() / s,
            f0: design.f0.clone(),
            z: design.z.clone(),
        })
    }
}

/// Ratios `g_i0 / g_10` required for the profile planes of a design to share a common line:
/// `sin(eta_i + theta_i) cos(theta_1) C_i / (sin(eta_1 + theta_1) cos(eta_i))`.
pub fn axial_ratios<T: Scalar>(design: &DesignData<T>) -> Result<Vec<T>> {
    let dq = derive(design)?;
    let s1 = (dq.eta[0] + dq.theta[0]).sin();
    if s1.abs() <= T::tol(ANGLE_TOL) {
        return Err(Error::ConsecutiveParallelPlanes { index: 1 });
    }
    Ok((1..=design.m())
        .map(|i| {
            let (e, t) = (dq.eta[i - 1], dq.theta[i - 1]);
            (e + t).sin() * dq.theta[0].cos() * dq.cum_c[i] / (s1 * e.cos())
        })
        .collect())
}

/// Largest relative violation of the axiality criterion.
pub fn axial_residual<T: Scalar>(design: &DesignData<T>) -> Result<T> {
    let ratios = axial_ratios(design)?;
    Ok(ratios
        .iter()
        .zip(&design.g0)
        .map(|(r, g)| (*g / design.g0[0] - *r).abs() / r.abs().max(T::one()))
        .fold(T::zero(), T::max))
}

/// `sigma_ij = (C_i F_j cos phi_i, C_i F_j sin phi_i, z_j)` with `F_j = f00 + f01 + ... + f0j`;
/// the axis is the z-axis.
pub fn build_axial<T: Scalar>(axial: &AxialDesign<T>) -> Result<THedron<T>> {
    let design = axial.to_design()?;
    let dq = derive(&design)?;
    let radii = axial.radii();
    let points = Grid::from_fn(axial.m() + 1, axial.n() + 1, |i, j| {
        (Vec2::from_angle(design.phi_at(i)) * (dq.cum_c[i] * radii[j])).lift(axial.z[j])
    });
    THedron::new(points, ClassTag::Axial)
}

/// A discrete surface of revolution about the z-axis.
#[derive(Debug, Clone, PartialEq)]
pub struct RevolutionData<T> {
    /// Radii `F_0..F_n` of the profile polygon in the plane `phi = 0`.
    pub radii: Vec<T>,
    /// Rotation angles `phi_1..phi_m` of the further profile planes.
    pub phi: Vec<T>,
    pub z: Vec<T>,
}

impl<T: Scalar> RevolutionData<T> {
    pub fn new(radii: Vec<T>, phi: Vec<T>, z: Vec<T>) -> Result<Self> {
        let r = Self { radii, phi, z };
        r.validate()?;
        Ok(r)
    }

    pub fn m(&self) -> usize {
        self.phi.len()
    }

    pub fn n(&self) -> usize {
        self.radii.len() - 1
    }

    fn validate(&self) -> Result<()> {
        if self.phi.is_empty() {
            return Err(Error::LengthMismatch {
                field: "phi",
                expected: 1,
                actual: 0,
            });
        }
        if self.radii.len() < 2 {
            return Err(Error::LengthMismatch {
                field: "radii",
                expected: 2,
                actual: self.radii.len(),
            });
        }
        if let Some(index) = self.radii.iter().position(|r| *r == T::zero()) {
            return Err(Error::ZeroRadius { index });
        }
        self.to_axial().map(|_| ())
    }

    /// The same surface as axial data with `psi_i = (phi_{i-1} + phi_i) / 2`.
    pub fn to_axial(&self) -> Result<AxialDesign<T>> {
        let half = T::of(0.5);
        let psi = (0..self.m())
            .map(|k| {
                let prev = if k == 0 { T::zero() } else { self.phi[k - 1] };
                (prev + self.phi[k]) * half
            })
            .collect();
        let f0 = self.radii.windows(2).map(|w| w[1] - w[0]).collect();
        AxialDesign::new(self.phi.clone(), psi, self.radii[0], f0, self.z.clone())
    }
}

/// `sigma_ij = (F_j cos phi_i, F_j sin phi_i, z_j)`.
pub fn build_revolution<T: Scalar>(data: &RevolutionData<T>) -> Result<THedron<T>> {
    data.validate()?;
    let points = Grid::from_fn(data.m() + 1, data.n() + 1, |i, j| {
        let phi = if i == 0 { T::zero() } else { data.phi[i - 1] };
        (Vec2::from_angle(phi) * data.radii[j]).lift(data.z[j])
    });
    THedron::new(points, ClassTag::Revolution)
}

/// Generator data of the Miura-ori with parallelogram sides `a`, `sqrt(b^2 + c^2)` and
/// fold height `d`, on an `m x n` grid of faces.
pub fn miura_data<T: Scalar>(
    a: T,
    b: T,
    c: T,
    d: T,
    m: usize,
    n: usize,
) -> Result<TranslationalData<T>> {
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        if !(v > T::zero() && v.is_finite()) {
            return Err(Error::NotATHedron {
                reason: format!("Miura length {name} must be positive, got {v}"),
            });
        }
    }
    if !(d >= T::zero() && d.is_finite()) {
        return Err(Error::NotATHedron {
            reason: format!("Miura height d must be nonnegative, got {d}"),
        });
    }
    if m == 0 || n == 0 {
        return Err(Error::NotATHedron {
            reason: "Miura grid needs at least one face".into(),
        });
    }
    let alt = |k: usize, v: T| if k % 2 == 1 { v } else { T::zero() };
    TranslationalData::new(
        (0..=m).map(|i| alt(i, c)).collect(),
        (0..=n).map(|j| T::of_usize(j) * a).collect(),
        (0..=m).map(|i| T::of_usize(i) * b).collect(),
        (0..=n).map(|j| alt(j, d)).collect(),
    )
}

/// Miura-ori: `x_0j = j a`, `y_i = i b`, `x_i0` alternating `0, c`, `z_j` alternating `0, d`.
///
/// `d = 0` gives the flat crease pattern.
pub fn build_miura<T: Scalar>(a: T, b: T, c: T, d: T, m: usize, n: usize) -> Result<THedron<T>> {
    let data = miura_data(a, b, c, d, m, n)?;
    THedron::new(data.evaluate(), ClassTag::Miura)
}

/// Classifies a T-hedron by its ground view.
///
/// Order of precedence: translational (all profile planes parallel), revolution
/// (axial and molding), axial, molding, general. `tol` bounds angles (radians) and the relative
/// axiality residual.
pub fn classify<T: Scalar>(surface: &THedron<T>, tol: T) -> Result<ClassTag> {
    let net = ground_view(surface)?;
    let angles = net.angles()?;
    if angles.phi.iter().all(|p| p.abs() <= tol) {
        return Ok(ClassTag::Translational);
    }
    let molding = angles
        .eta
        .iter()
        .zip(&angles.theta)
        .all(|(e, t)| (*t - *e).abs() <= tol);
    let z0 = surface.points()[(0, 0)].z;
    let z: Vec<T> = surface.heights().iter().map(|z| *z - z0).collect();
    let mut design = net.to_design(z)?;
    // Heights do not enter the criterion; avoid rejecting flat or stepped inputs here.
    design.z = (0..design.z.len()).map(T::of_usize).collect();
    let axial = match axial_residual(&design) {
        Ok(r) => r <= tol,
        Err(Error::ConsecutiveParallelPlanes { .. }) => false,
        Err(e) => return Err(e),
    };
    Ok(match (axial, molding) {
        (true, true) => ClassTag::Revolution,
        (true, false) => ClassTag::Axial,
        (false, true) => ClassTag::Molding,
        (false, false) => ClassTag::General,
    })
}
