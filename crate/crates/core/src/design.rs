//! Discrete design data, the quantities derived from it, and T-nets (ground views).
//!
//! A design is stored in normal form: the first profile line `L_0` is the x-axis with its
//! orientation, `tau_00` is the origin and `z_0 = 0`. Profile line `L_i` has direction angle
//! `phi_i` (with `phi_0 = 0`), the base normal `M_i` of the `i`-th profile strip has direction
//! angle `psi_i`.

use crate::error::{AngleKind, Error, Result};
use crate::geom::{planar_spread, Grid, Vec2};
use crate::mesh::THedron;
use crate::scalar::Scalar;

/// Angle tolerance (radians) for line membership and parallelism.
pub const ANGLE_TOL: f64 = 1e-10;
/// Relative tolerance (to the bounding-box diagonal) for point/line incidences.
pub const LENGTH_TOL: f64 = 1e-10;
/// A polygon whose perpendicular spread over its diameter is at most this is collinear.
pub const COLLINEAR_TOL: f64 = 1e-10;

/// Generating data of a T-hedron in normal form.
///
/// `m = phi.len()` profile strips, `n = f0.len()` trajectory strips.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignData<T> {
    /// Directions of the profile lines `L_1..L_m` relative to `L_0`.
    pub phi: Vec<T>,
    /// Directions of the base normals `M_1..M_m` relative to `L_0`.
    pub psi: Vec<T>,
    /// Signed lengths `f_01..f_0n` along `L_0`.
    pub f0: Vec<T>,
    /// Signed lengths `g_10..g_m0` along the rotated normals `JM_i`.
    pub g0: Vec<T>,
    /// Heights `z_0..z_n` of the trajectory planes.
    pub z: Vec<T>,
}

impl<T: Scalar> DesignData<T> {
    /// Checks array shapes only; call [`derive`] for the geometric invariants.
    pub fn new(phi: Vec<T>, psi: Vec<T>, f0: Vec<T>, g0: Vec<T>, z: Vec<T>) -> Result<Self> {
        let d = Self {
            phi,
            psi,
            f0,
            g0,
            z,
        };
        d.check_shapes()?;
        Ok(d)
    }

    pub fn m(&self) -> usize {
        self.phi.len()
    }

    pub fn n(&self) -> usize {
        self.f0.len()
    }

    /// `phi_i` with the convention `phi_0 = 0`.
    pub fn phi_at(&self, i: usize) -> T {
        if i == 0 {
            T::zero()
        } else {
            self.phi[i - 1]
        }
    }

    pub fn derive(&self) -> Result<DerivedQuantities<T>> {
        derive(self)
    }

    fn check_shapes(&self) -> Result<()> {
        let m = self.phi.len();
        let n = self.f0.len();
        if m == 0 {
            return Err(Error::LengthMismatch {
                field: "phi",
                expected: 1,
                actual: 0,
            });
        }
        if n == 0 {
            return Err(Error::LengthMismatch {
                field: "f0",
                expected: 1,
                actual: 0,
            });
        }
        for (field, len, expected) in [
            ("psi", self.psi.len(), m),
            ("g0", self.g0.len(), m),
            ("z", self.z.len(), n + 1),
        ] {
            if len != expected {
                return Err(Error::LengthMismatch {
                    field,
                    expected,
                    actual: len,
                });
            }
        }
        for (field, values) in [
            ("phi", &self.phi),
            ("psi", &self.psi),
            ("f0", &self.f0),
            ("g0", &self.g0),
            ("z", &self.z),
        ] {
            if let Some(index) = values.iter().position(|v| !v.is_finite()) {
                return Err(Error::NotFinite { field, index });
            }
        }
        Ok(())
    }
}

/// Angles and cumulative quantities computed from a design.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedQuantities<T> {
    /// `eta_i = psi_i - phi_{i-1}`, `i = 1..m` (stored at `i - 1`).
    pub eta: Vec<T>,
    /// `theta_i = phi_i - psi_i`.
    pub theta: Vec<T>,
    /// `c_i = cos(eta_i) / cos(theta_i)`.
    pub c: Vec<T>,
    /// `C_0 = 1, C_i = c_1 ... c_i`; length `m + 1`.
    pub cum_c: Vec<T>,
    /// `F_0 = 0, F_j = f_01 + ... + f_0j`; length `n + 1`.
    pub cum_f: Vec<T>,
}

impl<T: Scalar> DerivedQuantities<T> {
    /// Increments `Delta_j F = f_0j`, `j = 1..n` (stored at `j - 1`).
    pub fn delta_f(&self) -> Vec<T> {
        self.cum_f.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// Validates the angle, length and height conditions and computes `eta, theta, c, C, F`.
pub fn derive<T: Scalar>(design: &DesignData<T>) -> Result<DerivedQuantities<T>> {
    design.check_shapes()?;
    let half_pi = T::FRAC_PI_2();
    let m = design.m();
    let mut eta = Vec::with_capacity(m);
    let mut theta = Vec::with_capacity(m);
    for i in 1..=m {
        let e = design.psi[i - 1] - design.phi_at(i - 1);
        let t = design.phi[i - 1] - design.psi[i - 1];
        for (value, angle) in [(e, AngleKind::Eta), (t, AngleKind::Theta)] {
            if value.abs() >= half_pi || value.cos() <= T::zero() {
                return Err(Error::AngleOutOfRange {
                    index: i,
                    angle,
                    value: value.to_f64_lossy(),
                });
            }
        }
        eta.push(e);
        theta.push(t);
    }
    if let Some(k) = design.g0.iter().position(|g| *g == T::zero()) {
        return Err(Error::ZeroLength { index: k + 1 });
    }
    if design.z[0] != T::zero() {
        return Err(Error::BaseHeight {
            value: design.z[0].to_f64_lossy(),
        });
    }
    if let Some(j) = (1..design.z.len()).find(|&j| design.z[j] == design.z[j - 1]) {
        return Err(Error::DegenerateHeights { index: j });
    }

    let c: Vec<T> = eta
        .iter()
        .zip(&theta)
        .map(|(e, t)| e.cos() / t.cos())
        .collect();
    let mut cum_c = Vec::with_capacity(m + 1);
    cum_c.push(T::one());
    for ci in &c {
        let last = *cum_c.last().expect("non-empty");
        cum_c.push(last * *ci);
    }
    let mut cum_f = Vec::with_capacity(design.n() + 1);
    cum_f.push(T::zero());
    for f in &design.f0 {
        let last = *cum_f.last().expect("non-empty");
        cum_f.push(last + *f);
    }
    Ok(DerivedQuantities {
        eta,
        theta,
        c,
        cum_c,
        cum_f,
    })
}

/// An oriented line in the ground plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line2<T> {
    pub point: Vec2<T>,
    /// Unit direction.
    pub dir: Vec2<T>,
}

impl<T: Scalar> Line2<T> {
    pub fn distance(&self, p: Vec2<T>) -> T {
        self.dir.cross(p - self.point).abs()
    }

    /// Signed coordinate of the projection of `p` along the line.
    pub fn coordinate(&self, p: Vec2<T>) -> T {
        self.dir.dot(p - self.point)
    }
}

/// Planar T-net: the ground view of a T-hedron together with its oriented profile lines.
#[derive(Debug, Clone, PartialEq)]
pub struct TNet<T> {
    points: Grid<Vec2<T>>,
    lines: Vec<Line2<T>>,
}

/// Signed edge lengths of a T-net.
///
/// `f[(i, j)]` is the signed length of `tau_{i,j-1} -> tau_{ij}` along `L_i` (`f[(i, 0)] = 0`),
/// `g[(i, j)]` the signed length of `tau_{i-1,j} -> tau_{ij}` along `JM_i` (`g[(0, j)] = 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct SignedLengths<T> {
    pub f: Grid<T>,
    pub g: Grid<T>,
}

/// Angles of a T-net recovered from its geometry, relative to `L_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct NetAngles<T> {
    pub eta: Vec<T>,
    pub theta: Vec<T>,
    pub phi: Vec<T>,
    pub psi: Vec<T>,
}

impl<T: Scalar> TNet<T> {
    /// Assembles a net from points and explicitly oriented lines. Invariants are not checked.
    pub fn from_parts(points: Grid<Vec2<T>>, lines: Vec<Line2<T>>) -> Result<Self> {
        if lines.len() != points.rows() {
            return Err(Error::LengthMismatch {
                field: "lines",
                expected: points.rows(),
                actual: lines.len(),
            });
        }
        Ok(Self { points, lines })
    }

    /// Infers the oriented profile lines of a grid of ground points.
    ///
    /// `L_0` takes the orientation of the x-axis when it is parallel to it (the normal form),
    /// otherwise the orientation of its first nonzero edge. Every further line is oriented so
    /// that the legs of all trapezoids point the same way.
    pub fn from_points(points: Grid<Vec2<T>>) -> Result<Self> {
        let angle_tol = T::tol(ANGLE_TOL);
        let mut lines: Vec<Line2<T>> = Vec::with_capacity(points.rows());
        for i in 0..points.rows() {
            let row = points.row(i);
            let p0 = row[0];
            let far = row
                .iter()
                .copied()
                .max_by(|a, b| {
                    (*a - p0)
                        .norm()
                        .partial_cmp(&(*b - p0).norm())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap_or(p0);
            let span = (far - p0).norm();
            if span == T::zero() {
                return Err(Error::NotATHedron {
                    reason: format!("profile row {i} collapses to a point"),
                });
            }
            let mut dir = (far - p0) * (T::one() / span);
            // Longest leg of the row, used to fix orientations.
            let leg = |r: &[Vec2<T>], j: usize| r[j] - r[j - 1];
            if i == 0 {
                if dir.y.abs() <= angle_tol {
                    dir = Vec2::new(dir.x.signum(), T::zero());
                } else if let Some(j) = (1..row.len()).find(|&j| leg(row, j).norm() > T::zero()) {
                    if leg(row, j).dot(dir) < T::zero() {
                        dir = -dir;
                    }
                }
            } else {
                let prev = points.row(i - 1);
                let prev_dir = lines[i - 1].dir;
                let j = (1..row.len())
                    .max_by(|&a, &b| {
                        leg(row, a)
                            .norm()
                            .partial_cmp(&leg(row, b).norm())
                            .unwrap_or(std::cmp::Ordering::Equal)
                    })
                    .expect("at least one column edge");
                let here = leg(row, j).dot(dir);
                let there = leg(prev, j).dot(prev_dir);
                if here * there < T::zero() {
                    dir = -dir;
                }
            }
            lines.push(Line2 { point: p0, dir });
        }
        Ok(Self { points, lines })
    }

    pub fn points(&self) -> &Grid<Vec2<T>> {
        &self.points
    }

    pub fn lines(&self) -> &[Line2<T>] {
        &self.lines
    }

    pub fn m(&self) -> usize {
        self.points.rows() - 1
    }

    pub fn n(&self) -> usize {
        self.points.cols() - 1
    }

    /// Diameter-like length scale used for relative tolerances.
    pub fn scale(&self) -> T {
        let pts: Vec<_> = self.points.iter().map(|p| p.lift(T::zero())).collect();
        crate::geom::bbox_diagonal(&pts).max(T::min_positive_value())
    }

    /// Unit base normals `M_1..M_m` (stored at `i - 1`), oriented at an acute angle to `L_{i-1}`.
    pub fn base_normals(&self) -> Result<Vec<Vec2<T>>> {
        let mut normals = Vec::with_capacity(self.m());
        for i in 1..=self.m() {
            let j = (0..=self.n())
                .max_by(|&a, &b| {
                    self.base(i, a)
                        .norm()
                        .partial_cmp(&self.base(i, b).norm())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .expect("non-empty row");
            let b = self.base(i, j);
            if b.norm() == T::zero() {
                return Err(Error::NotATHedron {
                    reason: format!("profile strip {i} has no trajectory edge of positive length"),
                });
            }
            let b = b.normalized();
            let mut normal = Vec2::new(b.y, -b.x);
            if normal.dot(self.lines[i - 1].dir) < T::zero() {
                normal = -normal;
            }
            normals.push(normal);
        }
        Ok(normals)
    }

    /// Trajectory edge `tau_{i-1,j} -> tau_{ij}`.
    fn base(&self, i: usize, j: usize) -> Vec2<T> {
        self.points[(i, j)] - self.points[(i - 1, j)]
    }

    /// Signed angles of the net. Fails when an angle leaves `(-pi/2, pi/2)`.
    pub fn angles(&self) -> Result<NetAngles<T>> {
        let normals = self.base_normals()?;
        let mut eta = Vec::new();
        let mut theta = Vec::new();
        let mut phi = Vec::new();
        let mut psi = Vec::new();
        let mut phi_prev = T::zero();
        for i in 1..=self.m() {
            let e = self.lines[i - 1].dir.signed_angle_to(normals[i - 1]);
            let t = normals[i - 1].signed_angle_to(self.lines[i].dir);
            for (value, angle) in [(e, AngleKind::Eta), (t, AngleKind::Theta)] {
                if value.abs() >= T::FRAC_PI_2() {
                    return Err(Error::AngleOutOfRange {
                        index: i,
                        angle,
                        value: value.to_f64_lossy(),
                    });
                }
            }
            psi.push(phi_prev + e);
            phi_prev = phi_prev + e + t;
            phi.push(phi_prev);
            eta.push(e);
            theta.push(t);
        }
        Ok(NetAngles {
            eta,
            theta,
            phi,
            psi,
        })
    }

    /// Checks the T-net conditions: incidence with the profile lines, trapezoidal quads,
    /// distinct consecutive lines and sign-consistent `g` along every profile strip.
    pub fn validate(&self) -> Result<()> {
        let lengths = recover_signed_lengths(self)?;
        let angle_tol = T::tol(ANGLE_TOL);
        let length_tol = T::tol(LENGTH_TOL) * self.scale();
        let normals = self.base_normals()?;
        for i in 1..=self.m() {
            let (a, b) = (self.lines[i - 1], self.lines[i]);
            if a.dir.cross(b.dir).abs() <= angle_tol && a.distance(b.point) <= length_tol {
                return Err(Error::CoincidentLines { index: i });
            }
            let jm = normals[i - 1].perp();
            for j in 0..=self.n() {
                let base = self.base(i, j);
                if base.norm() > length_tol {
                    let ang = jm.cross(base.normalized()).abs().asin();
                    if ang > angle_tol {
                        return Err(Error::NotTrapezoid {
                            i,
                            j,
                            angle: ang.to_f64_lossy(),
                        });
                    }
                }
            }
        }
        check_sign_consistency(&lengths.g, length_tol)
    }

    /// Recovers the design data of this net (in the frame of `L_0`) given the heights.
    pub fn to_design(&self, z: Vec<T>) -> Result<DesignData<T>> {
        let angles = self.angles()?;
        let lengths = recover_signed_lengths(self)?;
        let f0 = (1..=self.n()).map(|j| lengths.f[(0, j)]).collect();
        let g0 = (1..=self.m()).map(|i| lengths.g[(i, 0)]).collect();
        DesignData::new(angles.phi, angles.psi, f0, g0, z)
    }
}

pub(crate) fn check_sign_consistency<T: Scalar>(g: &Grid<T>, floor: T) -> Result<()> {
    for i in 1..g.rows() {
        let reference = g[(i, 0)];
        for j in 0..g.cols() {
            let v = g[(i, j)];
            if v.abs() <= floor || v * reference <= T::zero() {
                return Err(Error::SignConsistency {
                    strip: i,
                    column: j,
                });
            }
        }
    }
    Ok(())
}

/// Ground view of a design: `tau_ij = sum g_a0 (-sin psi_a, cos psi_a) + C_i F_j (cos phi_i, sin phi_i)`.
pub fn build_tnet<T: Scalar>(design: &DesignData<T>) -> Result<TNet<T>> {
    let dq = derive(design)?;
    let net = tnet_from_derived(design, &dq);
    let lengths = recover_signed_lengths(&net)?;
    check_sign_consistency(&lengths.g, T::tol(LENGTH_TOL) * net.scale())?;
    check_polygons(&net, &dq.cum_f, &design.z)?;
    Ok(net)
}

/// Evaluates the closed-form net without validation.
pub(crate) fn tnet_from_derived<T: Scalar>(
    design: &DesignData<T>,
    dq: &DerivedQuantities<T>,
) -> TNet<T> {
    let m = design.m();
    let mut base = Vec::with_capacity(m + 1);
    base.push(Vec2::zero());
    for i in 1..=m {
        let prev = base[i - 1];
        base.push(prev + Vec2::from_angle_perp(design.psi[i - 1]) * design.g0[i - 1]);
    }
    let points = Grid::from_fn(m + 1, design.n() + 1, |i, j| {
        base[i] + Vec2::from_angle(design.phi_at(i)) * (dq.cum_c[i] * dq.cum_f[j])
    });
    let lines = (0..=m)
        .map(|i| Line2 {
            point: base[i],
            dir: Vec2::from_angle(design.phi_at(i)),
        })
        .collect();
    TNet { points, lines }
}

/// Collinearity checks for the profile polygon `(F_j, z_j)` and the trajectory polygon
/// `tau_{i0}`. Polygons with two vertices are exempt.
fn check_polygons<T: Scalar>(net: &TNet<T>, cum_f: &[T], z: &[T]) -> Result<()> {
    let tol = T::tol(COLLINEAR_TOL);
    if cum_f.len() > 2 {
        let profile: Vec<_> = cum_f
            .iter()
            .zip(z)
            .map(|(f, z)| Vec2::new(*f, *z))
            .collect();
        if planar_spread(&profile) <= tol {
            return Err(Error::CollinearPolygon { which: "profile" });
        }
    }
    if net.m() >= 2 {
        let trajectory: Vec<_> = (0..=net.m()).map(|i| net.points[(i, 0)]).collect();
        if planar_spread(&trajectory) <= tol {
            return Err(Error::CollinearPolygon {
                which: "trajectory",
            });
        }
    }
    Ok(())
}

/// Signed lengths `f_ij`, `g_ij` of every net edge.
pub fn recover_signed_lengths<T: Scalar>(net: &TNet<T>) -> Result<SignedLengths<T>> {
    let tol = T::tol(LENGTH_TOL) * net.scale();
    for i in 0..=net.m() {
        for j in 0..=net.n() {
            let d = net.lines[i].distance(net.points[(i, j)]);
            if d > tol {
                return Err(Error::OffLine {
                    i,
                    j,
                    deviation: d.to_f64_lossy(),
                });
            }
        }
    }
    let normals = net.base_normals()?;
    let (rows, cols) = (net.points.rows(), net.points.cols());
    let f = Grid::from_fn(rows, cols, |i, j| {
        if j == 0 {
            T::zero()
        } else {
            net.lines[i]
                .dir
                .dot(net.points[(i, j)] - net.points[(i, j - 1)])
        }
    });
    let g = Grid::from_fn(rows, cols, |i, j| {
        if i == 0 {
            T::zero()
        } else {
            normals[i - 1].perp().dot(net.base(i, j))
        }
    });
    Ok(SignedLengths { f, g })
}

/// Orthogonal projection of a T-hedron to its base trajectory plane.
pub fn ground_view<T: Scalar>(surface: &THedron<T>) -> Result<TNet<T>> {
    surface.check_horizontal_rows()?;
    TNet::from_points(surface.points().map(|p| p.xy()))
}
