//! Verification oracles that know nothing about how a surface was built: planarity, face
//! congruence, dihedral angles and whole-surface rigid alignment.

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::geom::{Grid, Vec3};
use crate::mesh::THedron;
use crate::scalar::Scalar;

/// Distance of one vertex of a quad from the plane through the other three.
///
/// The reference triple is the one spanning the largest triangle, so a face that degenerates
/// towards a segment stays well conditioned. A fully degenerate quad has deviation 0.
pub fn face_deviation<T: Scalar>(q: &[Vec3<T>; 4]) -> T {
    let mut best: Option<(T, usize)> = None;
    for skip in 0..4 {
        let tri: Vec<_> = (0..4).filter(|&k| k != skip).map(|k| q[k]).collect();
        let area = (tri[1] - tri[0]).cross(tri[2] - tri[0]).norm();
        if best.is_none_or(|(a, _)| area > a) {
            best = Some((area, skip));
        }
    }
    let (area, skip) = best.expect("four triples");
    if area == T::zero() {
        return T::zero();
    }
    let tri: Vec<_> = (0..4).filter(|&k| k != skip).map(|k| q[k]).collect();
    let normal = (tri[1] - tri[0]).cross(tri[2] - tri[0]).normalized();
    normal.dot(q[skip] - tri[0]).abs()
}

/// Largest face deviation from planarity relative to the bounding-box diagonal.
pub fn planarity<T: Scalar>(surface: &THedron<T>) -> T {
    let scale = surface.scale();
    let mut worst = T::zero();
    for i in 1..=surface.m() {
        for j in 1..=surface.n() {
            worst = worst.max(face_deviation(&surface.face(i, j)));
        }
    }
    worst / scale
}

/// Face-by-face comparison of edge and diagonal lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryReport<T> {
    /// Largest relative change of an edge length.
    pub max_edge_residual: T,
    /// Largest relative change of a diagonal length.
    pub max_diagonal_residual: T,
    /// Face `(i, j)` with the largest residual.
    pub worst_face: (usize, usize),
    pub tolerance: T,
    pub pass: bool,
}

impl<T: Scalar> IsometryReport<T> {
    pub fn max_residual(&self) -> T {
        self.max_edge_residual.max(self.max_diagonal_residual)
    }
}

/// Edge lengths (in cyclic order) and both diagonals of a quad.
fn face_lengths<T: Scalar>(q: &[Vec3<T>; 4]) -> [T; 6] {
    [
        (q[1] - q[0]).norm(),
        (q[2] - q[1]).norm(),
        (q[3] - q[2]).norm(),
        (q[0] - q[3]).norm(),
        (q[2] - q[0]).norm(),
        (q[3] - q[1]).norm(),
    ]
}

/// Compares the six lengths of every corresponding face pair, relative to the lengths in `a`.
pub fn check_isometric<T: Scalar>(
    a: &THedron<T>,
    b: &THedron<T>,
    tol: T,
) -> Result<IsometryReport<T>> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: b.shape(),
        });
    }
    let floor = a.scale() * T::epsilon();
    let mut edge = T::zero();
    let mut diag = T::zero();
    let mut worst = (1, 1);
    let mut worst_value = T::neg_infinity();
    for i in 1..=a.m() {
        for j in 1..=a.n() {
            let la = face_lengths(&a.face(i, j));
            let lb = face_lengths(&b.face(i, j));
            let mut face_worst = T::zero();
            for k in 0..6 {
                let r = (lb[k] - la[k]).abs() / la[k].max(floor);
                if k < 4 {
                    edge = edge.max(r);
                } else {
                    diag = diag.max(r);
                }
                face_worst = face_worst.max(r);
            }
            if face_worst > worst_value {
                worst_value = face_worst;
                worst = (i, j);
            }
        }
    }
    Ok(IsometryReport {
        max_edge_residual: edge,
        max_diagonal_residual: diag,
        worst_face: worst,
        tolerance: tol,
        pass: edge <= tol && diag <= tol,
    })
}

/// Unsigned dihedral angles at the interior edges of a quad-surface.
///
/// A flat configuration has angle `pi` everywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct DihedralAngles<T> {
    /// Angle between faces `(i, j)` and `(i + 1, j)`, at index `(i - 1, j - 1)`;
    /// shape `(m - 1) x n`.
    pub across_profile_lines: Grid<T>,
    /// Angle between faces `(i, j)` and `(i, j + 1)`, at index `(i - 1, j - 1)`;
    /// shape `m x (n - 1)`.
    pub across_trajectory_lines: Grid<T>,
}

impl<T: Scalar> DihedralAngles<T> {
    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.across_profile_lines
            .iter()
            .chain(self.across_trajectory_lines.iter())
    }

    pub fn is_empty(&self) -> bool {
        self.iter().next().is_none()
    }

    /// Largest absolute difference to another set of angles of the same surface shape.
    pub fn max_difference(&self, other: &Self) -> T {
        self.iter()
            .zip(other.iter())
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max)
    }
}

/// Unit normal of a face from the cross product of its diagonals.
fn face_normal<T: Scalar>(s: &THedron<T>, i: usize, j: usize) -> Result<Vec3<T>> {
    let q = s.face(i, j);
    let n = (q[2] - q[0]).cross(q[3] - q[1]);
    let len = n.norm();
    if len <= s.scale() * s.scale() * T::epsilon() {
        return Err(Error::DegenerateFace { i, j });
    }
    Ok(n * (T::one() / len))
}

pub fn dihedral_angles<T: Scalar>(surface: &THedron<T>) -> Result<DihedralAngles<T>> {
    let (m, n) = (surface.m(), surface.n());
    let normals = {
        let mut data = Vec::with_capacity(m * n);
        for i in 1..=m {
            for j in 1..=n {
                data.push(face_normal(surface, i, j)?);
            }
        }
        Grid::from_vec(m, n, data).expect("m x n normals")
    };
    let angle = |a: Vec3<T>, b: Vec3<T>| T::PI() - crate::scalar::clamp_unit(a.dot(b)).acos();
    let across_profile_lines = Grid::from_fn(m.saturating_sub(1), n, |i, j| {
        angle(normals[(i, j)], normals[(i + 1, j)])
    });
    let across_trajectory_lines = Grid::from_fn(m, n.saturating_sub(1), |i, j| {
        angle(normals[(i, j)], normals[(i, j + 1)])
    });
    Ok(DihedralAngles {
        across_profile_lines,
        across_trajectory_lines,
    })
}

/// Outcome of a least-squares rigid alignment of two vertex grids.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Congruence<T> {
    /// Largest vertex distance after alignment, relative to the bounding-box diagonal of `a`.
    pub max_deviation: T,
    /// The best alignment needs a reflection.
    pub reflected: bool,
    pub congruent: bool,
}

/// Aligns `b` onto `a` with the orthogonal polar factor of the cross-covariance matrix.
///
/// Reflections are admitted when `allow_reflection` is set; the result says whether one was
/// used.
pub fn check_congruent<T: Scalar>(
    a: &THedron<T>,
    b: &THedron<T>,
    tol: T,
    allow_reflection: bool,
) -> Result<Congruence<T>> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: b.shape(),
        });
    }
    let pa: Vec<Vector3<f64>> = a.points().iter().map(to_na).collect();
    let pb: Vec<Vector3<f64>> = b.points().iter().map(to_na).collect();
    let count = pa.len() as f64;
    let ca = pa.iter().sum::<Vector3<f64>>() / count;
    let cb = pb.iter().sum::<Vector3<f64>>() / count;
    let mut h = Matrix3::<f64>::zeros();
    for (x, y) in pa.iter().zip(&pb) {
        h += (y - cb) * (x - ca).transpose();
    }
    let svd = h.svd(true, true);
    let (u, v_t) = (svd.u.expect("u"), svd.v_t.expect("v_t"));
    // Rotation taking centred b onto centred a: R = V U^T.
    let polar = v_t.transpose() * u.transpose();
    let proper = if polar.determinant() < 0.0 {
        let mut flip = Matrix3::identity();
        flip[(2, 2)] = -1.0;
        v_t.transpose() * flip * u.transpose()
    } else {
        polar
    };
    let deviation = |r: &Matrix3<f64>| {
        pa.iter()
            .zip(&pb)
            .map(|(x, y)| ((r * (y - cb)) - (x - ca)).norm())
            .fold(0.0, f64::max)
    };
    let mut best = (deviation(&proper), false);
    if allow_reflection && polar.determinant() < 0.0 {
        let d = deviation(&polar);
        if d < best.0 {
            best = (d, true);
        }
    }
    let scale = a.scale().to_f64_lossy();
    let max_deviation = T::of(best.0 / scale);
    Ok(Congruence {
        max_deviation,
        reflected: best.1,
        congruent: max_deviation <= tol,
    })
}

fn to_na<T: Scalar>(p: &Vec3<T>) -> Vector3<f64> {
    Vector3::new(p.x.to_f64_lossy(), p.y.to_f64_lossy(), p.z.to_f64_lossy())
}
