//! The T-hedron vertex grid and its class tags.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geom::{bbox_diagonal, planar_spread, Grid, Vec3};
use crate::metrology::face_deviation;
use crate::scalar::Scalar;

/// Faces may deviate from planarity by this much relative to the bounding-box diagonal.
pub const PLANARITY_TOL: f64 = 1e-9;

/// Which constructor (or classifier) produced a surface. Advisory only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassTag {
    General,
    Translational,
    Molding,
    Axial,
    Revolution,
    Miura,
}

impl ClassTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassTag::General => "general",
            ClassTag::Translational => "translational",
            ClassTag::Molding => "molding",
            ClassTag::Axial => "axial",
            ClassTag::Revolution => "revolution",
            ClassTag::Miura => "miura",
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "general" => ClassTag::General,
            "translational" => ClassTag::Translational,
            "molding" => ClassTag::Molding,
            "axial" => ClassTag::Axial,
            "revolution" => ClassTag::Revolution,
            "miura" => ClassTag::Miura,
            other => {
                return Err(Error::NotATHedron {
                    reason: format!("unknown class `{other}`"),
                })
            }
        })
    }
}

/// A quad-surface with horizontal trajectory polygons (rows `j = const`) and vertical profile
/// polygons (rows `i = const`), stored as an `(m+1) x (n+1)` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct THedron<T> {
    points: Grid<Vec3<T>>,
    class_tag: ClassTag,
}

impl<T: Scalar> THedron<T> {
    /// Wraps a vertex grid after checking face planarity, horizontal trajectory rows and
    /// vertical profile planes.
    pub fn new(points: Grid<Vec3<T>>, class_tag: ClassTag) -> Result<Self> {
        let s = Self::from_grid_unchecked(points, class_tag)?;
        s.check_horizontal_rows()?;
        let scale = s.scale();
        let tol = T::tol(PLANARITY_TOL) * scale;
        for i in 1..s.points.rows() {
            for j in 1..s.points.cols() {
                if face_deviation(&s.face(i, j)) > tol {
                    return Err(Error::NotATHedron {
                        reason: format!("face ({i}, {j}) is not planar"),
                    });
                }
            }
        }
        for i in 0..s.points.rows() {
            let ground: Vec<_> = s.points.row(i).iter().map(|p| p.xy()).collect();
            let diameter = ground
                .iter()
                .map(|p| (*p - ground[0]).norm())
                .fold(T::zero(), T::max);
            if planar_spread(&ground) * diameter > tol {
                return Err(Error::NotATHedron {
                    reason: format!("profile polygon {i} does not lie in a vertical plane"),
                });
            }
        }
        Ok(s)
    }

    /// Wraps a vertex grid checking only its shape and finiteness.
    ///
    /// Useful for rigidly moved copies, which are no longer in normal position.
    pub fn from_grid_unchecked(points: Grid<Vec3<T>>, class_tag: ClassTag) -> Result<Self> {
        if points.rows() < 2 || points.cols() < 2 {
            return Err(Error::NotATHedron {
                reason: format!(
                    "grid must be at least 2 x 2, got {} x {}",
                    points.rows(),
                    points.cols()
                ),
            });
        }
        if let Some(k) = points
            .iter()
            .position(|p| !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()))
        {
            return Err(Error::NotFinite {
                field: "points",
                index: k,
            });
        }
        Ok(Self { points, class_tag })
    }

    pub fn points(&self) -> &Grid<Vec3<T>> {
        &self.points
    }

    pub fn into_points(self) -> Grid<Vec3<T>> {
        self.points
    }

    pub fn class_tag(&self) -> ClassTag {
        self.class_tag
    }

    pub fn with_tag(mut self, tag: ClassTag) -> Self {
        self.class_tag = tag;
        self
    }

    /// Number of profile strips.
    pub fn m(&self) -> usize {
        self.points.rows() - 1
    }

    /// Number of trajectory strips.
    pub fn n(&self) -> usize {
        self.points.cols() - 1
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.points.rows(), self.points.cols())
    }

    pub fn bbox_diagonal(&self) -> T {
        bbox_diagonal(self.points.as_slice())
    }

    /// Bounding-box diagonal, never zero.
    pub(crate) fn scale(&self) -> T {
        self.bbox_diagonal().max(T::min_positive_value())
    }

    /// Face `(i, j)`, `1 <= i <= m`, `1 <= j <= n`, as
    /// `[s_{i-1,j-1}, s_{i-1,j}, s_{ij}, s_{i,j-1}]`.
    pub fn face(&self, i: usize, j: usize) -> [Vec3<T>; 4] {
        let p = &self.points;
        [p[(i - 1, j - 1)], p[(i - 1, j)], p[(i, j)], p[(i, j - 1)]]
    }

    /// Heights of the trajectory rows, read off the first profile polygon.
    pub fn heights(&self) -> Vec<T> {
        self.points.row(0).iter().map(|p| p.z).collect()
    }

    /// Fails unless every row `j = const` has constant height.
    pub fn check_horizontal_rows(&self) -> Result<()> {
        let tol = T::tol(PLANARITY_TOL) * self.scale();
        for j in 0..self.points.cols() {
            let (mut lo, mut hi) = (T::infinity(), T::neg_infinity());
            for i in 0..self.points.rows() {
                let z = self.points[(i, j)].z;
                lo = lo.min(z);
                hi = hi.max(z);
            }
            if hi - lo > tol {
                return Err(Error::NonHorizontalRows {
                    column: j,
                    spread: (hi - lo).to_f64_lossy(),
                });
            }
        }
        Ok(())
    }

    /// Applies `f` to every vertex. The result is not re-validated.
    pub fn map_points(&self, f: impl FnMut(&Vec3<T>) -> Vec3<T>) -> Self {
        Self {
            points: self.points.map(f),
            class_tag: self.class_tag,
        }
    }

    /// Largest vertex distance to `other`, assuming equal shapes.
    pub fn max_deviation(&self, other: &Self) -> Result<T> {
        if !self.points.same_shape(&other.points) {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(self
            .points
            .iter()
            .zip(other.points.iter())
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max))
    }
}
