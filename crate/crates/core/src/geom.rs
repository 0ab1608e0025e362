//! Small fixed-size vectors and the rectangular vertex grid.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Vec2<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// Unit vector at angle `a` from the x-axis.
    pub fn from_angle(a: T) -> Self {
        Self::new(a.cos(), a.sin())
    }

    /// Unit vector `(-sin a, cos a)`: the direction at angle `a` rotated by a quarter turn.
    pub fn from_angle_perp(a: T) -> Self {
        Self::new(-a.sin(), a.cos())
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn normalized(self) -> Self {
        self * (T::one() / self.norm())
    }

    /// Rotation by a quarter turn counterclockwise.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn angle(self) -> T {
        self.y.atan2(self.x)
    }

    /// Signed angle from `self` to `o` in `(-pi, pi]`.
    pub fn signed_angle_to(self, o: Self) -> T {
        self.cross(o).atan2(self.dot(o))
    }

    pub fn lift(self, z: T) -> Vec3<T> {
        Vec3::new(self.x, self.y, z)
    }
}

impl<T: Scalar> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> T {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Self {
        self * (T::one() / self.norm())
    }

    pub fn xy(self) -> Vec2<T> {
        Vec2::new(self.x, self.y)
    }

    pub fn max_abs(self) -> T {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    /// Angle between the lines spanned by `self` and `o`, in `[0, pi/2]`.
    ///
    /// A zero vector is parallel to everything.
    pub fn line_angle(self, o: Self) -> T {
        self.cross(o).norm().atan2(self.dot(o).abs())
    }
}

macro_rules! vec_ops {
    ($v:ident, $($f:ident),+) => {
        impl<T: Scalar> Add for $v<T> {
            type Output = Self;
            fn add(self, o: Self) -> Self { $v { $($f: self.$f + o.$f),+ } }
        }
        impl<T: Scalar> Sub for $v<T> {
            type Output = Self;
            fn sub(self, o: Self) -> Self { $v { $($f: self.$f - o.$f),+ } }
        }
        impl<T: Scalar> Mul<T> for $v<T> {
            type Output = Self;
            fn mul(self, k: T) -> Self { $v { $($f: self.$f * k),+ } }
        }
        impl<T: Scalar> Neg for $v<T> {
            type Output = Self;
            fn neg(self) -> Self { $v { $($f: -self.$f),+ } }
        }
    };
}

vec_ops!(Vec2, x, y);
vec_ops!(Vec3, x, y, z);

/// An `(m+1) x (n+1)` array indexed by `(i, j)`, stored row-major with `i` outer.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid<P> {
    rows: usize,
    cols: usize,
    data: Vec<P>,
}

impl<P: Clone> Grid<P> {
    pub fn filled(rows: usize, cols: usize, value: P) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }
}

impl<P> Grid<P> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> P) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Wraps row-major data. Returns `None` on a size mismatch.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<P>) -> Option<Self> {
        (data.len() == rows * cols).then_some(Self { rows, cols, data })
    }

    /// Number of rows, `m + 1`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns, `n + 1`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[P] {
        &self.data
    }

    pub fn iter(&self) -> impl Iterator<Item = &P> {
        self.data.iter()
    }

    pub fn row(&self, i: usize) -> &[P] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<Q>(&self, f: impl FnMut(&P) -> Q) -> Grid<Q> {
        Grid {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn same_shape<Q>(&self, other: &Grid<Q>) -> bool {
        self.rows == other.rows && self.cols == other.cols
    }
}

impl<P> Index<(usize, usize)> for Grid<P> {
    type Output = P;
    fn index(&self, (i, j): (usize, usize)) -> &P {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<P> IndexMut<(usize, usize)> for Grid<P> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut P {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Diagonal of the axis-aligned bounding box of a point set.
pub fn bbox_diagonal<T: Scalar>(points: &[Vec3<T>]) -> T {
    let Some(first) = points.first() else {
        return T::zero();
    };
    let (mut lo, mut hi) = (*first, *first);
    for p in points {
        lo = Vec3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
        hi = Vec3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
    }
    (hi - lo).norm()
}

/// Largest perpendicular spread of a planar point sequence relative to its diameter.
///
/// Returns 0 for fewer than two distinct points. A polygon "spans 2D" when this exceeds a
/// threshold; it equals twice the area of a near-maximal triangle over the squared diameter.
pub fn planar_spread<T: Scalar>(points: &[Vec2<T>]) -> T {
    let Some(&p0) = points.first() else {
        return T::zero();
    };
    let far = points
        .iter()
        .copied()
        .max_by(|a, b| {
            (*a - p0)
                .norm()
                .partial_cmp(&(*b - p0).norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or(p0);
    let base = far - p0;
    let len = base.norm();
    if len == T::zero() {
        return T::zero();
    }
    let dir = base * (T::one() / len);
    let width = points
        .iter()
        .map(|p| dir.cross(*p - p0).abs())
        .fold(T::zero(), T::max);
    width / len
}
