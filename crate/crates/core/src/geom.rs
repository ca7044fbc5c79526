//! Small fixed-size vector types.

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::scalar::{lit, to_f64, Real};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Point3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Point3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn from_f64(p: [f64; 3]) -> Self {
        Self::new(lit(p[0]), lit(p[1]), lit(p[2]))
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [T; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_f64(self) -> [f64; 3] {
        [to_f64(self.x), to_f64(self.y), to_f64(self.z)]
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

    pub fn distance(self, o: Self) -> T {
        (self - o).norm()
    }

    pub fn scale(self, s: T) -> Self {
        self * s
    }

    pub fn max_abs_diff(self, o: Self) -> T {
        (self.x - o.x)
            .abs()
            .max((self.y - o.y).abs())
            .max((self.z - o.z).abs())
    }
}

impl<T: Real> Add for Point3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for Point3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Mul<T> for Point3<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Real> Neg for Point3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// Point or vector in a planar chart.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Point2<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn perp_dot(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> T {
        self.dot(self).sqrt()
    }

    pub fn distance(self, o: Self) -> T {
        (self - o).norm()
    }

    pub fn to_f64(self) -> [f64; 2] {
        [to_f64(self.x), to_f64(self.y)]
    }
}

impl<T: Real> Add for Point2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Real> Sub for Point2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Real> Mul<T> for Point2<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

/// Signed angle turning from direction `a` to direction `b`, in `(-pi, pi]`.
pub fn turning_angle<T: Real>(a: Point2<T>, b: Point2<T>) -> T {
    a.perp_dot(b).atan2(a.dot(b))
}

/// Rigid motion of the plane, possibly orientation reversing:
/// `p -> linear * p + offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneMotion<T> {
    /// Row-major 2x2 orthogonal matrix.
    pub linear: [[T; 2]; 2],
    pub offset: Point2<T>,
}

impl<T: Real> PlaneMotion<T> {
    pub fn identity() -> Self {
        Self {
            linear: [[T::one(), T::zero()], [T::zero(), T::one()]],
            offset: Point2::new(T::zero(), T::zero()),
        }
    }

    pub fn rotation(angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            linear: [[c, -s], [s, c]],
            offset: Point2::new(T::zero(), T::zero()),
        }
    }

    pub fn translation(v: Point2<T>) -> Self {
        Self {
            offset: v,
            ..Self::identity()
        }
    }

    pub fn apply_linear(&self, p: Point2<T>) -> Point2<T> {
        Point2::new(
            self.linear[0][0] * p.x + self.linear[0][1] * p.y,
            self.linear[1][0] * p.x + self.linear[1][1] * p.y,
        )
    }

    pub fn apply(&self, p: Point2<T>) -> Point2<T> {
        self.apply_linear(p) + self.offset
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Self) -> Self {
        let m = |i: usize, j: usize| {
            self.linear[i][0] * inner.linear[0][j] + self.linear[i][1] * inner.linear[1][j]
        };
        Self {
            linear: [[m(0, 0), m(0, 1)], [m(1, 0), m(1, 1)]],
            offset: self.apply(inner.offset),
        }
    }

    pub fn determinant(&self) -> T {
        self.linear[0][0] * self.linear[1][1] - self.linear[0][1] * self.linear[1][0]
    }

    /// Reflection across the line through `a` and `b`.
    pub fn reflection_across(a: Point2<T>, b: Point2<T>) -> Self {
        let d = b - a;
        let d = d * (T::one() / d.norm());
        let two = T::one() + T::one();
        let linear = [
            [two * d.x * d.x - T::one(), two * d.x * d.y],
            [two * d.x * d.y, two * d.y * d.y - T::one()],
        ];
        let mut m = Self {
            linear,
            offset: Point2::new(T::zero(), T::zero()),
        };
        m.offset = a - m.apply_linear(a);
        m
    }
}
