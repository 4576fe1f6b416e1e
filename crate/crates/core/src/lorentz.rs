//! Minkowski 3-space with signature (−, +, +).
//!
//! The first coordinate is the timelike one. With that ordering the
//! Lorentzian cross product satisfies `e1 × e2 = −e3`, `e2 × e3 = e1`,
//! `e3 × e1 = −e2`, and `⟨a × b, c⟩ = −det(a, b, c)`.

use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default band on `⟨a, a⟩` inside which a nonzero vector is lightlike.
pub const DEFAULT_CAUSAL_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Vec3L<S = f64> {
    /// Timelike coordinate.
    pub x1: S,
    pub x2: S,
    pub x3: S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CausalCharacter {
    Timelike,
    /// Includes the zero vector.
    Spacelike,
    Lightlike,
}

impl<S: Scalar> Vec3L<S> {
    /// Unchecked constructor used by the arithmetic; see [`Vec3L::try_new`].
    #[inline]
    pub const fn new(x1: S, x2: S, x3: S) -> Self {
        Self { x1, x2, x3 }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(S::zero(), S::zero(), S::zero())
    }

    #[inline]
    pub fn from_real(v: Vec3L<f64>) -> Self {
        Self::new(S::from_f64(v.x1), S::from_f64(v.x2), S::from_f64(v.x3))
    }

    /// Innermost real vector.
    #[inline]
    pub fn value(&self) -> Vec3L<f64> {
        Vec3L::new(self.x1.value(), self.x2.value(), self.x3.value())
    }

    #[inline]
    pub fn map<T, F: Fn(S) -> T>(self, f: F) -> Vec3L<T> {
        Vec3L { x1: f(self.x1), x2: f(self.x2), x3: f(self.x3) }
    }

    #[inline]
    pub fn dot(&self, other: &Self) -> S {
        lorentz_dot(self, other)
    }

    #[inline]
    pub fn cross(&self, other: &Self) -> Self {
        lorentz_cross(self, other)
    }

    #[inline]
    pub fn norm(&self) -> S {
        lorentz_norm(self)
    }

    #[inline]
    pub fn scale(self, k: S) -> Self {
        Self::new(self.x1 * k, self.x2 * k, self.x3 * k)
    }

    /// Divides by the Lorentzian norm; the causal character is preserved.
    #[inline]
    pub fn normalized(self) -> Self {
        let n = self.norm();
        self.scale(n.recip())
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite() && self.x3.is_finite()
    }
}

impl Vec3L<f64> {
    pub fn try_new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        let v = Self::new(x1, x2, x3);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("vector component"))
        }
    }

    pub const E1: Self = Self::new(1.0, 0.0, 0.0);
    pub const E2: Self = Self::new(0.0, 1.0, 0.0);
    pub const E3: Self = Self::new(0.0, 0.0, 1.0);

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    /// Largest absolute component; the Lorentzian form is indefinite and
    /// cannot measure closeness.
    pub fn max_abs(&self) -> f64 {
        libm::fmax(libm::fmax(libm::fabs(self.x1), libm::fabs(self.x2)), libm::fabs(self.x3))
    }

    pub fn causal_character(&self) -> CausalCharacter {
        causal_character_with(self, DEFAULT_CAUSAL_TOLERANCE)
    }
}

/// `⟨a, b⟩ = −a1 b1 + a2 b2 + a3 b3`.
#[inline]
pub fn lorentz_dot<S: Scalar>(a: &Vec3L<S>, b: &Vec3L<S>) -> S {
    -(a.x1 * b.x1) + a.x2 * b.x2 + a.x3 * b.x3
}

#[inline]
pub fn lorentz_cross<S: Scalar>(a: &Vec3L<S>, b: &Vec3L<S>) -> Vec3L<S> {
    Vec3L::new(
        a.x2 * b.x3 - a.x3 * b.x2,
        a.x1 * b.x3 - a.x3 * b.x1,
        a.x2 * b.x1 - a.x1 * b.x2,
    )
}

/// `√|⟨a, a⟩|`.
#[inline]
pub fn lorentz_norm<S: Scalar>(a: &Vec3L<S>) -> S {
    lorentz_dot(a, a).abs().sqrt()
}

/// Determinant of the matrix with rows `a`, `b`, `c`.
#[inline]
pub fn det3<S: Scalar>(a: &Vec3L<S>, b: &Vec3L<S>, c: &Vec3L<S>) -> S {
    a.x1 * (b.x2 * c.x3 - b.x3 * c.x2) - a.x2 * (b.x1 * c.x3 - b.x3 * c.x1)
        + a.x3 * (b.x1 * c.x2 - b.x2 * c.x1)
}

pub fn causal_character(a: &Vec3L<f64>) -> CausalCharacter {
    causal_character_with(a, DEFAULT_CAUSAL_TOLERANCE)
}

/// Classifies by the sign of `⟨a, a⟩` with a band of width `tol` around 0.
pub fn causal_character_with(a: &Vec3L<f64>, tol: f64) -> CausalCharacter {
    let q = lorentz_dot(a, a);
    if q < -tol {
        CausalCharacter::Timelike
    } else if q > tol || (a.x1 == 0.0 && a.x2 == 0.0 && a.x3 == 0.0) {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Lightlike
    }
}

impl<S: Scalar> Add for Vec3L<S> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl<S: Scalar> Sub for Vec3L<S> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl<S: Scalar> Neg for Vec3L<S> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x1, -self.x2, -self.x3)
    }
}

impl<S: Scalar> AddAssign for Vec3L<S> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<S: Scalar> SubAssign for Vec3L<S> {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<S: Scalar> Mul<f64> for Vec3L<S> {
    type Output = Self;
    #[inline]
    fn mul(self, k: f64) -> Self {
        Self::new(self.x1 * k, self.x2 * k, self.x3 * k)
    }
}

impl<S: Scalar> Div<f64> for Vec3L<S> {
    type Output = Self;
    #[inline]
    fn div(self, k: f64) -> Self {
        Self::new(self.x1 / k, self.x2 / k, self.x3 / k)
    }
}
