//! Real scalar abstraction shared by plain `f64` and (nested) dual numbers.
//!
//! Every curve in the kernel is written once against [`Scalar`]. Evaluating
//! it at a [`Dual`](crate::dual::Dual) parameter yields the derivative in the
//! dual part; nesting duals yields higher derivatives.

use core::fmt::Debug;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// Number of nested dual layers above `f64`.
    const DEPTH: usize;

    fn from_f64(x: f64) -> Self;

    /// Innermost real value, discarding every infinitesimal part.
    fn value(&self) -> f64;

    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn tanh(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn atan(self) -> Self;
    fn asinh(self) -> Self;
    fn acosh(self) -> Self;
    fn atanh(self) -> Self;

    #[inline]
    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    #[inline]
    fn one() -> Self {
        Self::from_f64(1.0)
    }

    /// `|x|` taken on the branch selected by the real value.
    #[inline]
    fn abs(self) -> Self {
        if self.value() < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    fn recip(self) -> Self {
        Self::one() / self
    }

    #[inline]
    fn powi(self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc *= self;
        }
        acc
    }

    #[inline]
    fn is_finite(&self) -> bool {
        self.value().is_finite()
    }
}

impl Scalar for f64 {
    const DEPTH: usize = 0;

    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn value(&self) -> f64 {
        *self
    }
    #[inline]
    fn sinh(self) -> Self {
        libm::sinh(self)
    }
    #[inline]
    fn cosh(self) -> Self {
        libm::cosh(self)
    }
    #[inline]
    fn tanh(self) -> Self {
        libm::tanh(self)
    }
    #[inline]
    fn exp(self) -> Self {
        libm::exp(self)
    }
    #[inline]
    fn ln(self) -> Self {
        libm::log(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        libm::sqrt(self)
    }
    #[inline]
    fn sin(self) -> Self {
        libm::sin(self)
    }
    #[inline]
    fn cos(self) -> Self {
        libm::cos(self)
    }
    #[inline]
    fn atan(self) -> Self {
        libm::atan(self)
    }
    #[inline]
    fn asinh(self) -> Self {
        libm::asinh(self)
    }
    #[inline]
    fn acosh(self) -> Self {
        libm::acosh(self)
    }
    #[inline]
    fn atanh(self) -> Self {
        libm::atanh(self)
    }
    #[inline]
    fn abs(self) -> Self {
        libm::fabs(self)
    }
}

/// Scalar functions evaluable over any [`Scalar`], so that they can be
/// integrated and differentiated exactly.
pub trait ScalarFn {
    fn eval<S: Scalar>(&self, x: S) -> S;
}

impl<F: ScalarFn + ?Sized> ScalarFn for &F {
    #[inline]
    fn eval<S: Scalar>(&self, x: S) -> S {
        (**self).eval(x)
    }
}

/// A constant function.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Constant(pub f64);

impl ScalarFn for Constant {
    #[inline]
    fn eval<S: Scalar>(&self, _x: S) -> S {
        S::from_f64(self.0)
    }
}
