//! Parametric space curves evaluable over any [`Scalar`].

use crate::dual::Dual;
use crate::lorentz::Vec3L;
use crate::scalar::{Scalar, ScalarFn};

/// A curve `u ↦ Vec3L`. Implementations must be written generically so that
/// evaluation at a dual parameter differentiates them.
pub trait CurveFn {
    fn eval<S: Scalar>(&self, u: S) -> Vec3L<S>;

    fn at(&self, u: f64) -> Vec3L {
        self.eval(u)
    }
}

impl<C: CurveFn + ?Sized> CurveFn for &C {
    #[inline]
    fn eval<S: Scalar>(&self, u: S) -> Vec3L<S> {
        (**self).eval(u)
    }
}

/// How curve derivatives are obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Differentiator {
    /// Evaluate at `u + ε` and read the dual part.
    DualAd,
    /// `(f(u + h) − f(u − h)) / 2h`.
    CentralFd { step: f64 },
}

impl Differentiator {
    #[inline]
    pub fn of<C: CurveFn>(self, curve: C) -> Derivative<C> {
        Derivative { curve, diff: self }
    }
}

/// The derivative of a curve, itself a curve.
#[derive(Clone, Copy, Debug)]
pub struct Derivative<C> {
    pub curve: C,
    pub diff: Differentiator,
}

impl<C: CurveFn> CurveFn for Derivative<C> {
    #[inline]
    fn eval<S: Scalar>(&self, u: S) -> Vec3L<S> {
        match self.diff {
            Differentiator::DualAd => self.curve.eval(Dual::variable(u)).map(|d| d.du),
            Differentiator::CentralFd { step } => {
                (self.curve.eval(u + step) - self.curve.eval(u - step)) / (2.0 * step)
            }
        }
    }
}

/// Derivative of a scalar function under the same rule.
#[inline]
pub fn scalar_derivative<S: Scalar, F: ScalarFn>(diff: Differentiator, f: &F, u: S) -> S {
    match diff {
        Differentiator::DualAd => f.eval(Dual::variable(u)).du,
        Differentiator::CentralFd { step } => (f.eval(u + step) - f.eval(u - step)) / (2.0 * step),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConstantCurve(pub Vec3L);

impl CurveFn for ConstantCurve {
    #[inline]
    fn eval<S: Scalar>(&self, _u: S) -> Vec3L<S> {
        Vec3L::from_real(self.0)
    }
}

/// `u ↦ a(u) × b(u)` under the Lorentzian cross product.
#[derive(Clone, Copy, Debug)]
pub struct CrossCurve<A, B>(pub A, pub B);

impl<A: CurveFn, B: CurveFn> CurveFn for CrossCurve<A, B> {
    #[inline]
    fn eval<S: Scalar>(&self, u: S) -> Vec3L<S> {
        self.0.eval(u).cross(&self.1.eval(u))
    }
}
