//! Dual numbers `a + εa*` (ε² = 0) and dual Lorentzian vectors.
//!
//! [`Dual`] is generic over its component type so that it doubles as a
//! forward-mode differentiation engine: `f(x + ε) = f(x) + ε f′(x)`.
//! Nesting (`Dual<Dual<f64>>`, ...) carries higher derivatives through the
//! same arithmetic.

use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::lorentz::{lorentz_cross, lorentz_dot, CausalCharacter, Vec3L};
use crate::scalar::Scalar;

/// Below this magnitude a real part is treated as zero when dividing.
pub const PURE_DUAL_TOLERANCE: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Dual<S = f64> {
    pub re: S,
    pub du: S,
}

/// A dual number over the reals.
pub type DualScalar = Dual<f64>;

impl<S: Scalar> Dual<S> {
    #[inline]
    pub const fn new(re: S, du: S) -> Self {
        Self { re, du }
    }

    /// `x + ε`: seeds a derivative with respect to `x`.
    #[inline]
    pub fn variable(x: S) -> Self {
        Self::new(x, S::one())
    }

    #[inline]
    pub fn constant(x: S) -> Self {
        Self::new(x, S::zero())
    }

    /// The dual unit ε.
    #[inline]
    pub fn epsilon() -> Self {
        Self::new(S::zero(), S::one())
    }

    /// Applies an analytic function given its value and derivative at the
    /// real part.
    #[inline]
    fn chain(self, f: S, df: S) -> Self {
        Self::new(f, self.du * df)
    }

    /// Division that refuses zero divisors.
    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        let r = rhs.re.value();
        if libm::fabs(r) < PURE_DUAL_TOLERANCE {
            return Err(Error::DivisionByPureDual(r));
        }
        Ok(self / rhs)
    }
}

impl DualScalar {
    pub fn to_array(self) -> [f64; 2] {
        [self.re, self.du]
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Dual<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ε{}", self.re, self.du)
    }
}

impl<S: Scalar> Add for Dual<S> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.du + o.du)
    }
}

impl<S: Scalar> Sub for Dual<S> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.du - o.du)
    }
}

impl<S: Scalar> Mul for Dual<S> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::new(self.re * o.re, self.re * o.du + self.du * o.re)
    }
}

impl<S: Scalar> Div for Dual<S> {
    type Output = Self;
    #[inline]
    fn div(self, o: Self) -> Self {
        let inv = o.re.recip();
        Self::new(self.re * inv, (self.du * o.re - self.re * o.du) * inv * inv)
    }
}

impl<S: Scalar> Neg for Dual<S> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.re, -self.du)
    }
}

impl<S: Scalar> Add<f64> for Dual<S> {
    type Output = Self;
    #[inline]
    fn add(self, k: f64) -> Self {
        Self::new(self.re + k, self.du)
    }
}

impl<S: Scalar> Sub<f64> for Dual<S> {
    type Output = Self;
    #[inline]
    fn sub(self, k: f64) -> Self {
        Self::new(self.re - k, self.du)
    }
}

impl<S: Scalar> Mul<f64> for Dual<S> {
    type Output = Self;
    #[inline]
    fn mul(self, k: f64) -> Self {
        Self::new(self.re * k, self.du * k)
    }
}

impl<S: Scalar> Div<f64> for Dual<S> {
    type Output = Self;
    #[inline]
    fn div(self, k: f64) -> Self {
        Self::new(self.re / k, self.du / k)
    }
}

impl<S: Scalar> AddAssign for Dual<S> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<S: Scalar> SubAssign for Dual<S> {
    #[inline]
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<S: Scalar> MulAssign for Dual<S> {
    #[inline]
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<S: Scalar> Scalar for Dual<S> {
    const DEPTH: usize = S::DEPTH + 1;

    #[inline]
    fn from_f64(x: f64) -> Self {
        Self::constant(S::from_f64(x))
    }
    #[inline]
    fn value(&self) -> f64 {
        self.re.value()
    }
    #[inline]
    fn sinh(self) -> Self {
        self.chain(self.re.sinh(), self.re.cosh())
    }
    #[inline]
    fn cosh(self) -> Self {
        self.chain(self.re.cosh(), self.re.sinh())
    }
    #[inline]
    fn tanh(self) -> Self {
        let t = self.re.tanh();
        self.chain(t, S::one() - t * t)
    }
    #[inline]
    fn exp(self) -> Self {
        let e = self.re.exp();
        self.chain(e, e)
    }
    #[inline]
    fn ln(self) -> Self {
        self.chain(self.re.ln(), self.re.recip())
    }
    #[inline]
    fn sqrt(self) -> Self {
        let r = self.re.sqrt();
        self.chain(r, (r * 2.0).recip())
    }
    #[inline]
    fn sin(self) -> Self {
        self.chain(self.re.sin(), self.re.cos())
    }
    #[inline]
    fn cos(self) -> Self {
        self.chain(self.re.cos(), -self.re.sin())
    }
    #[inline]
    fn atan(self) -> Self {
        self.chain(self.re.atan(), (self.re * self.re + 1.0).recip())
    }
    #[inline]
    fn asinh(self) -> Self {
        self.chain(self.re.asinh(), (self.re * self.re + 1.0).sqrt().recip())
    }
    #[inline]
    fn acosh(self) -> Self {
        self.chain(self.re.acosh(), (self.re * self.re - 1.0).sqrt().recip())
    }
    #[inline]
    fn atanh(self) -> Self {
        self.chain(self.re.atanh(), (-(self.re * self.re) + 1.0).recip())
    }
}

pub fn dual_add(x: DualScalar, y: DualScalar) -> DualScalar {
    x + y
}

pub fn dual_mul(x: DualScalar, y: DualScalar) -> DualScalar {
    x * y
}

/// `(a/b, (a*b − ab*)/b²)`; pure-dual divisors are zero divisors.
pub fn dual_div(x: DualScalar, y: DualScalar) -> Result<DualScalar> {
    x.checked_div(y)
}

/// The closed set of analytic functions that may be lifted to dual scalars.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LiftFn {
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Sqrt,
    Sin,
    Cos,
    Atan,
}

impl LiftFn {
    pub const ALL: [LiftFn; 8] = [
        LiftFn::Sinh,
        LiftFn::Cosh,
        LiftFn::Tanh,
        LiftFn::Exp,
        LiftFn::Sqrt,
        LiftFn::Sin,
        LiftFn::Cos,
        LiftFn::Atan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LiftFn::Sinh => "sinh",
            LiftFn::Cosh => "cosh",
            LiftFn::Tanh => "tanh",
            LiftFn::Exp => "exp",
            LiftFn::Sqrt => "sqrt",
            LiftFn::Sin => "sin",
            LiftFn::Cos => "cos",
            LiftFn::Atan => "atan",
        }
    }

    pub fn apply(self, x: f64) -> f64 {
        match self {
            LiftFn::Sinh => libm::sinh(x),
            LiftFn::Cosh => libm::cosh(x),
            LiftFn::Tanh => libm::tanh(x),
            LiftFn::Exp => libm::exp(x),
            LiftFn::Sqrt => libm::sqrt(x),
            LiftFn::Sin => libm::sin(x),
            LiftFn::Cos => libm::cos(x),
            LiftFn::Atan => libm::atan(x),
        }
    }

    pub fn derivative(self, x: f64) -> f64 {
        match self {
            LiftFn::Sinh => libm::cosh(x),
            LiftFn::Cosh => libm::sinh(x),
            LiftFn::Tanh => {
                let c = libm::cosh(x);
                1.0 / (c * c)
            }
            LiftFn::Exp => libm::exp(x),
            LiftFn::Sqrt => 0.5 / libm::sqrt(x),
            LiftFn::Sin => libm::cos(x),
            LiftFn::Cos => -libm::sin(x),
            LiftFn::Atan => 1.0 / (1.0 + x * x),
        }
    }

    /// Whether `x` lies in the open domain where the lift is defined.
    pub fn admits(self, x: f64) -> bool {
        match self {
            LiftFn::Sqrt => x > 0.0,
            _ => x.is_finite(),
        }
    }
}

/// `f(x + εx*) = f(x) + εx* f′(x)`.
pub fn dual_lift(f: LiftFn, x: DualScalar) -> Result<DualScalar> {
    if !f.admits(x.re) {
        return Err(Error::DomainError { function: f.name(), x: x.re });
    }
    Ok(Dual::new(f.apply(x.re), x.du * f.derivative(x.re)))
}

/// Dual Lorentzian vector `ã = a + εa*`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DualVec3 {
    pub re: Vec3L,
    pub du: Vec3L,
}

impl DualVec3 {
    pub const fn new(re: Vec3L, du: Vec3L) -> Self {
        Self { re, du }
    }

    pub fn real(re: Vec3L) -> Self {
        Self::new(re, Vec3L::zero())
    }

    pub fn dot(&self, other: &Self) -> DualScalar {
        dual_lorentz_dot(self, other)
    }

    pub fn cross(&self, other: &Self) -> Self {
        dual_lorentz_cross(self, other)
    }

    pub fn scale(&self, k: DualScalar) -> Self {
        Self::new(self.re * k.re, self.re * k.du + self.du * k.re)
    }

    /// Causal character of the real part.
    pub fn causal_character(&self) -> CausalCharacter {
        self.re.causal_character()
    }

    /// Largest componentwise deviation over both parts.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        libm::fmax((self.re - other.re).max_abs(), (self.du - other.du).max_abs())
    }

    /// Collapses `Vec3L<Dual<f64>>` (a vector of dual scalars) into a dual
    /// vector.
    pub fn from_components(v: Vec3L<DualScalar>) -> Self {
        Self::new(v.map(|d| d.re), v.map(|d| d.du))
    }
}

impl Add for DualVec3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.du + o.du)
    }
}

impl Sub for DualVec3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.du - o.du)
    }
}

impl Neg for DualVec3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.du)
    }
}

/// `⟨ã, b̃⟩ = ⟨a, b⟩ + ε(⟨a, b*⟩ + ⟨a*, b⟩)`.
pub fn dual_lorentz_dot(x: &DualVec3, y: &DualVec3) -> DualScalar {
    Dual::new(lorentz_dot(&x.re, &y.re), lorentz_dot(&x.re, &y.du) + lorentz_dot(&x.du, &y.re))
}

/// `ã × b̃ = a × b + ε(a* × b + a × b*)`.
pub fn dual_lorentz_cross(x: &DualVec3, y: &DualVec3) -> DualVec3 {
    DualVec3::new(
        lorentz_cross(&x.re, &y.re),
        lorentz_cross(&x.du, &y.re) + lorentz_cross(&x.re, &y.du),
    )
}

/// `‖ã‖ = √|⟨ã, ã⟩|` lifted to dual scalars.
///
/// For spacelike real parts this is `‖a‖ + ε⟨a, a*⟩/‖a‖`; timelike real
/// parts flip the sign of the dual part.
pub fn dual_norm(x: &DualVec3) -> Result<DualScalar> {
    let q = dual_lorentz_dot(x, x);
    match x.causal_character() {
        CausalCharacter::Lightlike => Err(Error::NullRealPart),
        _ if q.re == 0.0 => Err(Error::NullRealPart),
        _ => Ok(q.abs().sqrt()),
    }
}

/// Dual angle `θ̄ = θ + εθ*`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DualAngle {
    pub theta: f64,
    pub theta_star: f64,
}

impl DualAngle {
    pub const fn new(theta: f64, theta_star: f64) -> Self {
        Self { theta, theta_star }
    }

    pub fn as_dual(self) -> DualScalar {
        Dual::new(self.theta, self.theta_star)
    }

    pub fn from_dual(d: DualScalar) -> Self {
        Self::new(d.re, d.du)
    }

    pub fn sinh(self) -> DualScalar {
        self.as_dual().sinh()
    }

    pub fn cosh(self) -> DualScalar {
        self.as_dual().cosh()
    }

    pub fn tanh(self) -> DualScalar {
        self.as_dual().tanh()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum AngleKind {
    /// Spacelike `x`, timelike `y`: `⟨x̃, ỹ⟩ = ‖x̃‖‖ỹ‖ sinh θ̄`.
    Timelike,
    /// Two spacelike vectors spanning a timelike plane:
    /// `⟨x̃, ỹ⟩ = ‖x̃‖‖ỹ‖ cosh θ̄`, principal branch `θ ≥ 0`.
    Central,
}

/// Tolerance around `cosh θ = 1` inside which the central angle is zero.
const CENTRAL_BRANCH_TOLERANCE: f64 = 1e-12;

pub fn dual_angle_between(x: &DualVec3, y: &DualVec3, kind: AngleKind) -> Result<DualAngle> {
    let (cx, cy) = (x.causal_character(), y.causal_character());
    match kind {
        AngleKind::Timelike => {
            if cx != CausalCharacter::Spacelike || cy != CausalCharacter::Timelike {
                return Err(Error::KindMismatch("timelike angle needs spacelike x and timelike y"));
            }
        }
        AngleKind::Central => {
            if cx != CausalCharacter::Spacelike || cy != CausalCharacter::Spacelike {
                return Err(Error::KindMismatch("central angle needs two spacelike vectors"));
            }
        }
    }
    let ratio = dual_lorentz_dot(x, y).checked_div(dual_norm(x)? * dual_norm(y)?)?;
    let theta = match kind {
        AngleKind::Timelike => ratio.asinh(),
        AngleKind::Central => {
            if ratio.re < 1.0 - CENTRAL_BRANCH_TOLERANCE {
                return Err(Error::BranchError(ratio.re));
            }
            if ratio.re <= 1.0 + CENTRAL_BRANCH_TOLERANCE {
                // cosh(0 + εθ*) = 1 + ε0, so θ* is not observable at θ = 0
                if libm::fabs(ratio.du) > CENTRAL_BRANCH_TOLERANCE {
                    return Err(Error::BranchError(ratio.re));
                }
                Dual::new(0.0, 0.0)
            } else {
                ratio.acosh()
            }
        }
    };
    Ok(DualAngle::from_dual(theta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(re: f64, du: f64) -> DualScalar {
        Dual::new(re, du)
    }

    fn close(a: DualScalar, b: DualScalar, tol: f64) -> bool {
        (a.re - b.re).abs() < tol && (a.du - b.du).abs() < tol
    }

    #[test]
    fn ring_examples() {
        assert_eq!(dual_mul(d(2.0, 3.0), d(4.0, 5.0)), d(8.0, 22.0));
        assert_eq!(dual_mul(d(0.0, 1.0), d(0.0, 1.0)), d(0.0, 0.0));
        assert_eq!(dual_div(d(8.0, 22.0), d(4.0, 5.0)).unwrap(), d(2.0, 3.0));
        assert_eq!(dual_add(d(1.0, 2.0), d(3.0, -4.0)), d(4.0, -2.0));
    }

    #[test]
    fn pure_dual_divisor_is_rejected() {
        assert_eq!(dual_div(d(1.0, 1.0), d(0.0, 3.0)), Err(Error::DivisionByPureDual(0.0)));
        assert!(dual_div(d(1.0, 1.0), d(1e-15, 3.0)).is_err());
    }

    #[test]
    fn lift_examples() {
        let c = dual_lift(LiftFn::Cosh, d(1.0, 2.0)).unwrap();
        assert!(close(c, d(1.0f64.cosh(), 2.0 * 1.0f64.sinh()), 1e-15));
        assert!((c.re - 1.54308).abs() < 1e-5 && (c.du - 2.35040).abs() < 1e-5);
        assert_eq!(dual_lift(LiftFn::Sqrt, d(4.0, 4.0)).unwrap(), d(2.0, 1.0));
        assert_eq!(dual_lift(LiftFn::Sinh, d(0.0, 5.0)).unwrap(), d(0.0, 5.0));
    }

    #[test]
    fn sqrt_domain() {
        assert!(matches!(dual_lift(LiftFn::Sqrt, d(0.0, 1.0)), Err(Error::DomainError { .. })));
        assert!(matches!(dual_lift(LiftFn::Sqrt, d(-1.0, 1.0)), Err(Error::DomainError { .. })));
    }

    #[test]
    fn lift_table_agrees_with_scalar_impl() {
        for f in LiftFn::ALL {
            let x = d(0.7, 1.3);
            let lifted = dual_lift(f, x).unwrap();
            let via_trait = match f {
                LiftFn::Sinh => x.sinh(),
                LiftFn::Cosh => x.cosh(),
                LiftFn::Tanh => x.tanh(),
                LiftFn::Exp => x.exp(),
                LiftFn::Sqrt => x.sqrt(),
                LiftFn::Sin => x.sin(),
                LiftFn::Cos => x.cos(),
                LiftFn::Atan => x.atan(),
            };
            assert!(close(lifted, via_trait, 1e-15), "{f:?}");
        }
    }

    #[test]
    fn nested_duals_carry_second_derivatives() {
        // d²/dx² sinh x = sinh x
        let x = Dual::variable(Dual::variable(0.4));
        let y = x.sinh();
        assert!((y.du.du - 0.4f64.sinh()).abs() < 1e-15);
        assert!((y.du.re - 0.4f64.cosh()).abs() < 1e-15);
        assert_eq!(<Dual<Dual<f64>> as Scalar>::DEPTH, 2);
    }

    #[test]
    fn dot_examples() {
        let e = DualVec3::real(Vec3L::E2);
        assert_eq!(dual_lorentz_dot(&e, &e), d(1.0, 0.0));
        let x = DualVec3::new(Vec3L::E1, Vec3L::E2);
        assert_eq!(dual_lorentz_dot(&x, &x), d(-1.0, 0.0));
        let y = DualVec3::new(Vec3L::E2, Vec3L::new(0.0, 2.0, 0.0));
        assert_eq!(dual_lorentz_dot(&y, &y), d(1.0, 4.0));
    }

    #[test]
    fn cross_examples() {
        let r = dual_lorentz_cross(&DualVec3::real(Vec3L::E1), &DualVec3::real(Vec3L::E2));
        assert_eq!(r, DualVec3::real(-Vec3L::E3));
        let a = DualVec3::new(Vec3L::new(0.3, 1.0, -2.0), Vec3L::new(4.0, 0.5, 1.0));
        assert_eq!(dual_lorentz_cross(&a, &a), DualVec3::default());
        let x = DualVec3::real(Vec3L::E2);
        let y = DualVec3::new(Vec3L::E3, Vec3L::E1);
        assert_eq!(dual_lorentz_cross(&x, &y), DualVec3::new(Vec3L::E1, Vec3L::E3));
    }

    #[test]
    fn norm_examples() {
        let x = DualVec3::real(Vec3L::new(0.0, 3.0, 4.0));
        assert_eq!(dual_norm(&x).unwrap(), d(5.0, 0.0));
        let y = DualVec3::new(Vec3L::E2, Vec3L::new(0.0, 2.0, 0.0));
        assert_eq!(dual_norm(&y).unwrap(), d(1.0, 2.0));
        let z = DualVec3::new(Vec3L::new(1.0, 1.0, 0.0), Vec3L::E3);
        assert_eq!(dual_norm(&z), Err(Error::NullRealPart));
        assert_eq!(dual_norm(&DualVec3::default()), Err(Error::NullRealPart));
    }

    #[test]
    fn timelike_norm_is_sqrt_of_abs_form() {
        // ⟨ã,ã⟩ = −1 − 2ε·0.3 for a = e1, a* = (0.3, 0, 0)
        let x = DualVec3::new(Vec3L::E1, Vec3L::new(0.3, 0.0, 0.0));
        let n = dual_norm(&x).unwrap();
        assert!(close(n, d(1.0, 0.3), 1e-15));
    }

    #[test]
    fn unit_dual_vectors_have_unit_norm() {
        let a = Vec3L::new(0.0, 0.6, 0.8);
        let moment = Vec3L::new(2.0, 0.8, -0.6); // ⟨a, a*⟩ = 0.48 − 0.48 = 0
        let x = DualVec3::new(a, moment);
        assert!(close(dual_norm(&x).unwrap(), d(1.0, 0.0), 1e-12));
        assert!(close(dual_lorentz_dot(&x, &x), d(1.0, 0.0), 1e-12));
    }

    #[test]
    fn angle_examples() {
        let x = DualVec3::real(Vec3L::E2);
        let y = DualVec3::real(Vec3L::E1);
        let a = dual_angle_between(&x, &y, AngleKind::Timelike).unwrap();
        assert_eq!(a, DualAngle::new(0.0, 0.0));

        // unit spacelike pair with ⟨x,y⟩ = cosh 0.5: x = e2, y = (sinh 0.5, cosh 0.5, 0)
        let y = DualVec3::real(Vec3L::new(0.5f64.sinh(), 0.5f64.cosh(), 0.0));
        let a = dual_angle_between(&x, &y, AngleKind::Central).unwrap();
        assert!((a.theta - 0.5).abs() < 1e-12 && a.theta_star.abs() < 1e-12);

        // ⟨x̃,ỹ⟩ = sinh 0.3 + ε 0.2 cosh 0.3 on unit vectors:
        // x = e2, y = (cosh 0.3, sinh 0.3, 0) timelike, y* = (0, 0, 0.2 cosh 0.3)... adjust:
        // dual part ⟨x, y*⟩ = y*_2, so set y*_2 = 0.2 cosh 0.3 and y*_1 so that ⟨y, y*⟩ = 0.
        let (c, s) = (0.3f64.cosh(), 0.3f64.sinh());
        let ystar2 = 0.2 * c;
        let ystar1 = s * ystar2 / c;
        let y = DualVec3::new(Vec3L::new(c, s, 0.0), Vec3L::new(ystar1, ystar2, 0.0));
        let a = dual_angle_between(&x, &y, AngleKind::Timelike).unwrap();
        assert!((a.theta - 0.3).abs() < 1e-12, "{a:?}");
        assert!((a.theta_star - 0.2).abs() < 1e-12, "{a:?}");
    }

    #[test]
    fn angle_errors() {
        let x = DualVec3::real(Vec3L::E2);
        let y = DualVec3::real(Vec3L::E3);
        assert!(matches!(dual_angle_between(&x, &x, AngleKind::Timelike), Err(Error::KindMismatch(_))));
        assert!(matches!(
            dual_angle_between(&x, &DualVec3::real(Vec3L::E1), AngleKind::Central),
            Err(Error::KindMismatch(_))
        ));
        // orthogonal spacelike vectors span a spacelike plane: cosh θ = 0
        assert!(matches!(dual_angle_between(&x, &y, AngleKind::Central), Err(Error::BranchError(_))));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn central_fd(f: LiftFn, x: f64) -> f64 {
            let h = 1e-5;
            (f.apply(x + h) - f.apply(x - h)) / (2.0 * h)
        }

        proptest! {
            #[test]
            fn lift_matches_central_difference(x in -3.0f64..3.0, idx in 0usize..8) {
                let f = LiftFn::ALL[idx];
                let x = if f == LiftFn::Sqrt { x.abs() + 0.1 } else { x };
                let lifted = dual_lift(f, Dual::new(x, 1.0)).unwrap();
                prop_assert!((lifted.du - central_fd(f, x)).abs() < 1e-8);
            }

            #[test]
            fn distributive_on_small_integers(a in -64i32..64, b in -64i32..64, c in -64i32..64,
                                            d1 in -64i32..64, d2 in -64i32..64, d3 in -64i32..64) {
                let x = d(a as f64, d1 as f64);
                let y = d(b as f64, d2 as f64);
                let z = d(c as f64, d3 as f64);
                prop_assert_eq!(x * (y + z), x * y + x * z);
                prop_assert_eq!((x * y) * z, x * (y * z));
                prop_assert_eq!(x * y, y * x);
            }
        }
    }
}
