//! Quadrature, differentiation, antiderivatives, and the frame integrator.

use alloc::vec::Vec;

use crate::curve::{CurveFn, Differentiator};
use crate::error::{Error, Result};
use crate::lorentz::{lorentz_dot, Vec3L};
use crate::scalar::{Scalar, ScalarFn};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Quadrature {
    Simpson,
    Trapezoid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum DerivativeMode {
    DualAd,
    CentralFd,
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NumericsConfig {
    pub quadrature: Quadrature,
    pub derivative_mode: DerivativeMode,
    pub fd_step: f64,
    pub ode_steps_per_unit: usize,
    /// Panels used by [`integrate`].
    pub quadrature_intervals: usize,
    pub tolerance_construction: f64,
    pub tolerance_theorem: f64,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        Self {
            quadrature: Quadrature::Simpson,
            derivative_mode: DerivativeMode::DualAd,
            fd_step: 1e-4,
            ode_steps_per_unit: 1000,
            quadrature_intervals: 512,
            tolerance_construction: 1e-9,
            tolerance_theorem: 1e-8,
        }
    }
}

impl NumericsConfig {
    /// Central differences with the matching looser theorem tolerance.
    pub fn finite_difference() -> Self {
        Self { derivative_mode: DerivativeMode::CentralFd, tolerance_theorem: 1e-6, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.fd_step > 0.0) || !self.fd_step.is_finite() {
            return Err(Error::InvalidSpec("fd_step must be positive"));
        }
        if self.ode_steps_per_unit < 16 {
            return Err(Error::InvalidSpec("ode_steps_per_unit must be at least 16"));
        }
        if self.quadrature_intervals < 2 {
            return Err(Error::InvalidSpec("quadrature_intervals must be at least 2"));
        }
        if !(self.tolerance_construction > 0.0) || !(self.tolerance_theorem > 0.0) {
            return Err(Error::InvalidSpec("tolerances must be positive"));
        }
        Ok(())
    }

    pub fn differentiator(&self) -> Differentiator {
        match self.derivative_mode {
            DerivativeMode::DualAd => Differentiator::DualAd,
            DerivativeMode::CentralFd => Differentiator::CentralFd { step: self.fd_step },
        }
    }
}

/// Composite quadrature of `f` over `[a, b]` at `cfg.quadrature_intervals`
/// panels. `a > b` integrates backwards.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &NumericsConfig) -> Result<f64> {
    if a > b {
        return integrate(f, b, a, cfg).map(|v| -v);
    }
    if a == b {
        return Ok(0.0);
    }
    let mut n = cfg.quadrature_intervals.max(2);
    if cfg.quadrature == Quadrature::Simpson && n % 2 == 1 {
        n += 1;
    }
    let h = (b - a) / n as f64;
    let mut acc = 0.0;
    for i in 0..=n {
        let y = f(a + h * i as f64);
        if !y.is_finite() {
            return Err(Error::NonFinite("integrand"));
        }
        let w = match cfg.quadrature {
            Quadrature::Trapezoid => {
                if i == 0 || i == n {
                    0.5
                } else {
                    1.0
                }
            }
            Quadrature::Simpson => {
                if i == 0 || i == n {
                    1.0 / 3.0
                } else if i % 2 == 1 {
                    4.0 / 3.0
                } else {
                    2.0 / 3.0
                }
            }
        };
        acc += w * y;
    }
    Ok(acc * h)
}

/// Running integral of sampled values, `out[0] = 0`.
///
/// Simpson mode integrates each panel with the quadratic through it and a
/// neighbouring node, so every node gets its own value.
pub fn cumulative_integral(xs: &[f64], ys: &[f64], quadrature: Quadrature) -> Result<Vec<f64>> {
    if xs.len() != ys.len() {
        return Err(Error::InvalidSpec("grid and samples differ in length"));
    }
    if ys.iter().any(|y| !y.is_finite()) {
        return Err(Error::NonFinite("integrand"));
    }
    let n = xs.len();
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return Ok(out);
    }
    out.push(0.0);
    for i in 1..n {
        let (x0, x1) = (xs[i - 1], xs[i]);
        let panel = if quadrature == Quadrature::Trapezoid || n < 3 {
            0.5 * (x1 - x0) * (ys[i - 1] + ys[i])
        } else {
            let j = if i + 1 < n { i - 1 } else { i - 2 };
            quadratic_panel([xs[j], xs[j + 1], xs[j + 2]], [ys[j], ys[j + 1], ys[j + 2]], x0, x1)
        };
        out.push(out[i - 1] + panel);
    }
    Ok(out)
}

/// Integral over `[a, b]` of the quadratic interpolating three nodes.
fn quadratic_panel(x: [f64; 3], y: [f64; 3], a: f64, b: f64) -> f64 {
    let lagrange = |t: f64| {
        let mut acc = 0.0;
        for i in 0..3 {
            let mut l = y[i];
            for j in 0..3 {
                if i != j {
                    l *= (t - x[j]) / (x[i] - x[j]);
                }
            }
            acc += l;
        }
        acc
    };
    let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
    let k = half / libm::sqrt(3.0);
    half * (lagrange(mid - k) + lagrange(mid + k))
}

/// Gauss–Legendre nodes and weights on `[0, 1]`.
const GL4: [(f64, f64); 4] = [
    (0.069_431_844_202_973_71, 0.173_927_422_568_726_93),
    (0.330_009_478_207_571_87, 0.326_072_577_431_273_07),
    (0.669_990_521_792_428_1, 0.326_072_577_431_273_07),
    (0.930_568_155_797_026_3, 0.173_927_422_568_726_93),
];

const GL8: [(f64, f64); 8] = [
    (0.019_855_071_751_231_856, 0.050_614_268_145_188_13),
    (0.101_666_761_293_186_63, 0.111_190_517_226_687_24),
    (0.237_233_795_041_835_5, 0.156_853_322_938_943_64),
    (0.408_282_678_752_175_1, 0.181_341_891_689_181),
    (0.591_717_321_247_825, 0.181_341_891_689_181),
    (0.762_766_204_958_164_5, 0.156_853_322_938_943_64),
    (0.898_333_238_706_813_4, 0.111_190_517_226_687_24),
    (0.980_144_928_248_768_1, 0.050_614_268_145_188_13),
];

fn gauss8<F: ScalarFn>(f: &F, a: f64, b: f64) -> f64 {
    let h = b - a;
    GL8.iter().map(|&(t, w)| w * f.eval(a + h * t)).sum::<f64>() * h
}

/// `x ↦ ∫_origin^x f`, tabulated on a uniform grid and evaluable over any
/// [`Scalar`].
///
/// For a dual argument `r + ξ` (ξ nilpotent) the increment is
/// `ξ ∫₀¹ f(r + τξ) dτ`, whose integrand is a polynomial in τ of degree
/// below the nesting depth; four Gauss nodes integrate it exactly, so every
/// derivative of the antiderivative is exact.
#[derive(Clone, Debug)]
pub struct Antiderivative<F> {
    f: F,
    lo: f64,
    h: f64,
    cumulative: Vec<f64>,
}

impl<F: ScalarFn> Antiderivative<F> {
    /// Tabulates over `[min(lo, origin), max(hi, origin)]`.
    pub fn new(f: F, origin: f64, lo: f64, hi: f64, intervals: usize) -> Result<Self> {
        let (lo, hi) = (lo.min(origin), hi.max(origin));
        let n = intervals.max(1);
        let h = if hi > lo { (hi - lo) / n as f64 } else { 1.0 };
        let mut cumulative = Vec::with_capacity(n + 1);
        cumulative.push(0.0);
        for i in 0..n {
            let a = lo + h * i as f64;
            let piece = gauss8(&f, a, a + h);
            if !piece.is_finite() {
                return Err(Error::NonFinite("antiderivative integrand"));
            }
            cumulative.push(cumulative[i] + piece);
        }
        let mut table = Self { f, lo, h, cumulative };
        let shift = table.raw(origin);
        for c in &mut table.cumulative {
            *c -= shift;
        }
        Ok(table)
    }

    pub fn integrand(&self) -> &F {
        &self.f
    }

    fn raw(&self, x: f64) -> f64 {
        let last = self.cumulative.len() - 1;
        let i = libm::floor((x - self.lo) / self.h).clamp(0.0, last as f64) as usize;
        let i = i.min(last);
        let node = self.lo + self.h * i as f64;
        self.cumulative[i] + gauss8(&self.f, node, x)
    }

    pub fn real(&self, x: f64) -> f64 {
        self.raw(x)
    }
}

impl<F: ScalarFn> ScalarFn for Antiderivative<F> {
    fn eval<S: Scalar>(&self, x: S) -> S {
        let r = x.value();
        let base = S::from_f64(self.raw(r));
        if S::DEPTH == 0 {
            return base;
        }
        let xi = x - r;
        let mut acc = S::zero();
        for &(t, w) in &GL4 {
            acc += self.f.eval(xi * t + r) * w;
        }
        base + xi * acc
    }
}

/// Inverse of a strictly increasing [`Antiderivative`] (positive integrand).
#[derive(Clone, Debug)]
pub struct InverseAntiderivative<F> {
    forward: Antiderivative<F>,
}

impl<F: ScalarFn> InverseAntiderivative<F> {
    pub fn new(forward: Antiderivative<F>) -> Self {
        Self { forward }
    }

    pub fn forward(&self) -> &Antiderivative<F> {
        &self.forward
    }

    /// Real inverse: monotone interpolation on the table, then Newton.
    pub fn real(&self, s: f64) -> f64 {
        let table = &self.forward.cumulative;
        let lo = self.forward.lo;
        let h = self.forward.h;
        let i = table.partition_point(|&v| v < s);
        let mut u = if i == 0 {
            lo + (s - table[0]) / self.forward.f.eval(lo)
        } else if i >= table.len() {
            let last = table.len() - 1;
            let end = lo + h * last as f64;
            end + (s - table[last]) / self.forward.f.eval(end)
        } else {
            let (v0, v1) = (table[i - 1], table[i]);
            let frac = if v1 > v0 { (s - v0) / (v1 - v0) } else { 0.0 };
            lo + h * ((i - 1) as f64 + frac)
        };
        for _ in 0..50 {
            let step = (self.forward.raw(u) - s) / self.forward.f.eval(u);
            u -= step;
            if libm::fabs(step) <= 1e-15 * (1.0 + libm::fabs(u)) {
                break;
            }
        }
        u
    }
}

impl<F: ScalarFn> ScalarFn for InverseAntiderivative<F> {
    fn eval<S: Scalar>(&self, s: S) -> S {
        let mut u = S::from_f64(self.real(s.value()));
        // each Newton step in dual arithmetic fixes at least one more order
        for _ in 0..S::DEPTH {
            u -= (self.forward.eval(u) - s) / self.forward.f.eval(u);
        }
        u
    }
}

pub fn differentiate<C: CurveFn>(curve: &C, u: f64, cfg: &NumericsConfig) -> Vec3L {
    cfg.differentiator().of(curve).at(u)
}

/// Frame `{e, t, g}` with signature (+, −, +) and the striction point `c`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FrameState {
    pub e: Vec3L,
    pub t: Vec3L,
    pub g: Vec3L,
    pub c: Vec3L,
}

/// Drift allowed before re-orthonormalization.
pub const FRAME_DRIFT_LIMIT: f64 = 1e-6;

impl FrameState {
    /// Largest deviation from the (+, −, +) orthonormality relations.
    pub fn orthonormality_residual(&self) -> f64 {
        let (e, t, g) = (&self.e, &self.t, &self.g);
        [
            lorentz_dot(e, e) - 1.0,
            lorentz_dot(t, t) + 1.0,
            lorentz_dot(g, g) - 1.0,
            lorentz_dot(e, t),
            lorentz_dot(e, g),
            lorentz_dot(t, g),
        ]
        .iter()
        .fold(0.0, |m, v| libm::fmax(m, libm::fabs(*v)))
    }

    /// Lorentzian Gram–Schmidt in the order t, e, g.
    pub fn reorthonormalize(&self) -> Self {
        let t = self.t / libm::sqrt(-lorentz_dot(&self.t, &self.t));
        let e = self.e + t * lorentz_dot(&self.e, &t);
        let e = e / libm::sqrt(lorentz_dot(&e, &e));
        let g = self.g + t * lorentz_dot(&self.g, &t) - e * lorentz_dot(&self.g, &e);
        let g = g / libm::sqrt(lorentz_dot(&g, &g));
        Self { e, t, g, c: self.c }
    }

    fn rate(&self, gamma: f64, delta: f64, big_delta: f64) -> Self {
        Self {
            e: self.t,
            t: self.e + self.g * gamma,
            g: self.t * gamma,
            c: self.e * delta + self.g * big_delta,
        }
    }

    fn axpy(&self, k: f64, d: &Self) -> Self {
        Self { e: self.e + d.e * k, t: self.t + d.t * k, g: self.g + d.g * k, c: self.c + d.c * k }
    }
}

/// One RK4 step of `e′ = t, t′ = e + γg, g′ = γt, c′ = δe + Δg` from `s`
/// to `s + h`, followed by re-orthonormalization.
///
/// `rates(s)` returns `(γ, δ, Δ)`.
pub fn rk4_frame_step<R>(state: &FrameState, s: f64, h: f64, rates: R) -> Result<FrameState>
where
    R: Fn(f64) -> (f64, f64, f64),
{
    let k = |st: &FrameState, at: f64| {
        let (g, d, bd) = rates(at);
        st.rate(g, d, bd)
    };
    let k1 = k(state, s);
    let k2 = k(&state.axpy(0.5 * h, &k1), s + 0.5 * h);
    let k3 = k(&state.axpy(0.5 * h, &k2), s + 0.5 * h);
    let k4 = k(&state.axpy(h, &k3), s + h);
    let next = state
        .axpy(h / 6.0, &k1)
        .axpy(h / 3.0, &k2)
        .axpy(h / 3.0, &k3)
        .axpy(h / 6.0, &k4);
    let drift = next.orthonormality_residual();
    if !drift.is_finite() || drift > FRAME_DRIFT_LIMIT {
        return Err(Error::StepSizeError { s: s + h, drift });
    }
    Ok(next.reorthonormalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Constant;
    use core::f64::consts::PI;

    struct Poly3;
    impl ScalarFn for Poly3 {
        fn eval<S: Scalar>(&self, x: S) -> S {
            x * x * x * 2.0 - x * x + 3.0
        }
    }

    struct Speed;
    impl ScalarFn for Speed {
        fn eval<S: Scalar>(&self, x: S) -> S {
            x.cosh() + 1.0
        }
    }

    #[test]
    fn integrate_examples() {
        let cfg = NumericsConfig::default();
        assert!((integrate(|_| 0.1, 0.0, 0.5, &cfg).unwrap() - 0.05).abs() < 1e-15);
        assert!((integrate(|s| s, 0.0, 1.0, &cfg).unwrap() - 0.5).abs() < 1e-14);
        assert!((integrate(libm::sin, 0.0, PI, &cfg).unwrap() - 2.0).abs() < 1e-8);
        let trap = NumericsConfig { quadrature: Quadrature::Trapezoid, ..cfg };
        let a = integrate(|_| 0.1, 0.0, 0.5, &cfg).unwrap();
        let b = integrate(|_| 0.1, 0.0, 0.5, &trap).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn simpson_is_exact_on_cubics() {
        let cfg = NumericsConfig { quadrature_intervals: 8, ..Default::default() };
        // ∫_{-1}^{2} 2x³ − x² + 3 = 7.5 − 3 + 9 = 13.5
        let v = integrate(|x| Poly3.eval(x), -1.0, 2.0, &cfg).unwrap();
        assert!((v - 13.5).abs() < 1e-13);
    }

    #[test]
    fn integrate_rejects_non_finite() {
        let cfg = NumericsConfig::default();
        assert_eq!(integrate(|x| 1.0 / x, 0.0, 1.0, &cfg), Err(Error::NonFinite("integrand")));
    }

    #[test]
    fn reversed_bounds_flip_sign() {
        let cfg = NumericsConfig::default();
        let v = integrate(|x| x, 1.0, 0.0, &cfg).unwrap();
        assert!((v + 0.5).abs() < 1e-14);
    }

    #[test]
    fn cumulative_simpson_is_exact_on_quadratics() {
        let xs: Vec<f64> = (0..11).map(|i| i as f64 * 0.1).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x * x - x).collect();
        let out = cumulative_integral(&xs, &ys, Quadrature::Simpson).unwrap();
        for (x, v) in xs.iter().zip(&out) {
            assert!((v - (x * x * x - 0.5 * x * x)).abs() < 1e-14);
        }
        let flat = cumulative_integral(&xs, &[0.1; 11], Quadrature::Trapezoid).unwrap();
        assert!((flat[10] - 0.1).abs() < 1e-15);
    }

    #[test]
    fn antiderivative_derivatives_are_exact() {
        use crate::dual::Dual;
        let f = Antiderivative::new(Speed, 0.0, -1.0, 2.0, 64).unwrap();
        // F(x) = sinh x + x
        let x = 0.7;
        assert!((f.real(x) - (x.sinh() + x)).abs() < 1e-14);
        let d = f.eval(Dual::variable(Dual::variable(Dual::variable(x))));
        assert!((d.du.re.re - (x.cosh() + 1.0)).abs() < 1e-14);
        assert!((d.du.du.re - x.sinh()).abs() < 1e-14);
        assert!((d.du.du.du - x.cosh()).abs() < 1e-13);
        assert!(f.real(0.0).abs() < 1e-15);
    }

    #[test]
    fn inverse_antiderivative_round_trip() {
        use crate::dual::Dual;
        let inv = InverseAntiderivative::new(Antiderivative::new(Speed, 0.0, -1.0, 2.0, 64).unwrap());
        let s = 1.3;
        let u = inv.real(s);
        assert!((inv.forward().real(u) - s).abs() < 1e-14);
        // du/ds = 1/F′(u), d²u/ds² = −F″/F′³
        let d = inv.eval(Dual::variable(Dual::variable(s)));
        let (f1, f2) = (u.cosh() + 1.0, u.sinh());
        assert!((d.du.re - 1.0 / f1).abs() < 1e-14);
        assert!((d.du.du + f2 / (f1 * f1 * f1)).abs() < 1e-13);
    }

    #[test]
    fn constant_speed_inverse_is_linear() {
        let inv = InverseAntiderivative::new(Antiderivative::new(Constant(2.0), 0.0, 0.0, 1.0, 16).unwrap());
        assert!((inv.real(1.0) - 0.5).abs() < 1e-15);
        assert!((inv.real(-0.4) + 0.2).abs() < 1e-15);
    }

    fn cone_state(s: f64, a: f64, b: f64) -> FrameState {
        let (sh, ch) = ((s / b).sinh(), (s / b).cosh());
        FrameState {
            e: Vec3L::new(b * sh, b * ch, a),
            t: Vec3L::new(ch, sh, 0.0),
            g: Vec3L::new(a * sh, a * ch, -b),
            c: Vec3L::zero(),
        }
    }

    fn integrate_cone(steps: usize) -> FrameState {
        let h = 1.0 / steps as f64;
        let mut st = cone_state(0.0, 0.6, 0.8);
        for i in 0..steps {
            st = rk4_frame_step(&st, i as f64 * h, h, |_| (0.75, 0.0, 0.0)).unwrap();
        }
        st
    }

    #[test]
    fn zero_rates_keep_g_and_c_fixed() {
        let st = cone_state(0.0, 0.6, 0.8);
        let next = rk4_frame_step(&st, 0.0, 0.01, |_| (0.0, 0.0, 0.0)).unwrap();
        assert!((next.g - st.g).max_abs() < 1e-15);
        assert!((next.c - st.c).max_abs() < 1e-15);
        assert!((next.e - st.e).max_abs() > 1e-3);
    }

    #[test]
    fn cone_profile_matches_closed_form() {
        let st = integrate_cone(1000);
        let exact = cone_state(1.0, 0.6, 0.8);
        assert!((st.e - exact.e).max_abs() < 1e-9);
        assert!(st.orthonormality_residual() < 1e-12);
    }

    #[test]
    fn rk4_is_fourth_order() {
        let exact = cone_state(1.0, 0.6, 0.8);
        let err = |n| {
            let st = integrate_cone(n);
            (st.e - exact.e).max_abs().max((st.t - exact.t).max_abs())
        };
        let (e1, e2) = (err(20), err(40));
        let order = (e1 / e2).log2();
        assert!(order >= 3.8, "observed order {order}");
    }

    #[test]
    fn large_steps_are_rejected() {
        let st = cone_state(0.0, 0.6, 0.8);
        assert!(matches!(
            rk4_frame_step(&st, 0.0, 1.5, |_| (0.75, 0.0, 0.0)),
            Err(Error::StepSizeError { .. })
        ));
    }

    #[test]
    fn config_validation() {
        assert!(NumericsConfig::default().validate().is_ok());
        assert!(NumericsConfig { fd_step: 0.0, ..Default::default() }.validate().is_err());
        assert!(NumericsConfig { ode_steps_per_unit: 15, ..Default::default() }.validate().is_err());
        assert_eq!(NumericsConfig::finite_difference().tolerance_theorem, 1e-6);
    }
}
