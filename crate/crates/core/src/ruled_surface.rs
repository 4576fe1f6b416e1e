//! Ruled surfaces `φ(s, v) = c(s) + v e(s)` as curves on the dual unit
//! sphere: striction curve, Darboux frame, and the invariants γ, δ, Δ.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::curve::{scalar_derivative, CrossCurve, CurveFn, Differentiator};
use crate::dual::{dual_lorentz_dot, dual_norm, Dual, DualScalar, DualVec3};
use crate::error::{Error, Result};
use crate::lorentz::{det3, lorentz_cross, lorentz_dot, Vec3L};
use crate::numerics::{
    cumulative_integral, integrate, rk4_frame_step, Antiderivative, FrameState, InverseAntiderivative,
    NumericsConfig,
};
use crate::scalar::{Scalar, ScalarFn};

/// Speed below which the indicatrix is treated as stationary.
pub const DEGENERATE_SPEED: f64 = 1e-10;

/// Residual above which a computed frame is rejected.
pub const FRAME_RESIDUAL_LIMIT: f64 = 1e-6;

/// Distance of `|γ̄₁|` from 1 inside which the Darboux vector is null.
pub const NULL_DARBOUX_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum SurfaceKind {
    /// Spacelike ruling with a timelike indicatrix tangent.
    SpacelikeSurface,
    /// Timelike ruling with a spacelike indicatrix tangent.
    TimelikeSurface,
}

impl SurfaceKind {
    /// `⟨e, e⟩`.
    pub fn ruling_sign(self) -> f64 {
        match self {
            SurfaceKind::SpacelikeSurface => 1.0,
            SurfaceKind::TimelikeSurface => -1.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RuledSurfaceSpec<E, P> {
    pub indicatrix: E,
    /// Any directrix; the striction curve is solved from it.
    pub base_curve: P,
    pub domain: (f64, f64),
    pub samples: usize,
    pub kind: SurfaceKind,
    /// Explicit sample nodes overriding the uniform grid on `domain`.
    pub nodes: Option<Vec<f64>>,
}

impl<E: CurveFn, P: CurveFn> RuledSurfaceSpec<E, P> {
    pub fn new(indicatrix: E, base_curve: P, domain: (f64, f64), samples: usize, kind: SurfaceKind) -> Self {
        Self { indicatrix, base_curve, domain, samples, kind, nodes: None }
    }

    pub fn grid(&self) -> Vec<f64> {
        if let Some(nodes) = &self.nodes {
            return nodes.clone();
        }
        uniform_grid(self.domain.0, self.domain.1, self.samples)
    }

    /// Checks `⟨e, e⟩ = ±1` and the causal character of `e′` at every
    /// sample.
    pub fn validate(&self, cfg: &NumericsConfig) -> Result<()> {
        let (lo, hi) = self.domain;
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::InvalidSpec("domain must be a finite interval"));
        }
        if self.samples == 0 {
            return Err(Error::InvalidSpec("samples must be positive"));
        }
        let sign = self.kind.ruling_sign();
        let d = cfg.differentiator().of(&self.indicatrix);
        for u in self.grid() {
            let e = self.indicatrix.at(u);
            if !e.is_finite() {
                return Err(Error::NonFinite("indicatrix"));
            }
            if libm::fabs(lorentz_dot(&e, &e) - sign) > cfg.tolerance_construction {
                return Err(Error::InvalidSpec("ruling is not a unit vector of the declared kind"));
            }
            let ep = d.at(u);
            let q = lorentz_dot(&ep, &ep);
            let speed = libm::sqrt(libm::fabs(q));
            if speed < DEGENERATE_SPEED {
                return Err(Error::DegenerateIndicatrix { u, speed });
            }
            if q * sign > 0.0 {
                return Err(Error::InvalidSpec("indicatrix tangent has the wrong causal character"));
            }
        }
        Ok(())
    }
}

pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => {
            let last = (n - 1) as f64;
            (0..n).map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * (i as f64 / last) }).collect()
        }
    }
}

/// `u ↦ √|⟨e′(u), e′(u)⟩|`.
#[derive(Clone, Debug)]
pub struct Speed<E> {
    pub curve: E,
    pub diff: Differentiator,
}

impl<E: CurveFn> ScalarFn for Speed<E> {
    fn eval<S: Scalar>(&self, u: S) -> S {
        let d = self.diff.of(&self.curve).eval(u);
        d.dot(&d).abs().sqrt()
    }
}

/// Arc length `s(u) = ∫₀ᵘ ‖e′‖` and its inverse.
#[derive(Clone, Debug)]
pub struct ArcLengthMap<E> {
    inverse: InverseAntiderivative<Speed<E>>,
}

impl<E: CurveFn> ArcLengthMap<E> {
    pub fn arclength(&self, u: f64) -> f64 {
        self.inverse.forward().real(u)
    }

    pub fn parameter(&self, s: f64) -> f64 {
        self.inverse.real(s)
    }
}

/// A curve composed with `u(s)`; `None` marks an already unit-speed
/// indicatrix.
#[derive(Clone, Debug)]
pub struct Reparametrized<C, E> {
    pub curve: C,
    pub map: Option<Arc<ArcLengthMap<E>>>,
}

impl<C: CurveFn, E: CurveFn> CurveFn for Reparametrized<C, E> {
    fn eval<S: Scalar>(&self, s: S) -> Vec3L<S> {
        match &self.map {
            None => self.curve.eval(s),
            Some(m) => self.curve.eval(m.inverse.eval(s)),
        }
    }
}

impl<C, E: CurveFn> Reparametrized<C, E> {
    pub fn arclength(&self, u: f64) -> f64 {
        self.map.as_ref().map_or(u, |m| m.arclength(u))
    }

    pub fn parameter(&self, s: f64) -> f64 {
        self.map.as_ref().map_or(s, |m| m.parameter(s))
    }
}

pub type ArcLengthSpec<E, P> = RuledSurfaceSpec<Reparametrized<E, E>, Reparametrized<P, E>>;

/// Reparametrizes both curves by the arc length of the indicatrix.
///
/// Nodes of the result are the images of the original grid, so sample `i`
/// of either spec describes the same ruling.
pub fn arclength_reparametrize<E, P>(spec: &RuledSurfaceSpec<E, P>, cfg: &NumericsConfig) -> Result<ArcLengthSpec<E, P>>
where
    E: CurveFn + Clone,
    P: CurveFn + Clone,
{
    let grid = spec.grid();
    let speed = Speed { curve: spec.indicatrix.clone(), diff: cfg.differentiator() };
    let check = |u: f64| {
        let v = speed.eval(u);
        if !v.is_finite() {
            Err(Error::NonFinite("indicatrix speed"))
        } else if v < DEGENERATE_SPEED {
            Err(Error::DegenerateIndicatrix { u, speed: v })
        } else {
            Ok(v)
        }
    };
    let mut unit = true;
    for (i, &u) in grid.iter().enumerate() {
        unit &= libm::fabs(check(u)? - 1.0) < 1e-13;
        if let Some(&next) = grid.get(i + 1) {
            unit &= libm::fabs(check(0.5 * (u + next))? - 1.0) < 1e-13;
        }
    }
    let (lo, hi) = spec.domain;
    let map = if unit {
        None
    } else {
        let forward = Antiderivative::new(speed, 0.0, lo, hi, cfg.quadrature_intervals)?;
        Some(Arc::new(ArcLengthMap { inverse: InverseAntiderivative::new(forward) }))
    };
    let to_s = |u: f64| map.as_ref().map_or(u, |m| m.arclength(u));
    let nodes: Vec<f64> = grid.iter().map(|&u| to_s(u)).collect();
    let domain = (to_s(lo), to_s(hi));
    Ok(RuledSurfaceSpec {
        indicatrix: Reparametrized { curve: spec.indicatrix.clone(), map: map.clone() },
        base_curve: Reparametrized { curve: spec.base_curve.clone(), map },
        domain,
        samples: nodes.len(),
        kind: spec.kind,
        nodes: Some(nodes),
    })
}

/// `c = p + λe` with `λ = −⟨p′, e′⟩ / ⟨e′, e′⟩`, the unique point on each
/// ruling with `⟨c′, e′⟩ = 0`.
#[derive(Clone, Debug)]
pub struct Striction<E, P> {
    pub indicatrix: E,
    pub directrix: P,
    pub diff: Differentiator,
}

impl<E: CurveFn, P: CurveFn> CurveFn for Striction<E, P> {
    fn eval<S: Scalar>(&self, s: S) -> Vec3L<S> {
        let ep = self.diff.of(&self.indicatrix).eval(s);
        let pp = self.diff.of(&self.directrix).eval(s);
        let lambda = -(pp.dot(&ep) / ep.dot(&ep));
        self.directrix.eval(s) + self.indicatrix.eval(s).scale(lambda)
    }
}

pub fn striction_curve<E: CurveFn + Clone, P: CurveFn + Clone>(
    spec: &RuledSurfaceSpec<E, P>,
    cfg: &NumericsConfig,
) -> Striction<E, P> {
    Striction { indicatrix: spec.indicatrix.clone(), directrix: spec.base_curve.clone(), diff: cfg.differentiator() }
}

/// `t = e′ / ‖e′‖`.
#[derive(Clone, Debug)]
pub struct Tangent<E> {
    pub indicatrix: E,
    pub diff: Differentiator,
}

impl<E: CurveFn> CurveFn for Tangent<E> {
    fn eval<S: Scalar>(&self, s: S) -> Vec3L<S> {
        let d = self.diff.of(&self.indicatrix).eval(s);
        d.scale(d.dot(&d).abs().sqrt().recip())
    }
}

/// `g = −e × t`.
#[derive(Clone, Debug)]
pub struct Binormal<E> {
    pub indicatrix: E,
    pub diff: Differentiator,
}

impl<E: CurveFn> CurveFn for Binormal<E> {
    fn eval<S: Scalar>(&self, s: S) -> Vec3L<S> {
        let t = Tangent { indicatrix: &self.indicatrix, diff: self.diff }.eval(s);
        -self.indicatrix.eval(s).cross(&t)
    }
}

/// `u ↦ det(dc/du, e, t)`, the distribution parameter per unit of the
/// curve parameter; it equals Δ in arc length.
#[derive(Clone, Debug)]
pub struct DistributionDensity<E, C> {
    pub indicatrix: E,
    pub striction: C,
    pub diff: Differentiator,
}

impl<E: CurveFn, C: CurveFn> ScalarFn for DistributionDensity<E, C> {
    fn eval<S: Scalar>(&self, u: S) -> S {
        let cp = self.diff.of(&self.striction).eval(u);
        let t = Tangent { indicatrix: &self.indicatrix, diff: self.diff }.eval(u);
        det3(&cp, &self.indicatrix.eval(u), &t)
    }
}

/// `u ↦ s(u)`; the identity for unit-speed indicatrices.
#[derive(Clone, Debug)]
pub struct ArcLengthFn<E> {
    pub table: Option<Arc<Antiderivative<Speed<E>>>>,
}

impl<E: CurveFn> ScalarFn for ArcLengthFn<E> {
    fn eval<S: Scalar>(&self, u: S) -> S {
        match &self.table {
            None => u,
            Some(t) => t.eval(u),
        }
    }
}

/// Every real quantity of the moving frame at one parameter value.
/// Primes are arc-length derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalFrame {
    pub u: f64,
    pub s: f64,
    /// `ds/du`.
    pub speed: f64,
    pub e: Vec3L,
    pub t: Vec3L,
    pub g: Vec3L,
    pub e_prime: Vec3L,
    pub t_prime: Vec3L,
    pub g_prime: Vec3L,
    pub c: Vec3L,
    pub c_prime: Vec3L,
    pub gamma: f64,
    pub delta: f64,
    pub big_delta: f64,
}

impl LocalFrame {
    pub fn orthonormality_residual(&self, kind: SurfaceKind) -> f64 {
        let sign = kind.ruling_sign();
        let (e, t, g) = (&self.e, &self.t, &self.g);
        let g_from_cross = -lorentz_cross(e, t);
        [
            lorentz_dot(e, e) - sign,
            lorentz_dot(t, t) + sign,
            lorentz_dot(g, g) - 1.0,
            lorentz_dot(e, t),
            lorentz_dot(e, g),
            lorentz_dot(t, g),
            (g_from_cross - *g).max_abs(),
        ]
        .iter()
        .fold(0.0, |m, v| libm::fmax(m, libm::fabs(*v)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FrameSample {
    /// Arc length of the indicatrix.
    pub s: f64,
    /// Curve parameter of the sample.
    pub parameter: f64,
    pub e: Vec3L,
    pub t: Vec3L,
    pub g: Vec3L,
    pub gamma: f64,
    pub delta: f64,
    pub big_delta: f64,
    /// `∫₀ˢ Δ`.
    pub s_star: f64,
    pub gamma_dual: DualScalar,
    pub striction_point: Vec3L,
}

/// Residuals of the frame equations at one sample.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DarbouxResiduals {
    pub s: f64,
    /// `e′ − t`.
    pub e: f64,
    /// `t′ − (e + γg)`.
    pub t: f64,
    /// `g′ − γt` (spacelike) or `g′ + γt` (timelike).
    pub g: f64,
    pub orthonormality: f64,
    /// `⟨c′, e′⟩`.
    pub striction: f64,
}

/// Dual-level identities at one sample.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DualChecks {
    pub s: f64,
    /// `‖ẽ′‖`.
    pub dual_speed: DualScalar,
    /// `1 + εΔ` (spacelike) or `1 − εΔ` (timelike).
    pub dual_speed_expected: DualScalar,
    /// `−⟨g̃′, t̃⟩`.
    pub binormal_rate: DualScalar,
    /// `γ̄ ‖ẽ′‖`.
    pub binormal_rate_dual: DualScalar,
    /// `γ − εδ` (spacelike) or `γ + εδ` (timelike).
    pub binormal_rate_expected: DualScalar,
}

/// A validated surface with its striction curve and arc-length function.
///
/// Quantities are evaluated in the curve parameter `u`; arc-length
/// derivatives follow from `d/ds = (1/σ) d/du` with `σ = ‖e′(u)‖`, which
/// avoids composing every evaluation with the inverse map.
#[derive(Clone, Debug)]
pub struct PreparedSurface<E, P> {
    pub indicatrix: E,
    pub striction: Striction<E, P>,
    pub arclength: ArcLengthFn<E>,
    pub kind: SurfaceKind,
    /// Domain in the curve parameter.
    pub domain: (f64, f64),
    /// `(parameter, arc length)` of every sample.
    pub nodes: Vec<(f64, f64)>,
    pub cfg: NumericsConfig,
}

pub fn prepare<E, P>(spec: &RuledSurfaceSpec<E, P>, cfg: &NumericsConfig) -> Result<PreparedSurface<E, P>>
where
    E: CurveFn + Clone,
    P: CurveFn + Clone,
{
    cfg.validate()?;
    spec.validate(cfg)?;
    let arc = arclength_reparametrize(spec, cfg)?;
    let table = arc.indicatrix.map.as_ref().map(|m| Arc::new(m.inverse.forward().clone()));
    let striction = striction_curve(spec, cfg);
    let nodes = spec.grid().into_iter().zip(arc.grid()).collect();
    Ok(PreparedSurface {
        indicatrix: spec.indicatrix.clone(),
        striction,
        arclength: ArcLengthFn { table },
        kind: spec.kind,
        domain: spec.domain,
        nodes,
        cfg: *cfg,
    })
}

impl<E: CurveFn, P: CurveFn> PreparedSurface<E, P> {
    fn diff(&self) -> Differentiator {
        self.cfg.differentiator()
    }

    pub fn tangent(&self) -> Tangent<&E> {
        Tangent { indicatrix: &self.indicatrix, diff: self.diff() }
    }

    pub fn binormal(&self) -> Binormal<&E> {
        Binormal { indicatrix: &self.indicatrix, diff: self.diff() }
    }

    pub fn distribution_density(&self) -> DistributionDensity<&E, &Striction<E, P>> {
        DistributionDensity { indicatrix: &self.indicatrix, striction: &self.striction, diff: self.diff() }
    }

    pub fn speed(&self, u: f64) -> f64 {
        Speed { curve: &self.indicatrix, diff: self.diff() }.eval(u)
    }

    pub fn arclength(&self, u: f64) -> f64 {
        self.arclength.eval(u)
    }

    pub fn local_frame(&self, u: f64) -> LocalFrame {
        let d = self.diff();
        let tangent = self.tangent();
        let binormal = self.binormal();
        let e = self.indicatrix.at(u);
        let e_u = d.of(&self.indicatrix).at(u);
        let speed = libm::sqrt(libm::fabs(lorentz_dot(&e_u, &e_u)));
        let per_s = 1.0 / speed;
        let t = e_u * per_s;
        let g = -lorentz_cross(&e, &t);
        let g_prime = d.of(&binormal).at(u) * per_s;
        let c_prime = d.of(&self.striction).at(u) * per_s;
        LocalFrame {
            u,
            s: self.arclength(u),
            speed,
            e,
            t,
            g,
            e_prime: t,
            t_prime: d.of(&tangent).at(u) * per_s,
            g_prime,
            c: self.striction.at(u),
            c_prime,
            gamma: -lorentz_dot(&g_prime, &t),
            delta: lorentz_dot(&c_prime, &e),
            big_delta: det3(&c_prime, &e, &t),
        }
    }

    /// `γ̄` from the real invariants: `γ − ε(δ + γΔ)` for spacelike
    /// rulings, `γ + ε(δ + γΔ)` for timelike ones.
    pub fn gamma_dual(&self, f: &LocalFrame) -> DualScalar {
        Dual::new(f.gamma, -self.kind.ruling_sign() * (f.delta + f.gamma * f.big_delta))
    }

    fn sample(&self, s_star: f64, f: &LocalFrame) -> FrameSample {
        FrameSample {
            s: f.s,
            parameter: f.u,
            e: f.e,
            t: f.t,
            g: f.g,
            gamma: f.gamma,
            delta: f.delta,
            big_delta: f.big_delta,
            s_star,
            gamma_dual: self.gamma_dual(f),
            striction_point: f.c,
        }
    }

    /// `∫₀ˢ Δ` by composite quadrature up to the parameter `u`.
    pub fn s_star(&self, u: f64) -> Result<f64> {
        let density = self.distribution_density();
        integrate(|x| density.eval(x), 0.0, u, &self.cfg)
    }

    /// Frame sample at parameter `u`, off the sample grid.
    pub fn sample_at(&self, u: f64) -> Result<FrameSample> {
        let f = self.checked_frame(u)?;
        Ok(self.sample(self.s_star(u)?, &f))
    }

    fn checked_frame(&self, u: f64) -> Result<LocalFrame> {
        let f = self.local_frame(u);
        let residual = f.orthonormality_residual(self.kind);
        if !(residual <= FRAME_RESIDUAL_LIMIT) {
            return Err(Error::FrameDegeneracy { s: f.s, residual });
        }
        Ok(f)
    }

    pub fn darboux_residuals(&self, u: f64) -> DarbouxResiduals {
        let f = self.local_frame(u);
        let d = self.diff();
        let e_prime = d.of(&self.indicatrix).at(u) / f.speed;
        // g′ = −⟨t, t⟩ γ t for both kinds
        let g_rate = f.t * (-lorentz_dot(&f.t, &f.t) * f.gamma);
        DarbouxResiduals {
            s: f.s,
            e: (e_prime - f.t).max_abs(),
            t: (f.t_prime - (f.e + f.g * f.gamma)).max_abs(),
            g: (f.g_prime - g_rate).max_abs(),
            orthonormality: f.orthonormality_residual(self.kind),
            striction: lorentz_dot(&f.c_prime, &e_prime),
        }
    }

    /// `(ẽ, t̃, g̃)` with dual parts `c × ·`.
    pub fn dual_frame(&self, u: f64) -> (DualVec3, DualVec3, DualVec3) {
        let f = self.local_frame(u);
        lift_frame(&f)
    }

    pub fn dual_checks(&self, u: f64) -> Result<DualChecks> {
        let d = self.diff();
        let f = self.local_frame(u);
        let ruling_moment = CrossCurve(&self.striction, &self.indicatrix);
        let binormal = self.binormal();
        let binormal_moment = CrossCurve(&self.striction, &binormal);
        let e_tilde_prime = DualVec3::new(f.e_prime, d.of(&ruling_moment).at(u) / f.speed);
        let g_tilde_prime = DualVec3::new(f.g_prime, d.of(&binormal_moment).at(u) / f.speed);
        let t_tilde = DualVec3::new(f.t, lorentz_cross(&f.c, &f.t));
        let sign = self.kind.ruling_sign();
        let dual_speed = dual_norm(&e_tilde_prime)?;
        let binormal_rate = -dual_lorentz_dot(&g_tilde_prime, &t_tilde);
        Ok(DualChecks {
            s: f.s,
            dual_speed,
            dual_speed_expected: Dual::new(1.0, sign * f.big_delta),
            binormal_rate,
            binormal_rate_dual: self.gamma_dual(&f) * dual_speed,
            binormal_rate_expected: Dual::new(f.gamma, -sign * f.delta),
        })
    }

    /// Surface normals `φ_s × φ_v` along the ruling at `u`; returns the
    /// largest deviation from parallelism between any two of them.
    pub fn normal_variation(&self, u: f64, vs: &[f64]) -> f64 {
        let f = self.local_frame(u);
        let normals: Vec<Vec3L> = vs
            .iter()
            .map(|&v| {
                let n = lorentz_cross(&(f.c_prime + f.e_prime * v), &f.e);
                n / libm::fmax(n.max_abs(), f64::MIN_POSITIVE)
            })
            .collect();
        let mut worst: f64 = 0.0;
        for i in 0..normals.len() {
            for j in i + 1..normals.len() {
                worst = worst.max(lorentz_cross(&normals[i], &normals[j]).max_abs());
            }
        }
        worst
    }
}

/// Lifts a real frame to dual vectors with moments about its striction
/// point.
pub fn lift_frame(f: &LocalFrame) -> (DualVec3, DualVec3, DualVec3) {
    let lift = |v: Vec3L| DualVec3::new(v, lorentz_cross(&f.c, &v));
    (lift(f.e), lift(f.t), lift(f.g))
}

/// Frames at every node, plus the local frames they were built from.
pub fn darboux_frame_with_locals<E: CurveFn, P: CurveFn>(
    surface: &PreparedSurface<E, P>,
) -> Result<(Vec<FrameSample>, Vec<LocalFrame>)> {
    let frames = surface
        .nodes
        .iter()
        .map(|&(u, _)| surface.checked_frame(u))
        .collect::<Result<Vec<_>>>()?;
    let ss: Vec<f64> = surface.nodes.iter().map(|n| n.1).collect();
    let deltas: Vec<f64> = frames.iter().map(|f| f.big_delta).collect();
    let running = cumulative_integral(&ss, &deltas, surface.cfg.quadrature)?;
    let head = match surface.nodes.first() {
        Some(&(u0, _)) => surface.s_star(u0)?,
        None => 0.0,
    };
    let samples = frames.iter().zip(&running).map(|(f, r)| surface.sample(head + r, f)).collect();
    Ok((samples, frames))
}

pub fn darboux_frame<E: CurveFn, P: CurveFn>(surface: &PreparedSurface<E, P>) -> Result<Vec<FrameSample>> {
    darboux_frame_with_locals(surface).map(|r| r.0)
}

/// `s̄ = s + ε∫Δ` for spacelike rulings and `s − ε∫Δ` for timelike ones.
pub fn dual_arclength(sample: &FrameSample, kind: SurfaceKind) -> DualScalar {
    Dual::new(sample.s, kind.ruling_sign() * sample.s_star)
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DualCurvature {
    /// `R̄ = 1/√(1 + γ̄²)`.
    pub radius: DualScalar,
    /// `ρ̄` with `sin ρ̄ = R̄`, `cos ρ̄ = −γ̄ R̄`.
    pub rho: DualScalar,
    pub sin_rho: DualScalar,
    pub cos_rho: DualScalar,
    /// `d̃ = −γ̄ẽ + g̃`.
    pub darboux: DualVec3,
    pub darboux_unit: DualVec3,
}

fn dual_scale(v: &DualVec3, k: DualScalar) -> DualVec3 {
    v.scale(k)
}

/// `atan2` over dual scalars; inputs need not be normalized.
pub fn dual_atan2(y: DualScalar, x: DualScalar) -> DualScalar {
    let r2 = x.re * x.re + y.re * y.re;
    Dual::new(libm::atan2(y.re, x.re), (x.re * y.du - y.re * x.du) / r2)
}

pub fn dual_curvature_elements(gamma_dual: DualScalar, e: &DualVec3, g: &DualVec3) -> DualCurvature {
    let radius = (gamma_dual * gamma_dual + 1.0).sqrt().recip();
    let darboux = dual_scale(e, -gamma_dual) + *g;
    let cos_rho = -(gamma_dual * radius);
    DualCurvature {
        radius,
        rho: dual_atan2(radius, cos_rho),
        sin_rho: radius,
        cos_rho,
        darboux,
        darboux_unit: dual_scale(&darboux, radius),
    }
}

/// Curvature elements of a sample, using its frame and striction point.
pub fn sample_curvature(fs: &FrameSample) -> DualCurvature {
    let lift = |v: Vec3L| DualVec3::new(v, lorentz_cross(&fs.striction_point, &v));
    dual_curvature_elements(fs.gamma_dual, &lift(fs.e), &lift(fs.g))
}

/// Measures γ₁, δ₁, Δ₁ and γ̄₁ of a surface with timelike rulings.
pub fn timelike_invariants<E, P>(spec: &RuledSurfaceSpec<E, P>, cfg: &NumericsConfig) -> Result<Vec<FrameSample>>
where
    E: CurveFn + Clone,
    P: CurveFn + Clone,
{
    if spec.kind != SurfaceKind::TimelikeSurface {
        return Err(Error::InvalidSpec("timelike invariants need a timelike-surface spec"));
    }
    darboux_frame(&prepare(spec, cfg)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum RadiusBranch {
    /// `|γ̄₁| < 1`: timelike Darboux vector.
    Inside,
    /// `|γ̄₁| > 1`: spacelike Darboux vector.
    Outside,
}

/// `R̄₁ = 1/√|1 − γ̄₁²|`.
pub fn timelike_radius(gamma1_dual: DualScalar) -> Result<(DualScalar, RadiusBranch)> {
    let m = libm::fabs(gamma1_dual.re);
    if !m.is_finite() {
        return Err(Error::NonFinite("conical curvature"));
    }
    if libm::fabs(m - 1.0) <= NULL_DARBOUX_TOLERANCE {
        return Err(Error::NullDarboux(m));
    }
    let branch = if m < 1.0 { RadiusBranch::Inside } else { RadiusBranch::Outside };
    let q = -(gamma1_dual * gamma1_dual) + 1.0;
    Ok((q.abs().sqrt().recip(), branch))
}

/// A complete system of invariants with the initial position.
#[derive(Clone, Debug)]
pub struct InvariantProfile<G, D, B> {
    pub gamma: G,
    pub delta: D,
    pub big_delta: B,
    pub initial: FrameState,
}

impl<G: ScalarFn, D: ScalarFn, B: ScalarFn> InvariantProfile<G, D, B> {
    pub fn validate(&self, tol: f64) -> Result<()> {
        let f = &self.initial;
        if f.orthonormality_residual() > tol || (-lorentz_cross(&f.e, &f.t) - f.g).max_abs() > tol {
            return Err(Error::InvalidSpec("initial frame must be orthonormal with g = −e × t"));
        }
        if !f.c.is_finite() {
            return Err(Error::NonFinite("initial striction point"));
        }
        Ok(())
    }
}

/// Piecewise quintic Hermite curve matching value, first and second
/// derivative at every knot.
#[derive(Clone, Debug)]
pub struct HermiteCurve {
    knots: Arc<Vec<f64>>,
    jets: Arc<Vec<[Vec3L; 3]>>,
}

impl HermiteCurve {
    pub fn new(knots: Vec<f64>, jets: Vec<[Vec3L; 3]>) -> Result<Self> {
        if knots.is_empty() || knots.len() != jets.len() {
            return Err(Error::InvalidSpec("hermite curve needs matching non-empty knots and jets"));
        }
        if knots.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidSpec("hermite knots must increase"));
        }
        Ok(Self { knots: Arc::new(knots), jets: Arc::new(jets) })
    }
}

impl CurveFn for HermiteCurve {
    fn eval<S: Scalar>(&self, u: S) -> Vec3L<S> {
        let k = &self.knots;
        if k.len() == 1 {
            let [p, d1, d2] = self.jets[0];
            let x = u - k[0];
            return Vec3L::from_real(p) + Vec3L::from_real(d1).scale(x) + Vec3L::from_real(d2).scale(x * x * 0.5);
        }
        let r = u.value();
        let i = k.partition_point(|&x| x <= r).clamp(1, k.len() - 1) - 1;
        let h = k[i + 1] - k[i];
        let t = (u - k[i]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let t4 = t3 * t;
        let t5 = t4 * t;
        let h0 = -(t3 * 10.0) + t4 * 15.0 - t5 * 6.0 + 1.0;
        let h1 = t - t3 * 6.0 + t4 * 8.0 - t5 * 3.0;
        let h2 = (t2 - t3 * 3.0 + t4 * 3.0 - t5) * 0.5;
        let h3 = t3 * 10.0 - t4 * 15.0 + t5 * 6.0;
        let h4 = -(t3 * 4.0) + t4 * 7.0 - t5 * 3.0;
        let h5 = (t3 - t4 * 2.0 + t5) * 0.5;
        let [p0, m0, a0] = self.jets[i];
        let [p1, m1, a1] = self.jets[i + 1];
        let term = |v: Vec3L, w: S| Vec3L::from_real(v).scale(w);
        term(p0, h0) + term(m0 * h, h1) + term(a0 * (h * h), h2) + term(p1, h3) + term(m1 * h, h4) + term(a1 * (h * h), h5)
    }
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    /// Integrated frames at the requested nodes.
    pub states: Vec<(f64, FrameState)>,
    pub spec: RuledSurfaceSpec<HermiteCurve, HermiteCurve>,
}

/// Integrates `e′ = t, t′ = e + γg, g′ = γt, c′ = δe + Δg` across `s_grid`
/// and interpolates the result.
pub fn reconstruct_from_invariants<G, D, B>(
    profile: &InvariantProfile<G, D, B>,
    s_grid: &[f64],
    cfg: &NumericsConfig,
) -> Result<Reconstruction>
where
    G: ScalarFn,
    D: ScalarFn,
    B: ScalarFn,
{
    cfg.validate()?;
    profile.validate(cfg.tolerance_construction)?;
    if s_grid.is_empty() {
        return Err(Error::InvalidSpec("reconstruction grid is empty"));
    }
    if s_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidSpec("reconstruction grid must increase"));
    }
    let rates = |s: f64| (profile.gamma.eval(s), profile.delta.eval(s), profile.big_delta.eval(s));
    let diff = cfg.differentiator();
    let jets = |s: f64, st: &FrameState| {
        let (gamma, delta, big_delta) = rates(s);
        let dd = scalar_derivative(diff, &profile.delta, s);
        let bd = scalar_derivative(diff, &profile.big_delta, s);
        let e_jet = [st.e, st.t, st.e + st.g * gamma];
        let c_jet = [
            st.c,
            st.e * delta + st.g * big_delta,
            st.e * dd + st.t * (delta + big_delta * gamma) + st.g * bd,
        ];
        (e_jet, c_jet)
    };
    let mut state = profile.initial;
    let mut s = s_grid[0];
    let mut knots = alloc::vec![s];
    let (e0, c0) = jets(s, &state);
    let mut e_jets = alloc::vec![e0];
    let mut c_jets = alloc::vec![c0];
    let mut states = alloc::vec![(s, state)];
    for &target in &s_grid[1..] {
        let n = libm::ceil((target - s) * cfg.ode_steps_per_unit as f64).max(1.0) as usize;
        let h = (target - s) / n as f64;
        let start = s;
        for k in 0..n {
            let at = start + h * k as f64;
            state = rk4_frame_step(&state, at, h, rates)?;
            s = if k + 1 == n { target } else { start + h * (k + 1) as f64 };
            let (ej, cj) = jets(s, &state);
            knots.push(s);
            e_jets.push(ej);
            c_jets.push(cj);
        }
        states.push((s, state));
    }
    let indicatrix = HermiteCurve::new(knots.clone(), e_jets)?;
    let base_curve = HermiteCurve::new(knots, c_jets)?;
    let lo = s_grid[0];
    let hi = s_grid[s_grid.len() - 1];
    Ok(Reconstruction {
        states,
        spec: RuledSurfaceSpec {
            indicatrix,
            base_curve,
            domain: (lo, hi),
            samples: s_grid.len(),
            kind: SurfaceKind::SpacelikeSurface,
            nodes: Some(s_grid.to_vec()),
        },
    })
}

/// `e(s) = (b sinh(s/b), b cosh(s/b), a)` with `a² + b² = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConeIndicatrix {
    pub a: f64,
    pub b: f64,
}

impl ConeIndicatrix {
    pub fn new(a: f64, b: f64, tol: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || libm::fabs(a * a + b * b - 1.0) > tol {
            return Err(Error::InvalidSpec("catalog parameters need a² + b² = 1"));
        }
        if b == 0.0 {
            return Err(Error::InvalidSpec("catalog parameter b must be nonzero"));
        }
        Ok(Self { a, b })
    }
}

impl CurveFn for ConeIndicatrix {
    fn eval<S: Scalar>(&self, s: S) -> Vec3L<S> {
        let x = s / self.b;
        Vec3L::new(x.sinh() * self.b, x.cosh() * self.b, S::from_f64(self.a))
    }
}

/// Striction curve with `c′ = δ₀e + Δ₀g` over [`ConeIndicatrix`]; constant
/// for `δ₀ = Δ₀ = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HelicoidalBase {
    pub a: f64,
    pub b: f64,
    pub delta0: f64,
    pub big_delta0: f64,
    pub c0: Vec3L,
}

impl CurveFn for HelicoidalBase {
    fn eval<S: Scalar>(&self, s: S) -> Vec3L<S> {
        let (a, b) = (self.a, self.b);
        let x = s / b;
        let (ch, sh) = (x.cosh(), x.sinh());
        let along_e = Vec3L::new(ch * (b * b), sh * (b * b), s * a);
        let along_g = Vec3L::new(ch * (a * b), sh * (a * b), -(s * b));
        Vec3L::from_real(self.c0) + along_e.scale(S::from_f64(self.delta0)) + along_g.scale(S::from_f64(self.big_delta0))
    }
}

pub type CatalogSpec = RuledSurfaceSpec<ConeIndicatrix, HelicoidalBase>;

pub const DEFAULT_A: f64 = 0.6;
pub const DEFAULT_B: f64 = 0.8;
pub const DEFAULT_DELTA0: f64 = 0.2;
pub const DEFAULT_BIG_DELTA0: f64 = 0.1;

pub fn helicoidal(
    a: f64,
    b: f64,
    delta0: f64,
    big_delta0: f64,
    c0: Vec3L,
    domain: (f64, f64),
    samples: usize,
) -> Result<CatalogSpec> {
    let e = ConeIndicatrix::new(a, b, 1e-9)?;
    let base = HelicoidalBase { a, b, delta0, big_delta0, c0 };
    Ok(RuledSurfaceSpec::new(e, base, domain, samples, SurfaceKind::SpacelikeSurface))
}

pub fn cone(a: f64, b: f64, c0: Vec3L, domain: (f64, f64), samples: usize) -> Result<CatalogSpec> {
    helicoidal(a, b, 0.0, 0.0, c0, domain, samples)
}

pub fn default_cone(domain: (f64, f64), samples: usize) -> CatalogSpec {
    cone(DEFAULT_A, DEFAULT_B, Vec3L::zero(), domain, samples).expect("default catalog is valid")
}

pub fn default_helicoidal(domain: (f64, f64), samples: usize) -> CatalogSpec {
    helicoidal(DEFAULT_A, DEFAULT_B, DEFAULT_DELTA0, DEFAULT_BIG_DELTA0, Vec3L::zero(), domain, samples)
        .expect("default catalog is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::ConstantCurve;
    use crate::scalar::Constant;

    fn cfg() -> NumericsConfig {
        NumericsConfig::default()
    }

    #[derive(Clone)]
    struct FastCone;
    impl CurveFn for FastCone {
        fn eval<S: Scalar>(&self, u: S) -> Vec3L<S> {
            ConeIndicatrix { a: 0.6, b: 0.8 }.eval(u * 2.0)
        }
    }

    #[test]
    fn unit_speed_indicatrix_is_left_alone() {
        let spec = default_cone((0.0, 1.0), 11);
        let arc = arclength_reparametrize(&spec, &cfg()).unwrap();
        assert!(arc.indicatrix.map.is_none());
        for (u, s) in spec.grid().iter().zip(arc.grid()) {
            assert!((u - s).abs() < 1e-10);
        }
    }

    #[test]
    fn doubled_speed_doubles_arclength() {
        let spec = RuledSurfaceSpec::new(FastCone, ConstantCurve(Vec3L::zero()), (0.0, 1.0), 11, SurfaceKind::SpacelikeSurface);
        let arc = arclength_reparametrize(&spec, &cfg()).unwrap();
        for (u, s) in spec.grid().iter().zip(arc.grid()) {
            assert!((2.0 * u - s).abs() < 1e-12);
        }
        let d = cfg().differentiator().of(&arc.indicatrix);
        for s in arc.grid() {
            let v = d.at(s);
            assert!((lorentz_dot(&v, &v) + 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn stationary_indicatrix_is_rejected() {
        let spec = RuledSurfaceSpec::new(
            ConstantCurve(Vec3L::E2),
            ConstantCurve(Vec3L::zero()),
            (0.0, 1.0),
            5,
            SurfaceKind::SpacelikeSurface,
        );
        assert!(matches!(arclength_reparametrize(&spec, &cfg()), Err(Error::DegenerateIndicatrix { .. })));
        assert!(matches!(prepare(&spec, &cfg()), Err(Error::DegenerateIndicatrix { .. })));
    }

    #[derive(Clone)]
    struct Warped<C>(C);
    impl<C: CurveFn> CurveFn for Warped<C> {
        fn eval<S: Scalar>(&self, u: S) -> Vec3L<S> {
            self.0.eval(u + u * u * 0.3)
        }
    }

    #[test]
    fn chain_rule_frames_match_composition() {
        let base = default_helicoidal((0.0, 1.3), 9);
        let warped = RuledSurfaceSpec::new(
            Warped(base.indicatrix),
            Warped(base.base_curve),
            (0.0, 1.0),
            9,
            SurfaceKind::SpacelikeSurface,
        );
        let direct = prepare(&warped, &cfg()).unwrap();
        let reference = prepare(&base, &cfg()).unwrap();
        let arc = arclength_reparametrize(&warped, &cfg()).unwrap();
        let composed = prepare(&arc, &cfg()).unwrap();
        for u in warped.grid() {
            let s = u + 0.3 * u * u;
            let f = direct.local_frame(u);
            assert!((f.s - s).abs() < 1e-12, "{} vs {s}", f.s);
            let r = reference.local_frame(s);
            let c = composed.local_frame(s);
            for other in [&r, &c] {
                assert!((f.e - other.e).max_abs() < 1e-12);
                assert!((f.t - other.t).max_abs() < 1e-11);
                assert!((f.g - other.g).max_abs() < 1e-11);
                assert!((f.gamma - other.gamma).abs() < 1e-9);
                assert!((f.delta - other.delta).abs() < 1e-9);
                assert!((f.big_delta - other.big_delta).abs() < 1e-9);
            }
            assert!((direct.s_star(u).unwrap() - reference.s_star(s).unwrap()).abs() < 1e-10);
        }
    }

    #[derive(Clone)]
    struct SlidingDirectrix;
    impl CurveFn for SlidingDirectrix {
        fn eval<S: Scalar>(&self, s: S) -> Vec3L<S> {
            // c₀ + f(s) e(s) with c₀ = (1, 2, 3), f = s² + sin s
            let e = ConeIndicatrix { a: 0.6, b: 0.8 }.eval(s);
            Vec3L::new(S::from_f64(1.0), S::from_f64(2.0), S::from_f64(3.0)) + e.scale(s * s + s.sin())
        }
    }

    #[test]
    fn cone_striction_collapses_to_vertex() {
        let spec = RuledSurfaceSpec::new(
            ConeIndicatrix { a: 0.6, b: 0.8 },
            SlidingDirectrix,
            (0.0, 1.0),
            5,
            SurfaceKind::SpacelikeSurface,
        );
        let c = striction_curve(&spec, &cfg());
        for s in spec.grid() {
            assert!((c.at(s) - Vec3L::new(1.0, 2.0, 3.0)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn helicoidal_base_is_its_own_striction() {
        let spec = default_helicoidal((0.0, 1.0), 7);
        let c = striction_curve(&spec, &cfg());
        for s in spec.grid() {
            assert!((c.at(s) - spec.base_curve.at(s)).max_abs() < 1e-12);
        }
    }

    #[test]
    fn cone_frame_at_origin() {
        let p = prepare(&default_cone((0.0, 1.0), 3), &cfg()).unwrap();
        let f = &darboux_frame(&p).unwrap()[0];
        assert!((f.e - Vec3L::new(0.0, 0.8, 0.6)).max_abs() < 1e-15);
        assert!((f.t - Vec3L::new(1.0, 0.0, 0.0)).max_abs() < 1e-15);
        assert!((f.g - Vec3L::new(0.0, 0.6, -0.8)).max_abs() < 1e-15);
        assert!((f.gamma - 0.75).abs() < 1e-14);
        assert!(f.delta.abs() < 1e-15 && f.big_delta.abs() < 1e-15);
        assert!((f.gamma_dual.re - 0.75).abs() < 1e-14 && f.gamma_dual.du.abs() < 1e-14);
    }

    #[test]
    fn helicoidal_invariants_are_constant() {
        let p = prepare(&default_helicoidal((0.0, 1.0), 11), &cfg()).unwrap();
        for f in darboux_frame(&p).unwrap() {
            assert!((f.delta - 0.2).abs() < 1e-12);
            assert!((f.big_delta - 0.1).abs() < 1e-12);
            assert!((f.gamma_dual.du + 0.275).abs() < 1e-12);
            assert!((f.s_star - 0.1 * f.s).abs() < 1e-12);
        }
    }

    #[test]
    fn dual_arclength_examples() {
        let p = prepare(&default_cone((0.0, 2.0), 3), &cfg()).unwrap();
        let last = *darboux_frame(&p).unwrap().last().unwrap();
        assert_eq!(dual_arclength(&last, SurfaceKind::SpacelikeSurface).re, 2.0);
        assert!(dual_arclength(&last, SurfaceKind::SpacelikeSurface).du.abs() < 1e-15);
        let p = prepare(&default_helicoidal((0.0, 0.5), 3), &cfg()).unwrap();
        let last = *darboux_frame(&p).unwrap().last().unwrap();
        assert!((dual_arclength(&last, SurfaceKind::SpacelikeSurface).du - 0.05).abs() < 1e-14);
        let trap = NumericsConfig { quadrature: crate::numerics::Quadrature::Trapezoid, ..cfg() };
        let p2 = prepare(&default_helicoidal((0.0, 0.5), 3), &trap).unwrap();
        let last2 = *darboux_frame(&p2).unwrap().last().unwrap();
        assert!((last.s_star - last2.s_star).abs() < 1e-10);
    }

    #[test]
    fn darboux_and_dual_identities_hold() {
        for spec in [default_cone((-0.5, 1.0), 9), default_helicoidal((-0.5, 1.0), 9)] {
            let p = prepare(&spec, &cfg()).unwrap();
            for &(_, s) in &p.nodes {
                let r = p.darboux_residuals(s);
                assert!(r.e < 1e-12 && r.t < 1e-12 && r.g < 1e-12, "{r:?}");
                assert!(r.striction.abs() < 1e-12);
                let d = p.dual_checks(s).unwrap();
                assert!((d.dual_speed.re - d.dual_speed_expected.re).abs() < 1e-12);
                assert!((d.dual_speed.du - d.dual_speed_expected.du).abs() < 1e-12);
                assert!((d.binormal_rate.re - d.binormal_rate_expected.re).abs() < 1e-12);
                assert!((d.binormal_rate.du - d.binormal_rate_expected.du).abs() < 1e-12);
                assert!((d.binormal_rate_dual.du - d.binormal_rate_expected.du).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn normals_detect_developability() {
        let vs = [-1.0, 0.0, 0.5, 2.0];
        let cone = prepare(&default_cone((0.1, 1.0), 3), &cfg()).unwrap();
        let helix = prepare(&default_helicoidal((0.1, 1.0), 3), &cfg()).unwrap();
        assert!(cone.normal_variation(0.5, &vs) < 1e-12);
        assert!(helix.normal_variation(0.5, &vs) > 1e-2);
    }

    #[test]
    fn curvature_elements_examples() {
        let e = DualVec3::real(Vec3L::new(0.0, 0.8, 0.6));
        let g = DualVec3::real(Vec3L::new(0.0, 0.6, -0.8));
        let flat = dual_curvature_elements(Dual::new(0.0, 0.0), &e, &g);
        assert_eq!(flat.radius, Dual::new(1.0, 0.0));
        assert!(flat.darboux_unit.max_abs_diff(&g) < 1e-15);
        let k = dual_curvature_elements(Dual::new(0.75, 0.0), &e, &g);
        assert!((k.radius.re - 0.8).abs() < 1e-15);
        assert!((k.sin_rho.re - 0.8).abs() < 1e-15 && (k.cos_rho.re + 0.6).abs() < 1e-15);
        let want = DualVec3::real(e.re * -0.6 + g.re * 0.8);
        assert!(k.darboux_unit.max_abs_diff(&want) < 1e-15);
        assert!(lorentz_dot(&k.darboux_unit.re, &k.darboux_unit.re) > 0.0);
        assert!((libm::sin(k.rho.re) - 0.8).abs() < 1e-15);
        let h = dual_curvature_elements(Dual::new(0.75, -0.275), &e, &g);
        assert!((h.radius.du - 0.75 * 0.275 / 1.953125).abs() < 1e-15);
        let rr = h.radius * h.radius * (Dual::new(0.75, -0.275) * Dual::new(0.75, -0.275) + 1.0);
        assert!((rr.re - 1.0).abs() < 1e-14 && rr.du.abs() < 1e-14);
        // sin ρ̄ = R̄ lifts consistently
        assert!((h.rho.du * libm::cos(h.rho.re) - h.radius.du).abs() < 1e-14);
    }

    #[test]
    fn timelike_radius_examples() {
        assert_eq!(timelike_radius(Dual::new(0.0, 0.0)).unwrap(), (Dual::new(1.0, 0.0), RadiusBranch::Inside));
        let (r, b) = timelike_radius(Dual::new(-libm::tanh(0.5), 0.03932)).unwrap();
        assert_eq!(b, RadiusBranch::Inside);
        assert!((r.re - 1.12763).abs() < 1e-5 && (r.du + 0.02605).abs() < 1e-5);
        assert!(matches!(timelike_radius(Dual::new(-0.99999999999, 0.0)), Err(Error::NullDarboux(_))));
        assert_eq!(timelike_radius(Dual::new(2.0, 0.0)).unwrap().1, RadiusBranch::Outside);
    }

    fn cone_initial() -> FrameState {
        FrameState {
            e: Vec3L::new(0.0, 0.8, 0.6),
            t: Vec3L::E1,
            g: Vec3L::new(0.0, 0.6, -0.8),
            c: Vec3L::zero(),
        }
    }

    #[test]
    fn hermite_reproduces_quintics() {
        let f = |x: f64| Vec3L::new(x.powi(5) - x, 2.0 * x * x, 1.0);
        let d1 = |x: f64| Vec3L::new(5.0 * x.powi(4) - 1.0, 4.0 * x, 0.0);
        let d2 = |x: f64| Vec3L::new(20.0 * x.powi(3), 4.0, 0.0);
        let knots = alloc::vec![0.0, 0.4, 1.0];
        let jets = knots.iter().map(|&x| [f(x), d1(x), d2(x)]).collect();
        let h = HermiteCurve::new(knots, jets).unwrap();
        for x in [0.1, 0.37, 0.8, 0.99] {
            assert!((h.at(x) - f(x)).max_abs() < 1e-14);
            assert!((Differentiator::DualAd.of(&h).at(x) - d1(x)).max_abs() < 1e-13);
        }
    }

    #[test]
    fn single_node_reconstruction_is_the_seed() {
        let profile = InvariantProfile { gamma: Constant(0.75), delta: Constant(0.0), big_delta: Constant(0.0), initial: cone_initial() };
        let r = reconstruct_from_invariants(&profile, &[0.0], &cfg()).unwrap();
        assert_eq!(r.states.len(), 1);
        assert_eq!(r.states[0].1, cone_initial());
    }

    #[test]
    fn bad_seed_is_rejected() {
        let mut seed = cone_initial();
        seed.g = -seed.g;
        let profile = InvariantProfile { gamma: Constant(0.75), delta: Constant(0.0), big_delta: Constant(0.0), initial: seed };
        assert!(reconstruct_from_invariants(&profile, &[0.0, 1.0], &cfg()).is_err());
    }
}
