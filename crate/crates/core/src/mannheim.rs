//! Mannheim offsets of spacelike ruled surfaces: construction, predicted
//! invariants, and measured-versus-predicted verification.
//!
//! The offset of a surface with frame `{e, t, g}` has the timelike ruling
//! `e₁ = sinh θ e + cosh θ t` and the striction curve `c₁ = c + θ* g`, with
//! `θ = −s + c` and `θ* = −∫₀ˢ Δ + c*`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::curve::{CurveFn, Differentiator};
use crate::dual::{dual_angle_between, dual_lorentz_dot, AngleKind, Dual, DualAngle, DualScalar, DualVec3};
use crate::error::{Error, Result};
use crate::lorentz::{lorentz_dot, Vec3L};
use crate::numerics::{Antiderivative, NumericsConfig};
use crate::ruled_surface::{
    darboux_frame_with_locals, lift_frame, prepare, timelike_radius, ArcLengthFn, Binormal, DistributionDensity,
    FrameSample, LocalFrame, PreparedSurface, RadiusBranch, RuledSurfaceSpec, Striction, SurfaceKind, Tangent,
};
use crate::scalar::{Scalar, ScalarFn};

/// `|γ cosh θ|` below which the offset indicatrix stalls.
pub const DEGENERATE_OFFSET_RATE: f64 = 1e-10;

/// `|γ|` below which the closed forms divide by zero.
pub const ZERO_CONICAL_CURVATURE: f64 = 1e-10;

/// `|θ|` below which `coth θ` is not evaluated.
pub const COTH_SINGULARITY: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MannheimParams {
    /// Offset-angle constant.
    pub c: f64,
    /// Offset-distance constant.
    pub c_star: f64,
}

impl MannheimParams {
    pub fn new(c: f64, c_star: f64) -> Result<Self> {
        if !c.is_finite() || !c_star.is_finite() {
            return Err(Error::NonFinite("offset constants"));
        }
        Ok(Self { c, c_star })
    }
}

/// Offset angle θ and offset distance θ*.
pub type OffsetAngle = DualAngle;

/// Where the striction point of the offset is placed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum StrictionOffset {
    /// `c₁ = c + θ* g`.
    #[default]
    Binormal,
    /// `c₁ = c + θ* t`; does not produce a Mannheim pair.
    Tangent,
}

pub fn offset_angles(frames: &[FrameSample], params: MannheimParams) -> Vec<OffsetAngle> {
    frames.iter().map(|f| DualAngle::new(params.c - f.s, params.c_star - f.s_star)).collect()
}

pub type BaseIndicatrix<E> = E;
pub type BaseStriction<E, P> = Striction<E, P>;

/// `u ↦ sinh θ e + cosh θ t` with `θ = c − s(u)`, over the curve parameter
/// of the base surface.
#[derive(Clone, Debug)]
pub struct OffsetRuling<E> {
    pub indicatrix: E,
    pub arclength: ArcLengthFn<E>,
    pub c: f64,
    pub diff: Differentiator,
}

impl<E: CurveFn> OffsetRuling<E> {
    pub fn offset_angle<S: Scalar>(&self, u: S) -> S {
        -self.arclength.eval(u) + self.c
    }
}

impl<E: CurveFn> CurveFn for OffsetRuling<E> {
    fn eval<S: Scalar>(&self, u: S) -> Vec3L<S> {
        let theta = self.offset_angle(u);
        let t = Tangent { indicatrix: &self.indicatrix, diff: self.diff }.eval(u);
        self.indicatrix.eval(u).scale(theta.sinh()) + t.scale(theta.cosh())
    }
}

/// `u ↦ c + θ* g` (or `c + θ* t`) with `θ* = c* − ∫₀ˢ Δ`.
#[derive(Clone, Debug)]
pub struct OffsetStriction<E, C> {
    pub indicatrix: E,
    pub striction: C,
    pub distance: Arc<Antiderivative<DistributionDensity<E, C>>>,
    pub c_star: f64,
    pub direction: StrictionOffset,
    pub diff: Differentiator,
}

impl<E: CurveFn, C: CurveFn> OffsetStriction<E, C> {
    pub fn offset_distance<S: Scalar>(&self, u: S) -> S {
        -self.distance.eval(u) + self.c_star
    }
}

impl<E: CurveFn, C: CurveFn> CurveFn for OffsetStriction<E, C> {
    fn eval<S: Scalar>(&self, u: S) -> Vec3L<S> {
        let axis = match self.direction {
            StrictionOffset::Binormal => Binormal { indicatrix: &self.indicatrix, diff: self.diff }.eval(u),
            StrictionOffset::Tangent => Tangent { indicatrix: &self.indicatrix, diff: self.diff }.eval(u),
        };
        self.striction.eval(u) + axis.scale(self.offset_distance(u))
    }
}

pub type OffsetSpec<E, P> =
    RuledSurfaceSpec<OffsetRuling<BaseIndicatrix<E>>, OffsetStriction<BaseIndicatrix<E>, BaseStriction<E, P>>>;
pub type OffsetSurface<E, P> =
    PreparedSurface<OffsetRuling<BaseIndicatrix<E>>, OffsetStriction<BaseIndicatrix<E>, BaseStriction<E, P>>>;

/// Builds the offset over the parameter grid of `base`.
pub fn construct_offset<E, P>(
    base: &PreparedSurface<E, P>,
    frames: &[FrameSample],
    params: MannheimParams,
    direction: StrictionOffset,
) -> Result<OffsetSpec<E, P>>
where
    E: CurveFn + Clone,
    P: CurveFn + Clone,
{
    if base.kind != SurfaceKind::SpacelikeSurface {
        return Err(Error::InvalidSpec("offsets are built from spacelike-surface specs"));
    }
    for f in frames {
        let rate = f.gamma * libm::cosh(params.c - f.s);
        if !(libm::fabs(rate) >= DEGENERATE_OFFSET_RATE) {
            return Err(Error::DegenerateOffset { s: f.s, rate });
        }
    }
    let diff = base.cfg.differentiator();
    let density =
        DistributionDensity { indicatrix: base.indicatrix.clone(), striction: base.striction.clone(), diff };
    let (lo, hi) = base.domain;
    let distance = Antiderivative::new(density, 0.0, lo, hi, base.cfg.quadrature_intervals)?;
    let nodes: Vec<f64> = base.nodes.iter().map(|n| n.0).collect();
    Ok(RuledSurfaceSpec {
        indicatrix: OffsetRuling {
            indicatrix: base.indicatrix.clone(),
            arclength: base.arclength.clone(),
            c: params.c,
            diff,
        },
        base_curve: OffsetStriction {
            indicatrix: base.indicatrix.clone(),
            striction: base.striction.clone(),
            distance: Arc::new(distance),
            c_star: params.c_star,
            direction,
            diff,
        },
        domain: base.domain,
        samples: nodes.len(),
        kind: SurfaceKind::TimelikeSurface,
        nodes: Some(nodes),
    })
}

/// Invariants of the offset, either predicted or measured.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InvariantRecord {
    /// `ds₁/ds`.
    pub arc_rate: f64,
    /// `(ds ds₁* − ds* ds₁)/ds²`.
    pub arc_rate_dual: f64,
    pub big_delta: f64,
    pub delta: f64,
    pub gamma: f64,
    pub gamma_dual: DualScalar,
    pub radius: DualScalar,
}

/// Closed-form invariants of the offset from the base invariants and θ̄.
pub fn predicted_invariants(gamma: f64, delta: f64, big_delta: f64, angle: OffsetAngle) -> Result<InvariantRecord> {
    if !(libm::fabs(gamma) >= ZERO_CONICAL_CURVATURE) {
        return Err(Error::ZeroConicalCurvature { s: f64::NAN });
    }
    let (theta, theta_star) = (angle.theta, angle.theta_star);
    let (sh, ch, th) = (libm::sinh(theta), libm::cosh(theta), libm::tanh(theta));
    let ratio = delta / gamma;
    Ok(InvariantRecord {
        arc_rate: gamma * ch,
        arc_rate_dual: theta_star * gamma * sh - (delta + gamma * big_delta) * ch,
        big_delta: ratio - theta_star * th,
        delta: ratio * th - theta_star,
        gamma: -th,
        gamma_dual: -angle.tanh(),
        radius: angle.cosh(),
    })
}

/// Checks `R̄₁ = cosh θ̄` and `|R₁*| = |θ*| sinh|θ|`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RadiusCheck {
    pub radius: DualScalar,
    pub branch: RadiusBranch,
    pub real: f64,
    pub dual: f64,
    pub dual_magnitude: f64,
}

pub fn radius_relations_check(gamma1_dual: DualScalar, angle: OffsetAngle) -> Result<RadiusCheck> {
    let (radius, branch) = timelike_radius(gamma1_dual)?;
    let expected = angle.cosh();
    let magnitude = libm::fabs(angle.theta_star) * libm::sinh(libm::fabs(angle.theta));
    Ok(RadiusCheck {
        radius,
        branch,
        real: libm::fabs(radius.re - expected.re),
        dual: libm::fabs(radius.du - expected.du),
        dual_magnitude: libm::fabs(libm::fabs(radius.du) - magnitude),
    })
}

/// Absolute differences between measured and predicted records plus the
/// structural checks.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ResidualRecord {
    pub arc_rate: f64,
    pub arc_rate_dual: f64,
    pub big_delta: f64,
    pub delta: f64,
    pub gamma: f64,
    pub gamma_dual_re: f64,
    pub gamma_dual_du: f64,
    pub radius_re: f64,
    pub radius_du: f64,
    pub radius_dual_magnitude: f64,
    /// `t̃₁ − g̃`, real and dual parts.
    pub mannheim: f64,
    /// The nine real entries of the frame relation.
    pub frame_matrix: f64,
    /// The same relation over dual vectors with `θ̄`.
    pub dual_frame_matrix: f64,
    /// `δ₁ + γ₁Δ₁ + θ* sech²θ` from measured values.
    pub dual_identity: f64,
    /// `dθ/ds + 1`; zero at the grid ends where it is not evaluated.
    pub angle_rate: f64,
    /// `θ̄` extracted from `⟨ẽ, ẽ₁⟩` against the construction.
    pub extracted_angle: f64,
}

impl ResidualRecord {
    pub const NAMES: [&'static str; 16] = [
        "arc_rate",
        "arc_rate_dual",
        "big_delta",
        "delta",
        "gamma",
        "gamma_dual_re",
        "gamma_dual_du",
        "radius_re",
        "radius_du",
        "radius_dual_magnitude",
        "mannheim",
        "frame_matrix",
        "dual_frame_matrix",
        "dual_identity",
        "angle_rate",
        "extracted_angle",
    ];

    pub fn values(&self) -> [f64; 16] {
        [
            self.arc_rate,
            self.arc_rate_dual,
            self.big_delta,
            self.delta,
            self.gamma,
            self.gamma_dual_re,
            self.gamma_dual_du,
            self.radius_re,
            self.radius_du,
            self.radius_dual_magnitude,
            self.mannheim,
            self.frame_matrix,
            self.dual_frame_matrix,
            self.dual_identity,
            self.angle_rate,
            self.extracted_angle,
        ]
    }

    /// Tolerance each field is held to, relative to the theorem tolerance.
    /// The Mannheim condition is an exact identity and keeps the tighter
    /// construction tolerance when given.
    pub fn tolerance_of(name: &str, theorem: f64) -> f64 {
        match name {
            "mannheim" => theorem.min(1e-8),
            _ => theorem,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OffsetRow {
    pub s: f64,
    /// Arc length of the offset indicatrix.
    pub s1: f64,
    pub theta: f64,
    pub theta_star: f64,
    pub base_gamma: f64,
    pub base_delta: f64,
    pub base_big_delta: f64,
    pub predicted: InvariantRecord,
    pub measured: InvariantRecord,
    pub residuals: ResidualRecord,
    pub extracted_angle: DualAngle,
    pub coth_singular: bool,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DevelopabilityReport {
    pub max_abs_big_delta: f64,
    pub max_offset_distance_variation: f64,
    /// `max|Δ| < tol`.
    pub base_developable: bool,
    /// `max|θ* − c*| < tol`.
    pub offset_distance_constant: bool,
    /// Indices with `|Δ₁| < tol`.
    pub offset_locus: Vec<usize>,
    /// Indices with `|θ* − (δ/γ) coth θ| < tol`.
    pub corollary_locus: Vec<usize>,
    /// Indices where `coth θ` was not evaluated.
    pub coth_singular: Vec<usize>,
    /// Zeros of the measured `Δ₁(s)`.
    pub measured_roots: Vec<f64>,
    /// Zeros of `θ*(s) − (δ/γ) coth θ(s)`.
    pub predicted_roots: Vec<f64>,
    /// Largest distance between paired roots; `None` if the counts differ.
    pub root_mismatch: Option<f64>,
}

impl DevelopabilityReport {
    /// The two sides of each equivalence agree, away from `θ = 0`.
    pub fn consistent(&self) -> bool {
        let trimmed: Vec<usize> =
            self.offset_locus.iter().copied().filter(|i| !self.coth_singular.contains(i)).collect();
        self.base_developable == self.offset_distance_constant && trimmed == self.corollary_locus
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OffsetReport {
    pub params: MannheimParams,
    pub direction: StrictionOffset,
    pub rows: Vec<OffsetRow>,
    pub developability: DevelopabilityReport,
}

impl OffsetReport {
    /// Largest value of every residual field, in [`ResidualRecord::NAMES`]
    /// order.
    pub fn max_residuals(&self) -> [f64; 16] {
        let mut out = [0.0; 16];
        for row in &self.rows {
            for (m, v) in out.iter_mut().zip(row.residuals.values()) {
                *m = libm::fmax(*m, v);
            }
        }
        out
    }

    pub fn within(&self, theorem_tolerance: f64) -> bool {
        self.max_residuals()
            .iter()
            .zip(ResidualRecord::NAMES)
            .all(|(v, n)| *v < ResidualRecord::tolerance_of(n, theorem_tolerance))
    }
}

/// A base surface together with its constructed and measured offset.
pub struct MannheimPair<E, P> {
    pub base: PreparedSurface<E, P>,
    pub frames: Vec<FrameSample>,
    pub locals: Vec<LocalFrame>,
    pub angles: Vec<OffsetAngle>,
    pub offset_spec: OffsetSpec<E, P>,
    pub offset: OffsetSurface<E, P>,
    pub offset_frames: Vec<FrameSample>,
    pub offset_locals: Vec<LocalFrame>,
    pub params: MannheimParams,
}

pub fn build_pair<E, P>(
    base_spec: &RuledSurfaceSpec<E, P>,
    params: MannheimParams,
    direction: StrictionOffset,
    cfg: &NumericsConfig,
) -> Result<MannheimPair<E, P>>
where
    E: CurveFn + Clone,
    P: CurveFn + Clone,
{
    let base = prepare(base_spec, cfg)?;
    let (frames, locals) = darboux_frame_with_locals(&base)?;
    let angles = offset_angles(&frames, params);
    let offset_spec = construct_offset(&base, &frames, params, direction)?;
    let offset = prepare(&offset_spec, cfg)?;
    let (offset_frames, offset_locals) = darboux_frame_with_locals(&offset)?;
    Ok(MannheimPair { base, frames, locals, angles, offset_spec, offset, offset_frames, offset_locals, params })
}

fn frame_coefficients(rows: [Vec3L; 3], cols: [Vec3L; 3]) -> [[f64; 3]; 3] {
    let mut m = [[0.0; 3]; 3];
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            m[i][j] = lorentz_dot(r, c) / lorentz_dot(c, c);
        }
    }
    m
}

fn dual_frame_coefficients(rows: [DualVec3; 3], cols: [DualVec3; 3]) -> [[DualScalar; 3]; 3] {
    let mut m = [[Dual::new(0.0, 0.0); 3]; 3];
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            m[i][j] = dual_lorentz_dot(r, c) / dual_lorentz_dot(c, c);
        }
    }
    m
}

fn frame_relation<S: Scalar>(theta: S) -> [[S; 3]; 3] {
    let (z, o) = (S::zero(), S::one());
    [[theta.sinh(), theta.cosh(), z], [z, z, o], [theta.cosh(), theta.sinh(), z]]
}

impl<E, P> MannheimPair<E, P>
where
    E: CurveFn + Clone,
    P: CurveFn + Clone,
{
    /// Measures and predicts the offset invariants at sample `i`.
    pub fn row(&self, i: usize) -> Result<OffsetRow> {
        let f = &self.frames[i];
        let f1 = &self.offset_frames[i];
        let angle = self.angles[i];
        let s = f.s;
        let predicted = predicted_invariants(f.gamma, f.delta, f.big_delta, angle).map_err(|e| match e {
            Error::ZeroConicalCurvature { .. } => Error::ZeroConicalCurvature { s },
            other => other,
        })?;
        let arc_rate = self.offset_locals[i].speed / self.locals[i].speed;
        let radius_check = radius_relations_check(f1.gamma_dual, angle)?;
        let measured = InvariantRecord {
            arc_rate,
            arc_rate_dual: -(f1.big_delta + f.big_delta) * arc_rate,
            big_delta: f1.big_delta,
            delta: f1.delta,
            gamma: f1.gamma,
            gamma_dual: f1.gamma_dual,
            radius: radius_check.radius,
        };

        let (e, t, g) = lift_frame(&self.locals[i]);
        let (e1, t1, g1) = lift_frame(&self.offset_locals[i]);
        let real = frame_coefficients([e1.re, t1.re, g1.re], [e.re, t.re, g.re]);
        let dual = dual_frame_coefficients([e1, t1, g1], [e, t, g]);
        let want_real = frame_relation(angle.theta);
        let want_dual = frame_relation(angle.as_dual());
        let mut frame_matrix: f64 = 0.0;
        let mut dual_frame_matrix: f64 = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                frame_matrix = frame_matrix.max(libm::fabs(real[a][b] - want_real[a][b]));
                let d = dual[a][b] - want_dual[a][b];
                dual_frame_matrix = dual_frame_matrix.max(libm::fabs(d.re)).max(libm::fabs(d.du));
            }
        }
        let extracted = dual_angle_between(&e, &e1, AngleKind::Timelike)?;
        let sech = 1.0 / libm::cosh(angle.theta);
        let abs = |x: f64| libm::fabs(x);
        let residuals = ResidualRecord {
            arc_rate: abs(measured.arc_rate - predicted.arc_rate),
            arc_rate_dual: abs(measured.arc_rate_dual - predicted.arc_rate_dual),
            big_delta: abs(measured.big_delta - predicted.big_delta),
            delta: abs(measured.delta - predicted.delta),
            gamma: abs(measured.gamma - predicted.gamma),
            gamma_dual_re: abs(measured.gamma_dual.re - predicted.gamma_dual.re),
            gamma_dual_du: abs(measured.gamma_dual.du - predicted.gamma_dual.du),
            radius_re: radius_check.real,
            radius_du: radius_check.dual,
            radius_dual_magnitude: radius_check.dual_magnitude,
            mannheim: t1.max_abs_diff(&g),
            frame_matrix,
            dual_frame_matrix,
            dual_identity: abs(f1.delta + f1.gamma * f1.big_delta + angle.theta_star * sech * sech),
            angle_rate: 0.0,
            extracted_angle: abs(extracted.theta - angle.theta).max(abs(extracted.theta_star - angle.theta_star)),
        };
        Ok(OffsetRow {
            s,
            s1: f1.s,
            theta: angle.theta,
            theta_star: angle.theta_star,
            base_gamma: f.gamma,
            base_delta: f.delta,
            base_big_delta: f.big_delta,
            predicted,
            measured,
            residuals,
            extracted_angle: extracted,
            coth_singular: abs(angle.theta) < COTH_SINGULARITY,
        })
    }

    /// Measured `Δ₁` of the offset at base parameter `u`.
    pub fn measured_big_delta1(&self, u: f64) -> f64 {
        self.offset.local_frame(u).big_delta
    }

    /// `θ* − (δ/γ) coth θ` at base parameter `u`.
    pub fn corollary_residual(&self, u: f64) -> f64 {
        let f = self.base.local_frame(u);
        let theta = self.offset_spec.indicatrix.offset_angle(u);
        let theta_star = self.offset_spec.base_curve.offset_distance(u);
        theta_star - f.delta / f.gamma / libm::tanh(theta)
    }
}

/// Zeros of `f` between consecutive grid points where it changes sign,
/// refined by bisection. Points where `skip` holds break the scan.
fn bracketed_roots<F: Fn(f64) -> f64>(grid: &[f64], values: &[f64], skip: &[bool], f: F) -> Vec<f64> {
    let mut roots = Vec::new();
    for i in 1..grid.len() {
        if skip[i - 1] || skip[i] {
            continue;
        }
        let (fa, fb) = (values[i - 1], values[i]);
        if fa == 0.0 {
            roots.push(grid[i - 1]);
            continue;
        }
        if fa * fb > 0.0 {
            continue;
        }
        let (mut a, mut b, mut va) = (grid[i - 1], grid[i], fa);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let vm = f(m);
            if vm == 0.0 {
                a = m;
                b = m;
                break;
            }
            if va * vm < 0.0 {
                b = m;
            } else {
                a = m;
                va = vm;
            }
        }
        roots.push(0.5 * (a + b));
    }
    if let (Some(&last), Some(&v)) = (grid.last(), values.last()) {
        if v == 0.0 && !skip[grid.len() - 1] {
            roots.push(last);
        }
    }
    roots
}

/// Both developability equivalences: a developable base has constant
/// offset distance, and the offset is developable exactly where the
/// corollary relation between θ* and θ holds.
pub fn developability_check<E, P>(pair: &MannheimPair<E, P>, rows: &[OffsetRow], tol: f64) -> DevelopabilityReport
where
    E: CurveFn + Clone,
    P: CurveFn + Clone,
{
    let max_abs_big_delta = pair.frames.iter().fold(0.0, |m: f64, f| m.max(libm::fabs(f.big_delta)));
    let max_offset_distance_variation =
        pair.angles.iter().fold(0.0, |m: f64, a| m.max(libm::fabs(a.theta_star - pair.params.c_star)));
    let singular: Vec<bool> = rows.iter().map(|r| r.coth_singular).collect();
    let coth_singular = (0..rows.len()).filter(|&i| singular[i]).collect();
    let offset_locus = (0..rows.len()).filter(|&i| libm::fabs(rows[i].measured.big_delta) < tol).collect();
    let corollary: Vec<f64> = rows
        .iter()
        .map(|r| if r.coth_singular { f64::NAN } else { r.theta_star - r.base_delta / r.base_gamma / libm::tanh(r.theta) })
        .collect();
    let corollary_locus = (0..rows.len()).filter(|&i| !singular[i] && libm::fabs(corollary[i]) < tol).collect();
    // roots are bracketed in the curve parameter and reported as arc length
    let grid: Vec<f64> = pair.frames.iter().map(|f| f.parameter).collect();
    let measured: Vec<f64> = rows.iter().map(|r| r.measured.big_delta).collect();
    let to_s = |roots: Vec<f64>| -> Vec<f64> { roots.into_iter().map(|u| pair.base.arclength(u)).collect() };
    let measured_roots = to_s(bracketed_roots(&grid, &measured, &singular, |u| pair.measured_big_delta1(u)));
    let predicted_roots = to_s(bracketed_roots(&grid, &corollary, &singular, |u| pair.corollary_residual(u)));
    let root_mismatch = (measured_roots.len() == predicted_roots.len())
        .then(|| measured_roots.iter().zip(&predicted_roots).fold(0.0, |m: f64, (a, b)| m.max(libm::fabs(a - b))));
    DevelopabilityReport {
        max_abs_big_delta,
        max_offset_distance_variation,
        base_developable: max_abs_big_delta < tol,
        offset_distance_constant: max_offset_distance_variation < tol,
        offset_locus,
        corollary_locus,
        coth_singular,
        measured_roots,
        predicted_roots,
        root_mismatch,
    }
}

/// Builds the offset of `base_spec`, measures it with the timelike-ruling
/// pipeline and compares against the closed forms.
pub fn verify_offset<E, P>(
    base_spec: &RuledSurfaceSpec<E, P>,
    params: MannheimParams,
    direction: StrictionOffset,
    cfg: &NumericsConfig,
) -> Result<OffsetReport>
where
    E: CurveFn + Clone,
    P: CurveFn + Clone,
{
    let pair = build_pair(base_spec, params, direction, cfg)?;
    let mut rows = (0..pair.frames.len()).map(|i| pair.row(i)).collect::<Result<Vec<_>>>()?;
    // dθ/ds from the extracted angles by central differences
    for i in 1..rows.len().saturating_sub(1) {
        let ds = rows[i + 1].s - rows[i - 1].s;
        let rate = (rows[i + 1].extracted_angle.theta - rows[i - 1].extracted_angle.theta) / ds;
        rows[i].residuals.angle_rate = libm::fabs(rate + 1.0);
    }
    let developability = developability_check(&pair, &rows, cfg.tolerance_theorem);
    Ok(OffsetReport { params, direction, rows, developability })
}
