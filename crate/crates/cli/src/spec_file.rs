//! JSON input files: surface specs, invariant profiles and study inputs.

use std::path::Path;
use std::sync::Arc;

use mannheim_core::numerics::FrameState;
use mannheim_core::ruled_surface::{
    cone, helicoidal, CatalogSpec, RuledSurfaceSpec, SurfaceKind, DEFAULT_A, DEFAULT_B, DEFAULT_BIG_DELTA0,
    DEFAULT_DELTA0,
};
use mannheim_core::{CurveFn, Vec3L};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::expr::{parse, ExprCurve, ExprFn};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Catalog {
    Cone,
    Helicoidal,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogParams {
    #[serde(default = "default_a")]
    pub a: f64,
    #[serde(default = "default_b")]
    pub b: f64,
    pub delta0: Option<f64>,
    #[serde(rename = "Delta0")]
    pub big_delta0: Option<f64>,
    #[serde(default)]
    pub c0: [f64; 3],
}

fn default_a() -> f64 {
    DEFAULT_A
}

fn default_b() -> f64 {
    DEFAULT_B
}

impl Default for CatalogParams {
    fn default() -> Self {
        Self { a: DEFAULT_A, b: DEFAULT_B, delta0: None, big_delta0: None, c0: [0.0; 3] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Domain {
    pub s_min: f64,
    pub s_max: f64,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RulingKind {
    /// Spacelike rulings with a timelike indicatrix tangent.
    #[default]
    Spacelike,
    Timelike,
}

impl From<RulingKind> for SurfaceKind {
    fn from(k: RulingKind) -> Self {
        match k {
            RulingKind::Spacelike => SurfaceKind::SpacelikeSurface,
            RulingKind::Timelike => SurfaceKind::TimelikeSurface,
        }
    }
}

/// Closed-form `e(u)` and `c(u)`, one expression per coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomCurves {
    pub e: [String; 3],
    pub c: [String; 3],
    #[serde(default = "default_var")]
    pub variable: String,
    #[serde(default)]
    pub kind: RulingKind,
}

fn default_var() -> String {
    "u".to_string()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceSpecFile {
    pub catalog: Catalog,
    #[serde(default)]
    pub params: CatalogParams,
    pub domain: Domain,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub custom: Option<CustomCurves>,
}

pub type CustomSpec = RuledSurfaceSpec<ExprCurve, ExprCurve>;

/// A validated surface of either concrete type.
#[derive(Debug, Clone)]
pub enum LoadedSurface {
    Catalog(CatalogSpec),
    Custom(CustomSpec),
}

/// Runs one generic computation on whichever surface type was loaded.
pub trait SurfaceVisitor {
    type Output;
    fn visit<E, P>(self, spec: &RuledSurfaceSpec<E, P>) -> Self::Output
    where
        E: CurveFn + Clone,
        P: CurveFn + Clone;
}

impl LoadedSurface {
    pub fn accept<V: SurfaceVisitor>(&self, v: V) -> V::Output {
        match self {
            LoadedSurface::Catalog(s) => v.visit(s),
            LoadedSurface::Custom(s) => v.visit(s),
        }
    }

    pub fn kind(&self) -> SurfaceKind {
        match self {
            LoadedSurface::Catalog(s) => s.kind,
            LoadedSurface::Custom(s) => s.kind,
        }
    }
}

impl Domain {
    pub fn validate(&self, min_samples: usize) -> CliResult<()> {
        if !self.s_min.is_finite() || !self.s_max.is_finite() {
            return Err(CliError::spec("domain bounds must be finite"));
        }
        if min_samples >= 2 && !(self.s_min < self.s_max) {
            return Err(CliError::spec("domain needs s_min < s_max"));
        }
        if self.s_min > self.s_max {
            return Err(CliError::spec("domain needs s_min <= s_max"));
        }
        if self.samples < min_samples {
            return Err(CliError::spec(format!("domain needs at least {min_samples} samples")));
        }
        Ok(())
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::spec(format!("{}: {e}", path.display())))
}

impl SurfaceSpecFile {
    pub fn read(path: &Path) -> CliResult<Self> {
        read_json(path)
    }

    pub fn with_samples(mut self, samples: Option<usize>) -> Self {
        if let Some(n) = samples {
            self.domain.samples = n;
        }
        self
    }

    pub fn load(&self) -> CliResult<LoadedSurface> {
        self.domain.validate(3)?;
        let d = (self.domain.s_min, self.domain.s_max);
        let n = self.domain.samples;
        let p = &self.params;
        let c0 = Vec3L::from_array(p.c0);
        match self.catalog {
            Catalog::Cone => {
                if p.delta0.unwrap_or(0.0) != 0.0 || p.big_delta0.unwrap_or(0.0) != 0.0 {
                    return Err(CliError::spec("the cone catalog has delta0 = Delta0 = 0"));
                }
                Ok(LoadedSurface::Catalog(cone(p.a, p.b, c0, d, n)?))
            }
            Catalog::Helicoidal => {
                let delta0 = p.delta0.unwrap_or(DEFAULT_DELTA0);
                let big_delta0 = p.big_delta0.unwrap_or(DEFAULT_BIG_DELTA0);
                Ok(LoadedSurface::Catalog(helicoidal(p.a, p.b, delta0, big_delta0, c0, d, n)?))
            }
            Catalog::Custom => {
                let c = self.custom.as_ref().ok_or_else(|| CliError::spec("custom catalog needs a 'custom' entry"))?;
                let e = ExprCurve::parse(&c.e, &c.variable)?;
                let base = ExprCurve::parse(&c.c, &c.variable)?;
                Ok(LoadedSurface::Custom(RuledSurfaceSpec::new(e, base, d, n, c.kind.into())))
            }
        }
    }
}

/// An invariant given as a constant or an expression in `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InvariantValue {
    Constant(f64),
    Expression(String),
}

impl InvariantValue {
    pub fn compile(&self) -> CliResult<ExprFn> {
        let e = match self {
            InvariantValue::Constant(v) => crate::expr::Expr::Num(*v),
            InvariantValue::Expression(s) => parse(s, "s")?,
        };
        Ok(ExprFn(Arc::new(e)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameSeed {
    pub e: [f64; 3],
    pub t: [f64; 3],
    pub g: [f64; 3],
    pub c: [f64; 3],
}

impl Default for FrameSeed {
    /// The frame of the default cone at `s = 0`.
    fn default() -> Self {
        Self { e: [0.0, 0.8, 0.6], t: [1.0, 0.0, 0.0], g: [0.0, 0.6, -0.8], c: [0.0; 3] }
    }
}

impl From<FrameSeed> for FrameState {
    fn from(s: FrameSeed) -> Self {
        FrameState {
            e: Vec3L::from_array(s.e),
            t: Vec3L::from_array(s.t),
            g: Vec3L::from_array(s.g),
            c: Vec3L::from_array(s.c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileFile {
    pub gamma: InvariantValue,
    pub delta: InvariantValue,
    #[serde(rename = "Delta")]
    pub big_delta: InvariantValue,
    #[serde(default)]
    pub seed: FrameSeed,
    pub domain: Domain,
}

/// Either side of the line/dual-vector correspondence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StudyInput {
    Line { point: [f64; 3], dir: [f64; 3] },
    Dual { a: [f64; 3], a_star: [f64; 3] },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(json: &str) -> SurfaceSpecFile {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn catalog_defaults() {
        let s = spec(r#"{"catalog":"helicoidal","domain":{"s_min":0,"s_max":1,"samples":5}}"#);
        match s.load().unwrap() {
            LoadedSurface::Catalog(c) => {
                assert_eq!(c.base_curve.delta0, 0.2);
                assert_eq!(c.base_curve.big_delta0, 0.1);
            }
            LoadedSurface::Custom(_) => panic!(),
        }
    }

    #[test]
    fn invalid_specs() {
        let few = spec(r#"{"catalog":"cone","domain":{"s_min":0,"s_max":1,"samples":2}}"#);
        assert!(few.load().is_err());
        let bad = spec(r#"{"catalog":"cone","params":{"a":0.6,"b":0.7},"domain":{"s_min":0,"s_max":1,"samples":3}}"#);
        assert!(bad.load().is_err());
        let flat = spec(r#"{"catalog":"cone","domain":{"s_min":1,"s_max":1,"samples":3}}"#);
        assert!(flat.load().is_err());
        let custom = spec(r#"{"catalog":"custom","domain":{"s_min":0,"s_max":1,"samples":3}}"#);
        assert!(custom.load().is_err());
        assert!(serde_json::from_str::<SurfaceSpecFile>(r#"{"catalog":"disk","domain":{"s_min":0,"s_max":1,"samples":3}}"#).is_err());
    }

    #[test]
    fn study_inputs_are_distinguished() {
        let l: StudyInput = serde_json::from_str(r#"{"point":[0,0,0],"dir":[0,1,0]}"#).unwrap();
        assert!(matches!(l, StudyInput::Line { .. }));
        let d: StudyInput = serde_json::from_str(r#"{"a":[0,1,0],"a_star":[0,0,0]}"#).unwrap();
        assert!(matches!(d, StudyInput::Dual { .. }));
    }

    #[test]
    fn profile_values() {
        let p: ProfileFile = serde_json::from_str(
            r#"{"gamma":0.75,"delta":"0.2 * cos(s)","Delta":0,"domain":{"s_min":0,"s_max":1,"samples":3}}"#,
        )
        .unwrap();
        use mannheim_core::ScalarFn;
        assert_eq!(p.gamma.compile().unwrap().eval(3.0), 0.75);
        assert_eq!(p.delta.compile().unwrap().eval(0.0), 0.2);
        assert_eq!(p.seed, FrameSeed::default());
    }
}
