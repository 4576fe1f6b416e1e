//! The subcommands, usable as library calls.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use mannheim_core::line::{dual_to_line, line_to_dual, OrientedLine};
use mannheim_core::mannheim::{build_pair, verify_offset, MannheimParams, StrictionOffset};
use mannheim_core::numerics::{DerivativeMode, NumericsConfig, Quadrature};
use mannheim_core::ruled_surface::{
    darboux_frame, prepare, reconstruct_from_invariants, sample_curvature, timelike_invariants, timelike_radius,
    uniform_grid, FrameSample, InvariantProfile, RuledSurfaceSpec, SurfaceKind,
};
use mannheim_core::{CurveFn, DualScalar, DualVec3, ScalarFn, Vec3L};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::output::{write_frames, write_obj, write_offset_rows, MeshObject};
use crate::report::ReportFile;
use crate::spec_file::{LoadedSurface, ProfileFile, StudyInput, SurfaceSpecFile, SurfaceVisitor};

/// Overrides of the numerical defaults taken from the command line.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct NumericsFlags {
    pub quadrature: Option<Quadrature>,
    pub derivative_mode: Option<DerivativeMode>,
    pub fd_step: Option<f64>,
    pub tolerance: Option<f64>,
}

impl NumericsFlags {
    /// Central differences default to the looser theorem tolerance unless
    /// one is given.
    pub fn config(&self) -> CliResult<NumericsConfig> {
        let mut cfg = match self.derivative_mode {
            Some(DerivativeMode::CentralFd) => NumericsConfig::finite_difference(),
            _ => NumericsConfig::default(),
        };
        if let Some(q) = self.quadrature {
            cfg.quadrature = q;
        }
        if let Some(h) = self.fd_step {
            cfg.fd_step = h;
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0) || !t.is_finite() {
                return Err(CliError::spec("tolerance must be positive"));
            }
            cfg.tolerance_theorem = t;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    use std::io::Write;
    let mut w = create(path)?;
    w.write_all(text.as_bytes()).and_then(|_| w.flush()).map_err(|e| CliError::io(path, e))
}

fn radii(frames: &[FrameSample], kind: SurfaceKind) -> CliResult<Vec<DualScalar>> {
    frames
        .iter()
        .map(|f| match kind {
            SurfaceKind::SpacelikeSurface => Ok(sample_curvature(f).radius),
            SurfaceKind::TimelikeSurface => Ok(timelike_radius(f.gamma_dual)?.0),
        })
        .collect()
}

struct Frames<'a>(&'a NumericsConfig);

impl SurfaceVisitor for Frames<'_> {
    type Output = CliResult<Vec<FrameSample>>;
    fn visit<E: CurveFn + Clone, P: CurveFn + Clone>(self, spec: &RuledSurfaceSpec<E, P>) -> Self::Output {
        Ok(match spec.kind {
            SurfaceKind::SpacelikeSurface => darboux_frame(&prepare(spec, self.0)?)?,
            SurfaceKind::TimelikeSurface => timelike_invariants(spec, self.0)?,
        })
    }
}

/// Frame samples of the surface, written as CSV to `out`.
pub fn cmd_frames(spec: &SurfaceSpecFile, cfg: &NumericsConfig, out: &Path) -> CliResult<Vec<FrameSample>> {
    let surface = spec.load()?;
    let frames = surface.accept(Frames(cfg))?;
    let r = radii(&frames, surface.kind())?;
    write_frames(create(out)?, &frames, &r)?;
    Ok(frames)
}

/// Paths written by [`cmd_offset`].
#[derive(Debug, Clone, PartialEq)]
pub struct OffsetOutput {
    pub report: ReportFile,
    pub json: PathBuf,
    pub csv: PathBuf,
}

impl OffsetOutput {
    /// The tolerance verdict as a result.
    pub fn verdict(&self) -> CliResult<()> {
        if self.report.verdicts.within_tolerance {
            Ok(())
        } else {
            Err(CliError::tolerance(format!(
                "residuals over tolerance: {}",
                self.report.verdicts.failing.join(", ")
            )))
        }
    }
}

struct Offset<'a>(MannheimParams, &'a NumericsConfig);

impl SurfaceVisitor for Offset<'_> {
    type Output = CliResult<mannheim_core::mannheim::OffsetReport>;
    fn visit<E: CurveFn + Clone, P: CurveFn + Clone>(self, spec: &RuledSurfaceSpec<E, P>) -> Self::Output {
        Ok(verify_offset(spec, self.0, StrictionOffset::Binormal, self.1)?)
    }
}

/// Builds and verifies the Mannheim offset. The JSON report goes to `out`
/// with extension `json` and the row table next to it with extension `csv`.
pub fn cmd_offset(
    spec: &SurfaceSpecFile,
    params: MannheimParams,
    cfg: &NumericsConfig,
    out: &Path,
) -> CliResult<OffsetOutput> {
    let surface = spec.load()?;
    let report = surface.accept(Offset(params, cfg))?;
    let file = ReportFile::new(spec.clone(), *cfg, report);
    let json = out.with_extension("json");
    let csv = out.with_extension("csv");
    write_text(&json, &file.to_json())?;
    write_offset_rows(create(&csv)?, &file.rows)?;
    Ok(OffsetOutput { report: file, json, csv })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshOptions {
    pub v_range: (f64, f64),
    pub v_samples: usize,
    /// Adds the offset surface as a second object.
    pub offset: Option<MannheimParams>,
}

struct Mesh<'a>(MeshOptions, &'a NumericsConfig);

fn grid_object<A: CurveFn, B: CurveFn>(name: &str, c: &A, e: &B, us: &[f64], vs: &[f64]) -> MeshObject {
    let mut vertices = Vec::with_capacity(us.len() * vs.len());
    for &u in us {
        let (c, e) = (c.at(u), e.at(u));
        vertices.extend(vs.iter().map(|&v| c + e * v));
    }
    MeshObject { name: name.to_string(), rows: us.len(), cols: vs.len(), vertices }
}

impl SurfaceVisitor for Mesh<'_> {
    type Output = CliResult<Vec<MeshObject>>;
    fn visit<E: CurveFn + Clone, P: CurveFn + Clone>(self, spec: &RuledSurfaceSpec<E, P>) -> Self::Output {
        let (opts, cfg) = (self.0, self.1);
        let vs = uniform_grid(opts.v_range.0, opts.v_range.1, opts.v_samples);
        let us = spec.grid();
        let base = prepare(spec, cfg)?;
        let mut objects = vec![grid_object("base", &base.striction, &base.indicatrix, &us, &vs)];
        if let Some(params) = opts.offset {
            let pair = build_pair(spec, params, StrictionOffset::Binormal, cfg)?;
            objects.push(grid_object("offset", &pair.offset.striction, &pair.offset.indicatrix, &us, &vs));
        }
        Ok(objects)
    }
}

/// Samples `c(s) + v e(s)` on the spec grid times `v_samples` values of
/// `v`, row-major in `s`, and writes an OBJ file.
pub fn cmd_mesh(spec: &SurfaceSpecFile, opts: MeshOptions, cfg: &NumericsConfig, out: &Path) -> CliResult<Vec<MeshObject>> {
    let (lo, hi) = opts.v_range;
    if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
        return Err(CliError::spec("v range needs v_min < v_max"));
    }
    if opts.v_samples < 2 {
        return Err(CliError::spec("v samples must be at least 2"));
    }
    let surface: LoadedSurface = spec.load()?;
    let objects = surface.accept(Mesh(opts, cfg))?;
    write_obj(create(out)?, &objects).map_err(|e| CliError::io(out, e))?;
    Ok(objects)
}

/// Profile in versus profile re-measured from the reconstructed surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionResiduals {
    pub samples: usize,
    pub gamma: f64,
    pub delta: f64,
    #[serde(rename = "Delta")]
    pub big_delta: f64,
    /// Largest distance of a striction point from the first one.
    pub striction_drift: f64,
    pub tolerance: f64,
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructOutput {
    pub frames: Vec<FrameSample>,
    pub residuals: ReconstructionResiduals,
    pub csv: PathBuf,
    pub json: PathBuf,
}

/// Integrates the profile, re-measures the result and writes the frames as
/// CSV to `out` and the residuals as JSON next to it.
pub fn cmd_reconstruct(profile: &ProfileFile, cfg: &NumericsConfig, out: &Path) -> CliResult<ReconstructOutput> {
    profile.domain.validate(1)?;
    let d = profile.domain;
    let grid = if d.s_min == d.s_max { vec![d.s_min] } else { uniform_grid(d.s_min, d.s_max, d.samples.max(2)) };
    let p = InvariantProfile {
        gamma: profile.gamma.compile()?,
        delta: profile.delta.compile()?,
        big_delta: profile.big_delta.compile()?,
        initial: profile.seed.into(),
    };
    let rec = reconstruct_from_invariants(&p, &grid, cfg)?;
    let frames = if grid.len() == 1 {
        // a single node has nothing to differentiate across; report the seed
        let st = rec.states[0].1;
        let s = grid[0];
        let (gamma, delta, big_delta) = (p.gamma.eval(s), p.delta.eval(s), p.big_delta.eval(s));
        vec![FrameSample {
            s,
            parameter: s,
            e: st.e,
            t: st.t,
            g: st.g,
            gamma,
            delta,
            big_delta,
            s_star: 0.0,
            gamma_dual: DualScalar::new(gamma, -(delta + gamma * big_delta)),
            striction_point: st.c,
        }]
    } else {
        darboux_frame(&prepare(&rec.spec, cfg)?)?
    };
    let err = |f: &dyn Fn(&FrameSample) -> f64| frames.iter().fold(0.0f64, |m, x| m.max(f(x).abs()));
    let c0 = frames[0].striction_point;
    let residuals = {
        let gamma = err(&|f| f.gamma - p.gamma.eval(f.s));
        let delta = err(&|f| f.delta - p.delta.eval(f.s));
        let big_delta = err(&|f| f.big_delta - p.big_delta.eval(f.s));
        let striction_drift = frames.iter().fold(0.0f64, |m, f| m.max((f.striction_point - c0).max_abs()));
        let tolerance = cfg.tolerance_theorem;
        ReconstructionResiduals {
            samples: frames.len(),
            gamma,
            delta,
            big_delta,
            striction_drift,
            tolerance,
            within_tolerance: gamma.max(delta).max(big_delta) < tolerance,
        }
    };
    let r = radii(&frames, SurfaceKind::SpacelikeSurface)?;
    write_frames(create(out)?, &frames, &r)?;
    let json = out.with_extension("json");
    write_text(&json, &serde_json::to_string_pretty(&residuals).expect("finite residuals"))?;
    Ok(ReconstructOutput { frames, residuals, csv: out.to_path_buf(), json })
}

/// Moment error below which a round trip counts as exact.
pub const STUDY_ROUND_TRIP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StudyOutput {
    Dual { a: [f64; 3], a_star: [f64; 3], round_trip: bool },
    Line { point: [f64; 3], dir: [f64; 3], round_trip: bool },
}

/// Converts a line to its dual vector or back, and checks the round trip.
pub fn cmd_study(input: &StudyInput) -> CliResult<StudyOutput> {
    match *input {
        StudyInput::Line { point, dir } => {
            let d = line_to_dual(&OrientedLine::new(Vec3L::from_array(point), Vec3L::from_array(dir)))?;
            let again = line_to_dual(&dual_to_line(&d)?)?;
            let round_trip = again.max_abs_diff(&d) < STUDY_ROUND_TRIP_TOLERANCE;
            Ok(StudyOutput::Dual { a: d.re.to_array(), a_star: d.du.to_array(), round_trip })
        }
        StudyInput::Dual { a, a_star } => {
            let d = DualVec3::new(Vec3L::from_array(a), Vec3L::from_array(a_star));
            let line = dual_to_line(&d)?;
            let round_trip = line_to_dual(&line)?.max_abs_diff(&d) < STUDY_ROUND_TRIP_TOLERANCE;
            Ok(StudyOutput::Line { point: line.point.to_array(), dir: line.direction.to_array(), round_trip })
        }
    }
}

/// Writes `value` as pretty JSON to `out`, or to stdout when `out` is `None`.
pub fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("finite values");
    match out {
        Some(p) => write_text(p, &text),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
