use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("division by a pure dual number (real part {0:e})")]
    DivisionByPureDual(f64),
    #[error("{function} is undefined at {x}")]
    DomainError { function: &'static str, x: f64 },
    #[error("dual vector has a null real part")]
    NullRealPart,
    #[error("causal character mismatch: {0}")]
    KindMismatch(&'static str),
    #[error("no real central angle: cosh would equal {0}")]
    BranchError(f64),
    #[error("line direction must be a unit non-null vector (⟨a,a⟩ = {0})")]
    InvalidDirection(f64),
    #[error("not a unit dual vector: ⟨a,a⟩ = {norm_sq}, ⟨a,a*⟩ = {moment_dot}")]
    NotUnit { norm_sq: f64, moment_dot: f64 },
    #[error("indicatrix degenerates at u = {u} (speed {speed:e})")]
    DegenerateIndicatrix { u: f64, speed: f64 },
    #[error("frame degenerates at s = {s} (orthonormality residual {residual:e})")]
    FrameDegeneracy { s: f64, residual: f64 },
    #[error("frame drift {drift:e} at s = {s} exceeds the step tolerance")]
    StepSizeError { s: f64, drift: f64 },
    #[error("offset indicatrix stalls at s = {s} (γ cosh θ = {rate:e})")]
    DegenerateOffset { s: f64, rate: f64 },
    #[error("conical curvature vanishes at s = {s}")]
    ZeroConicalCurvature { s: f64 },
    #[error("Darboux vector is lightlike: |γ̄₁| = {0}")]
    NullDarboux(f64),
    #[error("invalid specification: {0}")]
    InvalidSpec(&'static str),
}

impl Error {
    /// Errors caused by the geometry degenerating rather than by malformed
    /// input.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::DegenerateIndicatrix { .. }
                | Error::FrameDegeneracy { .. }
                | Error::StepSizeError { .. }
                | Error::DegenerateOffset { .. }
                | Error::ZeroConicalCurvature { .. }
                | Error::NullDarboux(_)
                | Error::NullRealPart
                | Error::DivisionByPureDual(_)
        )
    }
}
