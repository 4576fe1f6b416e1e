//! Error classes of the command-line tool and their exit codes.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    Spec,
    Degeneracy,
    Tolerance,
    Io,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Spec => 2,
            ErrorKind::Degeneracy => 3,
            ErrorKind::Tolerance => 4,
            ErrorKind::Io => 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn spec(message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Spec, message: message.into() }
    }

    pub fn io(path: &std::path::Path, err: impl std::fmt::Display) -> Self {
        Self { kind: ErrorKind::Io, message: format!("{}: {err}", path.display()) }
    }

    pub fn tolerance(message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Tolerance, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind.exit_code()
    }

    /// `{"error": {"kind": ..., "exit_code": ..., "message": ...}}`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            kind: ErrorKind,
            exit_code: i32,
            message: &'a str,
        }
        #[derive(Serialize)]
        struct Envelope<'a> {
            error: Body<'a>,
        }
        let body = Body { kind: self.kind, exit_code: self.exit_code(), message: &self.message };
        serde_json::to_string(&Envelope { error: body }).expect("error objects serialize")
    }
}

impl From<mannheim_core::Error> for CliError {
    fn from(e: mannheim_core::Error) -> Self {
        let kind = if e.is_degeneracy() { ErrorKind::Degeneracy } else { ErrorKind::Spec };
        Self { kind, message: e.to_string() }
    }
}

impl From<crate::expr::ParseError> for CliError {
    fn from(e: crate::expr::ParseError) -> Self {
        Self::spec(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
