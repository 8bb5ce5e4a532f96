use std::io;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

/// Failure classes, each with its own process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    VerificationFailed,
    Usage,
    InvalidInput,
    Io,
    Parse,
}

impl ErrorKind {
    pub fn exit_code(self) -> u8 {
        match self {
            ErrorKind::VerificationFailed => 1,
            ErrorKind::Usage => 2,
            ErrorKind::InvalidInput => 3,
            ErrorKind::Io => 4,
            ErrorKind::Parse => 5,
        }
    }
}

#[derive(Debug, Clone, Error)]
#[error("{message}")]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
    pub details: Option<Value>,
}

impl CliError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
            details: None,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(ErrorKind::Usage, message)
    }

    pub fn invalid(message: impl std::fmt::Display) -> Self {
        Self::new(ErrorKind::InvalidInput, message.to_string())
    }

    pub fn io(path: &Path, err: io::Error) -> Self {
        Self::new(ErrorKind::Io, format!("{}: {err}", path.display())).with_details(json!({ "path": path }))
    }

    pub fn json_parse(path: &Path, err: &serde_json::Error) -> Self {
        let kind = if err.is_io() { ErrorKind::Io } else { ErrorKind::Parse };
        Self::new(kind, format!("{}: {err}", path.display())).with_details(json!({
            "path": path,
            "line": err.line(),
            "column": err.column(),
        }))
    }

    pub fn csv_parse(path: &Path, err: &csv::Error) -> Self {
        let line = err.position().map(|p| p.line());
        let kind = if matches!(err.kind(), csv::ErrorKind::Io(_)) { ErrorKind::Io } else { ErrorKind::Parse };
        Self::new(kind, format!("{}: {err}", path.display())).with_details(json!({ "path": path, "line": line }))
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = Some(details);
        self
    }

    pub fn context(mut self, prefix: impl std::fmt::Display) -> Self {
        self.message = format!("{prefix}: {}", self.message);
        self
    }

    /// The document written to stderr.
    pub fn to_json(&self) -> Value {
        let mut error = json!({
            "kind": self.kind,
            "exit_code": self.kind.exit_code(),
            "message": self.message,
        });
        if let Some(details) = &self.details {
            error["details"] = details.clone();
        }
        json!({ "error": error })
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
