//! The JSON report and the error-to-exit-code mapping.

use std::time::Duration;

use rackcoh::complex::ComplexError;
use rackcoh::cup::CupError;
use rackcoh::homlin::HomlinError;
use rackcoh::rack::RackError;
use rackcoh::verify::VerifyError;
use rackcoh::word::WordError;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::input::InputError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Rack(#[from] RackError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cup(#[from] CupError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

fn homlin_is_resource(e: &HomlinError) -> bool {
    matches!(e, HomlinError::ResourceLimit { .. })
}

fn word_is_resource(e: &WordError) -> bool {
    matches!(e, WordError::OrbitLimitExceeded { .. })
}

fn complex_is_resource(e: &ComplexError) -> bool {
    match e {
        ComplexError::DimensionOverflow { .. } => true,
        ComplexError::Linear(l) => homlin_is_resource(l),
        ComplexError::Word(w) => word_is_resource(w),
        _ => false,
    }
}

fn cup_is_resource(e: &CupError) -> bool {
    match e {
        CupError::ResourceLimit { .. } => true,
        CupError::Complex(c) => complex_is_resource(c),
        CupError::Linear(l) => homlin_is_resource(l),
        CupError::Word(w) => word_is_resource(w),
        _ => false,
    }
}

impl CliError {
    pub fn is_resource_limit(&self) -> bool {
        match self {
            CliError::Complex(c) => complex_is_resource(c),
            CliError::Cup(c) => cup_is_resource(c),
            CliError::Verify(VerifyError::Complex(c)) => complex_is_resource(c),
            CliError::Verify(VerifyError::Cup(c)) => cup_is_resource(c),
            CliError::Verify(VerifyError::Word(w)) => word_is_resource(w),
            _ => false,
        }
    }

    /// 2 for resource limits, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        if self.is_resource_limit() {
            2
        } else {
            1
        }
    }

    pub fn kind(&self) -> &'static str {
        if self.is_resource_limit() {
            return "resource_limit";
        }
        match self {
            CliError::Usage(_) => "usage",
            CliError::Input(InputError::Parse { .. }) => "parse",
            CliError::Input(InputError::Io { .. }) => "io",
            CliError::Input(InputError::Rack(..)) | CliError::Rack(_) => "axiom",
            CliError::Complex(_) | CliError::Cup(_) | CliError::Verify(_) => "validation",
        }
    }
}

#[derive(Serialize)]
pub struct Timings {
    pub elapsed_ms: u128,
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: u8,
}

#[derive(Serialize)]
pub struct Report {
    pub version: &'static str,
    pub input_sha: Option<String>,
    pub command: String,
    pub config: Value,
    pub results: Vec<Value>,
    pub suites: Vec<Value>,
    pub seed: Option<u64>,
    pub timings: Option<Timings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
}

impl Report {
    pub fn new(command: &str, input_sha: String, config: Value, results: Vec<Value>) -> Report {
        Report {
            version: env!("CARGO_PKG_VERSION"),
            input_sha: Some(input_sha),
            command: command.to_string(),
            config,
            results,
            suites: Vec::new(),
            seed: None,
            timings: None,
            error: None,
        }
    }

    pub fn failure(command: &str, err: &CliError) -> Report {
        Report {
            version: env!("CARGO_PKG_VERSION"),
            input_sha: None,
            command: command.to_string(),
            config: Value::Null,
            results: Vec::new(),
            suites: Vec::new(),
            seed: None,
            timings: None,
            error: Some(ErrorReport { kind: err.kind(), message: err.to_string(), exit_code: err.exit_code() }),
        }
    }

    pub fn set_elapsed(&mut self, d: Duration) {
        self.timings = Some(Timings { elapsed_ms: d.as_millis() });
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let overflow = CliError::Complex(ComplexError::DimensionOverflow { degree: 3, dim: 10, cap: 5 });
        assert_eq!((overflow.exit_code(), overflow.kind()), (2, "resource_limit"));
        let nested = CliError::Verify(VerifyError::Cup(CupError::Complex(ComplexError::Word(
            WordError::OrbitLimitExceeded { cap: 1 },
        ))));
        assert_eq!(nested.exit_code(), 2);
        let axiom = CliError::Rack(RackError::R1Violation { y: 0 });
        assert_eq!((axiom.exit_code(), axiom.kind()), (1, "axiom"));
        assert_eq!(CliError::Usage("x".into()).exit_code(), 1);
    }

    #[test]
    fn timings_are_null_by_default() {
        let r = Report::new("homology", "00".into(), Value::Null, Vec::new());
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(v["timings"].is_null());
        assert!(v.get("error").is_none());
    }
}
