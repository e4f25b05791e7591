//! Run reports and exit codes.

use serde::Serialize;
use serde_json::Value;
use svsplit::io::SCHEMA_VERSION;
use svsplit::{Error, Tolerances};

/// Exit codes: every certificate passed, a certificate failed, bad input.
pub const EXIT_OK: u8 = 0;
pub const EXIT_CERTIFICATE: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub tol_profile: String,
    pub tolerances: Tolerances,
    /// Threshold for residual and membership certificates.
    pub certificate_tol: f64,
    pub arc_points: usize,
    pub epsilon: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    /// `value ≤ limit`, with both in the detail.
    pub fn at_most(name: &str, value: f64, limit: f64) -> Self {
        Self::new(name, value <= limit, format!("{value:e} <= {limit:e}"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
    /// The input was rejected; no mathematics was attempted or refuted.
    pub input_error: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<Vec<f64>>,
}

impl ErrorInfo {
    pub fn from_error(e: &Error) -> Self {
        let debug = format!("{e:?}");
        let kind = debug
            .split([' ', '(', '{'])
            .next()
            .unwrap_or_default()
            .to_string();
        let (index, parameter) = match e {
            Error::InfeasibleSelection { index, parameter }
            | Error::EmptyIntersection { index, parameter }
            | Error::EpsilonTooSmall { index, parameter } => {
                (Some(*index), Some(parameter.iter().copied().collect()))
            }
            _ => (None, None),
        };
        Self {
            kind,
            message: e.to_string(),
            input_error: is_config_error(e),
            index,
            parameter,
        }
    }
}

/// Errors caused by the input rather than by the mathematics.
pub fn is_config_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Config(_)
            | Error::Dim { .. }
            | Error::UnknownBody(_)
            | Error::InsufficientDomain
            | Error::DegenerateDirection
            | Error::UnsupportedDim(_)
            | Error::UnsupportedRep(_)
            | Error::EmptyInput
    )
}

/// Everything a run produced. Wall-clock timing is deliberately absent so
/// identical inputs give byte-identical reports.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: Value,
    pub config: RunConfig,
    pub results: Value,
    pub checks: Vec<Check>,
    /// CSV and JSON artifacts written next to the report.
    pub artifacts: Vec<String>,
    pub error: Option<ErrorInfo>,
    pub passed: bool,
}

impl RunReport {
    pub fn new(command: Value, config: RunConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command,
            config,
            results: Value::Null,
            checks: Vec::new(),
            artifacts: Vec::new(),
            error: None,
            passed: true,
        }
    }

    pub fn finish(mut self) -> Self {
        self.passed = self.error.is_none() && self.checks.iter().all(|c| c.passed);
        self
    }

    pub fn exit_code(&self) -> u8 {
        match &self.error {
            Some(e) if e.input_error => EXIT_CONFIG,
            _ if self.passed => EXIT_OK,
            _ => EXIT_CERTIFICATE,
        }
    }
}
