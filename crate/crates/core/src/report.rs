//! Per-identity verification records: both route values, error measures,
//! convergence diagnostics, and the pass/fail decision.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;

/// A named scalar or text parameter recorded with a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Real(f64),
    Text(String),
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Real(v)
    }
}

impl From<i64> for ParamValue {
    fn from(v: i64) -> Self {
        ParamValue::Int(v)
    }
}

impl From<u64> for ParamValue {
    fn from(v: u64) -> Self {
        ParamValue::Int(v as i64)
    }
}

impl From<&str> for ParamValue {
    fn from(v: &str) -> Self {
        ParamValue::Text(v.to_string())
    }
}

impl std::fmt::Display for ParamValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Real(v) => write!(f, "{v}"),
            ParamValue::Text(v) => write!(f, "{v}"),
        }
    }
}

/// Outcome of one two-route identity evaluation.
///
/// Invariants maintained by the constructor: `abs_err` = |lhs − rhs|,
/// `rel_err` = abs_err / max(|lhs|, |rhs|, 1e−300), and `passed` iff either
/// error meets the tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity_id: String,
    pub parameters: BTreeMap<String, ParamValue>,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub diagnostics: Vec<(String, f64)>,
    pub tolerance: f64,
    pub passed: bool,
    pub wall_time: f64,
}

impl VerificationReport {
    pub fn new(
        identity_id: impl Into<String>,
        parameters: BTreeMap<String, ParamValue>,
        lhs: Complex64,
        rhs: Complex64,
        tolerance: f64,
        diagnostics: Vec<(String, f64)>,
        started: Instant,
    ) -> Self {
        let abs_err = (lhs - rhs).norm();
        let rel_err = abs_err / lhs.norm().max(rhs.norm()).max(1e-300);
        VerificationReport {
            identity_id: identity_id.into(),
            parameters,
            lhs,
            rhs,
            abs_err,
            rel_err,
            diagnostics,
            tolerance,
            passed: abs_err <= tolerance || rel_err <= tolerance,
            wall_time: started.elapsed().as_secs_f64(),
        }
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        format!(
            "{:<16} residual {:.3e} (rel {:.3e})  tol {:.1e}  {}  {:.2}s",
            self.identity_id,
            self.abs_err,
            self.rel_err,
            self.tolerance,
            if self.passed { "PASS" } else { "FAIL" },
            self.wall_time
        )
    }

    pub fn diagnostic(&self, key: &str) -> Option<f64> {
        self.diagnostics
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
    }
}

/// Helper for assembling the parameter map without repeating the key types.
pub fn params(entries: &[(&str, ParamValue)]) -> BTreeMap<String, ParamValue> {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}
