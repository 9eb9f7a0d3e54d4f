//! JSON document schemas emitted by the CLI.

use cbid_core::{Identity, VerificationReport};
use serde::{Deserialize, Serialize};

use crate::text::{poly_to_string, term_to_string, variable_stem};

/// Verification report document:
/// `{ family, params, method, verdict, residual, trials, seed, elapsed_ms }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDoc {
    pub family: String,
    pub params: Vec<i64>,
    pub method: String,
    pub verdict: String,
    pub residual: Option<String>,
    pub trials: Option<u32>,
    pub seed: Option<u64>,
    pub elapsed_ms: f64,
}

impl ReportDoc {
    pub fn from_report(report: &VerificationReport) -> Self {
        let stem = variable_stem(report.family);
        ReportDoc {
            family: report.family.name().to_string(),
            params: report.params.clone(),
            method: report.method.name().to_string(),
            verdict: report.verdict.name().to_string(),
            residual: report.residual.as_ref().map(|r| term_to_string(r, stem)),
            trials: report.trials,
            seed: report.seed,
            elapsed_ms: report.elapsed.as_secs_f64() * 1e3,
        }
    }
}

/// Identity document:
/// `{ family, params, arity, constraint, lhs, rhs }`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityDoc {
    pub family: String,
    pub params: Vec<i64>,
    pub arity: usize,
    pub constraint: Option<String>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

impl IdentityDoc {
    pub fn from_identity(id: &Identity) -> Self {
        let stem = variable_stem(id.family());
        IdentityDoc {
            family: id.family().name().to_string(),
            params: id.params().to_vec(),
            arity: id.arity(),
            constraint: id.constraint().map(|c| poly_to_string(c, stem)),
            lhs: id.lhs().iter().map(|t| term_to_string(t, stem)).collect(),
            rhs: id.rhs().iter().map(|t| term_to_string(t, stem)).collect(),
        }
    }
}
