//! Versioned JSON reports and standalone certificate verification.

use serde::{Deserialize, Serialize};

use crate::checker::check_derivation;
use crate::classify::{PhaseTimings, UnknownReport, Verdict};
use crate::error::CertError;
use crate::graph::Graph;
use crate::obstruction::{verify_obstruction, Catalog, Obstruction};
use crate::prover::Derivation;

pub const REPORT_SCHEMA: &str = "raagscope.report/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    Derivation(Derivation),
    Obstruction(Obstruction),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub budget: usize,
    pub cocontract_depth: usize,
    pub threads: usize,
    pub rule_order: Vec<String>,
    pub catalog: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: String,
    pub input: Graph,
    pub parameters: Parameters,
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unknown: Option<UnknownReport>,
    pub timings: PhaseTimings,
}

impl Report {
    pub fn new(input: &Graph, parameters: Parameters, verdict: Verdict, timings: PhaseTimings) -> Self {
        let name = verdict.name().to_string();
        let (certificate, unknown) = match verdict {
            Verdict::NoSurfaceSubgroup(d) => (Some(Certificate::Derivation(d)), None),
            Verdict::HasSurfaceSubgroup(o) => (Some(Certificate::Obstruction(o)), None),
            Verdict::Unknown(u) => (None, Some(u)),
        };
        Report {
            schema: REPORT_SCHEMA.to_string(),
            version: crate::VERSION.to_string(),
            input: input.clone(),
            parameters,
            verdict: name,
            certificate,
            unknown,
            timings,
        }
    }
}

/// Accepts a full report or a bare certificate.
pub fn parse_certificate(text: &str) -> Result<Certificate, String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if value.get("schema").is_some() {
        let report: Report = serde_json::from_value(value).map_err(|e| e.to_string())?;
        if report.schema != REPORT_SCHEMA {
            return Err(format!("unsupported schema {:?}", report.schema));
        }
        return report.certificate.ok_or_else(|| "report carries no certificate".to_string());
    }
    serde_json::from_value(value).map_err(|e| e.to_string())
}

pub fn verify_certificate(g: &Graph, cert: &Certificate, catalog: &Catalog) -> Result<bool, CertError> {
    match cert {
        Certificate::Derivation(d) => Ok(check_derivation(d, g)),
        Certificate::Obstruction(o) => verify_obstruction(g, o, catalog),
    }
}
