//! Combined verdict: an obstruction, a derivation, or an honest "unknown".

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::checker::check_derivation;
use crate::error::CertError;
use crate::graph::Graph;
use crate::obstruction::{find_cocontraction_witness, verify_obstruction, Catalog, Obstruction, DEFAULT_COCONTRACT_DEPTH};
use crate::prover::{prove_with, Derivation, ProverConfig, SearchReport};

#[derive(Debug, Clone)]
pub struct ClassifyConfig {
    pub prover: ProverConfig,
    pub cocontract_depth: usize,
    pub catalog: Catalog,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { prover: ProverConfig::default(), cocontract_depth: DEFAULT_COCONTRACT_DEPTH, catalog: Catalog::builtin() }
    }
}

/// Why neither side produced a certificate. Not a negative answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknownReport {
    pub prover: SearchReport,
    pub cocontract_depth: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "certificate")]
pub enum Verdict {
    NoSurfaceSubgroup(Derivation),
    HasSurfaceSubgroup(Obstruction),
    Unknown(UnknownReport),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::NoSurfaceSubgroup(_) => "NoSurfaceSubgroup",
            Verdict::HasSurfaceSubgroup(_) => "HasSurfaceSubgroup",
            Verdict::Unknown(_) => "Unknown",
        }
    }
}

/// Wall-clock time per phase, in milliseconds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub obstruction_search_ms: f64,
    pub obstruction_verify_ms: f64,
    pub prover_ms: f64,
    pub checker_ms: f64,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1000.0
}

/// Runs both searches and verifies both certificates independently.
///
/// Both sides verifying would mean a bug, and is reported as
/// [`CertError::Soundness`] rather than as a verdict.
pub fn classify(g: &Graph, config: &ClassifyConfig) -> Result<Verdict, CertError> {
    classify_timed(g, config).map(|(v, _)| v)
}

pub fn classify_timed(g: &Graph, config: &ClassifyConfig) -> Result<(Verdict, PhaseTimings), CertError> {
    let mut t = PhaseTimings::default();
    let start = Instant::now();
    let obstruction = find_cocontraction_witness(g, config.cocontract_depth, &config.catalog);
    t.obstruction_search_ms = ms(start);
    let start = Instant::now();
    let obstruction = match obstruction {
        Some(o) if verify_obstruction(g, &o, &config.catalog)? => Some(o),
        _ => None,
    };
    t.obstruction_verify_ms = ms(start);
    let start = Instant::now();
    let outcome = prove_with(g, &config.prover);
    t.prover_ms = ms(start);
    let start = Instant::now();
    let derivation = outcome.derivation.filter(|d| check_derivation(d, g));
    t.checker_ms = ms(start);
    let verdict = match (obstruction, derivation) {
        (Some(_), Some(_)) => return Err(CertError::Soundness),
        (Some(o), None) => Verdict::HasSurfaceSubgroup(o),
        (None, Some(d)) => Verdict::NoSurfaceSubgroup(d),
        (None, None) => Verdict::Unknown(UnknownReport { prover: outcome.report, cocontract_depth: config.cocontract_depth }),
    };
    Ok((verdict, t))
}
