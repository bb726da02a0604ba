//! Report types: one entry per requested check, with every tolerance and
//! grid parameter recorded, plus a deterministic fingerprint of the seed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::wronskian::SeedData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
    Error,
}

/// Outcome of one verification check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Grid, quadrature, and branch parameters the check ran with.
    pub parameters: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl CheckEntry {
    pub fn new(name: &str) -> Self {
        CheckEntry {
            name: name.to_string(),
            status: CheckStatus::Skipped,
            max_residual: None,
            tolerance: None,
            parameters: BTreeMap::new(),
            message: None,
        }
    }

    pub fn with_param(mut self, key: &str, value: serde_json::Value) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass || self.status == CheckStatus::Skipped
    }
}

/// The full verification report of one scenario run.
///
/// Timing data lives in its own field so that reports are byte-identical
/// across runs apart from it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed_fingerprint: String,
    pub checks: Vec<CheckEntry>,
    pub timings: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn new(fingerprint: String) -> Self {
        VerificationReport {
            seed_fingerprint: fingerprint,
            checks: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    /// Append a check entry; each requested check appears exactly once.
    pub fn push(&mut self, entry: CheckEntry) {
        debug_assert!(
            !self.checks.iter().any(|c| c.name == entry.name),
            "duplicate check name {}",
            entry.name
        );
        self.checks.push(entry);
    }

    pub fn record_timing(&mut self, name: &str, seconds: f64) {
        self.timings.insert(name.to_string(), seconds);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }
}

/// Deterministic fingerprint of a seed: SHA-256 over the rank, the weight
/// and exponent bit patterns, and the seed coefficients.
pub fn seed_fingerprint(seed: &SeedData) -> String {
    let mut hasher = Sha256::new();
    hasher.update((seed.rank() as u64).to_le_bytes());
    hasher.update((seed.order() as u64).to_le_bytes());
    hasher.update([u8::from(seed.is_normalized())]);
    for &g in seed.exponents().gamma() {
        hasher.update(g.to_bits().to_le_bytes());
    }
    for &b in seed.exponents().beta() {
        hasher.update(b.to_bits().to_le_bytes());
    }
    for s in seed.seeds() {
        for c in s.coeffs() {
            hasher.update(c.re.to_bits().to_le_bytes());
            hasher.update(c.im.to_bits().to_le_bytes());
        }
    }
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
