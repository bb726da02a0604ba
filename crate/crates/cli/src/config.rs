//! Scenario configuration: JSON in, validated structure out, with defaults
//! filled so the resolved configuration can be echoed verbatim into reports.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use toda_core::verify::GridSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Normalize,
    Pde,
    Plucker,
    Fuchsian,
    ConeAngle,
    Energy,
    MetricGrid,
    Chart,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    /// Report JSON, relative to the output directory.
    #[serde(default = "default_report_path")]
    pub report: String,
    /// Metric-grid CSV, relative to the output directory.
    #[serde(default = "default_grid_path")]
    pub grid: String,
    /// Normalized-seed config JSON, relative to the output directory.
    #[serde(default = "default_normalized_path")]
    pub normalized: String,
    /// Reconstructed-operator JSON, relative to the output directory.
    #[serde(default = "default_fuchsian_path")]
    pub fuchsian: String,
}

fn default_report_path() -> String {
    "report.json".into()
}
fn default_grid_path() -> String {
    "grid.csv".into()
}
fn default_normalized_path() -> String {
    "normalized.json".into()
}
fn default_fuchsian_path() -> String {
    "fuchsian.json".into()
}

impl Default for OutputPaths {
    fn default() -> Self {
        OutputPaths {
            report: default_report_path(),
            grid: default_grid_path(),
            normalized: default_normalized_path(),
            fuchsian: default_fuchsian_path(),
        }
    }
}

fn default_truncation_order() -> usize {
    24
}

fn default_grid() -> GridSpec {
    GridSpec::default()
}

/// One scenario: the seed data, the requested tasks, and the numerical
/// parameters. Every omitted field is filled with its default, and the
/// resolved configuration is echoed into the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Rank of the system (number of equations).
    pub n: usize,
    /// Weights gamma_1..gamma_n, each > -1.
    pub gamma: Vec<f64>,
    /// Seed polynomials g_0..g_n as [re, im] coefficient pairs.
    pub g: Vec<Vec<[f64; 2]>>,
    #[serde(default = "default_truncation_order")]
    pub truncation_order: usize,
    pub tasks: Vec<Task>,
    #[serde(default = "default_grid")]
    pub grid: GridSpec,
    /// Named tolerance overrides (see `Tolerances::set`).
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    #[serde(default)]
    pub output: OutputPaths,
}

impl ScenarioConfig {
    /// Validate the cross-field invariants.
    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            bail!("validation error: rank n must be at least 1");
        }
        if self.gamma.len() != self.n {
            bail!(
                "validation error ArityMismatch: expected {} weights, got {}",
                self.n,
                self.gamma.len()
            );
        }
        for (i, &g) in self.gamma.iter().enumerate() {
            if !(g > -1.0) {
                bail!("validation error IllegalWeight: gamma[{i}] = {g} must be > -1");
            }
        }
        if self.g.len() != self.n + 1 {
            bail!(
                "validation error ArityMismatch: expected {} seed polynomials, got {}",
                self.n + 1,
                self.g.len()
            );
        }
        if self.truncation_order < self.n + 4 {
            bail!(
                "validation error: truncation_order {} below minimum {} (n + 4)",
                self.truncation_order,
                self.n + 4
            );
        }
        Ok(())
    }

    /// Seed coefficient lists as complex numbers.
    pub fn seed_coefficients(&self) -> Vec<Vec<C64>> {
        self.g
            .iter()
            .map(|poly| poly.iter().map(|&[re, im]| C64::new(re, im)).collect())
            .collect()
    }
}

/// Load and validate a scenario configuration from a JSON file.
pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    let config: ScenarioConfig = serde_json::from_str(&text)
        .with_context(|| format!("parse error in {}", path.display()))?;
    config
        .validate()
        .with_context(|| format!("invalid config {}", path.display()))?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal_json() -> serde_json::Value {
        serde_json::json!({
            "n": 1,
            "gamma": [0.0],
            "g": [[[1.0, 0.0]], [[1.0, 0.0]]],
            "tasks": ["pde"]
        })
    }

    #[test]
    fn minimal_config_is_valid() {
        let config: ScenarioConfig = serde_json::from_value(minimal_json()).unwrap();
        config.validate().unwrap();
        assert_eq!(config.truncation_order, 24);
        assert_eq!(config.tasks, vec![Task::Pde]);
        assert_eq!(config.grid, GridSpec::default());
    }

    #[test]
    fn illegal_weight_rejected() {
        let mut v = minimal_json();
        v["gamma"] = serde_json::json!([-1.5]);
        let config: ScenarioConfig = serde_json::from_value(v).unwrap();
        let err = config.validate().unwrap_err().to_string();
        assert!(err.contains("IllegalWeight"), "{err}");
    }

    #[test]
    fn wrong_seed_arity_rejected() {
        let mut v = minimal_json();
        v["g"] = serde_json::json!([[[1.0, 0.0]]]);
        let config: ScenarioConfig = serde_json::from_value(v).unwrap();
        let err = config.validate().unwrap_err().to_string();
        assert!(err.contains("ArityMismatch"), "{err}");
    }

    #[test]
    fn config_round_trips_through_json() {
        let config: ScenarioConfig = serde_json::from_value(minimal_json()).unwrap();
        let text = serde_json::to_string_pretty(&config).unwrap();
        let again: ScenarioConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(config, again);
    }
}
