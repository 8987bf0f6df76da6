//! Experiment configuration: a versioned JSON document with defaults for
//! every field, validated before any computation starts.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

pub const SCHEMA_VERSION: u32 = 1;

/// Automorphism selection: a multiplier alone means the canonical map
/// fixing ±1; optional fixed points request the conjugated automorphism.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismSpec {
    pub mu: f64,
    /// Attractive fixed point as [re, im] on the unit circle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<[f64; 2]>,
    /// Repulsive fixed point as [re, im] on the unit circle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<[f64; 2]>,
}

impl Default for AutomorphismSpec {
    fn default() -> Self {
        AutomorphismSpec {
            mu: 2.0,
            alpha: None,
            beta: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightConfig {
    pub gamma: f64,
    pub delta: f64,
    /// Pin exact zeros at the fixed points so the truncation stays in the
    /// weighted class (see hardy::force_boundary_zeros).
    #[serde(default = "default_true")]
    pub pin_boundary_zeros: bool,
}

fn default_true() -> bool {
    true
}

impl Default for WeightConfig {
    fn default() -> Self {
        WeightConfig {
            gamma: 0.75,
            delta: 0.75,
            pin_boundary_zeros: true,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetConfig {
    /// Coefficient budget N (a power of two).
    pub coefficients: usize,
    /// Boundary grid size = oversample × coefficients (both powers of two).
    pub oversample: usize,
    /// Orbit window M: members f∘φ_n for |n| ≤ M (plus one guard member).
    pub window: usize,
    /// Order of the bump polynomial used when pinning boundary zeros.
    pub bump_order: usize,
}

impl Default for BudgetConfig {
    fn default() -> Self {
        BudgetConfig {
            coefficients: 4096,
            oversample: 4,
            window: 44,
            bump_order: 64,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    /// Radial × angular counts for λ-scans.
    pub radial: usize,
    pub angular: usize,
    /// Scan annulus [inner, outer].
    pub annulus: [f64; 2],
    /// θ-nodes for the Poisson-bound grids.
    pub theta_nodes: usize,
    /// ρ-nodes for the pointwise kernel-bound grid.
    pub rho_nodes: usize,
    /// Terms of the orbit kernel partial sums.
    pub kernel_terms: usize,
    /// |θ| below this is excluded from orbit-sum grids (both sides of the
    /// bound diverge at the attractive fixed point).
    pub theta_exclusion: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            radial: 16,
            angular: 16,
            annulus: [0.9, 1.1],
            theta_nodes: 512,
            rho_nodes: 1024,
            kernel_terms: 200,
            theta_exclusion: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceConfig {
    /// Residual below which a scanned λ counts as a numerical eigenvalue.
    pub scan_residual: f64,
    /// Norm threshold of the hypercyclicity criterion.
    pub hypercyclic: f64,
    /// Transients skipped by decay fits.
    pub fit_skip: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            scan_residual: 1e-4,
            hypercyclic: 1e-4,
            fit_skip: 5,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomConfig {
    /// Number of random polynomials drawn by the randomized suites.
    pub polynomials: usize,
    /// Maximum polynomial degree.
    pub degree: usize,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig {
            polynomials: 200,
            degree: 64,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumConfig {
    /// Section dimensions for the norm sweep, in increasing order.
    pub dimensions: Vec<usize>,
    /// Multipliers for the norm sweep.
    pub multipliers: Vec<f64>,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig {
            dimensions: vec![64, 128, 256, 512, 1024],
            multipliers: vec![1.5, 2.0, 4.0, 10.0],
        }
    }
}

/// Top-level experiment configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_schema_version")]
    pub schema_version: u32,
    #[serde(default)]
    pub automorphism: AutomorphismSpec,
    #[serde(default)]
    pub weight: WeightConfig,
    #[serde(default)]
    pub budget: BudgetConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub tolerances: ToleranceConfig,
    #[serde(default)]
    pub random: RandomConfig,
    #[serde(default)]
    pub spectrum: SpectrumConfig,
}

fn default_schema_version() -> u32 {
    SCHEMA_VERSION
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            schema_version: SCHEMA_VERSION,
            automorphism: AutomorphismSpec::default(),
            weight: WeightConfig::default(),
            budget: BudgetConfig::default(),
            grid: GridConfig::default(),
            tolerances: ToleranceConfig::default(),
            random: RandomConfig::default(),
            spectrum: SpectrumConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: ExperimentConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if !(self.automorphism.mu > 1.0) {
            return Err(Error::Config(format!(
                "mu must be > 1, got {}",
                self.automorphism.mu
            )));
        }
        match (self.automorphism.alpha, self.automorphism.beta) {
            (None, None) => {}
            (Some(a), Some(b)) => {
                for (name, p) in [("alpha", a), ("beta", b)] {
                    let norm = (p[0] * p[0] + p[1] * p[1]).sqrt();
                    if (norm - 1.0).abs() > 1e-9 {
                        return Err(Error::Config(format!(
                            "{name} must be unimodular, got |{name}| = {norm}"
                        )));
                    }
                }
            }
            _ => {
                return Err(Error::Config(
                    "alpha and beta must be given together".into(),
                ))
            }
        }
        if !self.budget.coefficients.is_power_of_two() {
            return Err(Error::Config(format!(
                "budget.coefficients must be a power of two, got {}",
                self.budget.coefficients
            )));
        }
        if !self.budget.oversample.is_power_of_two() || self.budget.oversample < 4 {
            return Err(Error::Config(format!(
                "budget.oversample must be a power of two ≥ 4, got {}",
                self.budget.oversample
            )));
        }
        if self.budget.window == 0 {
            return Err(Error::Config("budget.window must be ≥ 1".into()));
        }
        if !(0.0..=1.5).contains(&self.weight.gamma) || !(0.0..=1.5).contains(&self.weight.delta) {
            return Err(Error::Config(format!(
                "weight exponents must lie in [0, 3/2], got ({}, {})",
                self.weight.gamma, self.weight.delta
            )));
        }
        if self.grid.annulus[0] <= 0.0 || self.grid.annulus[0] >= self.grid.annulus[1] {
            return Err(Error::Config(format!(
                "annulus must satisfy 0 < inner < outer, got {:?}",
                self.grid.annulus
            )));
        }
        for (name, v) in [
            ("scan_residual", self.tolerances.scan_residual),
            ("hypercyclic", self.tolerances.hypercyclic),
        ] {
            if !(v > 0.0) {
                return Err(Error::Config(format!("tolerance {name} must be positive")));
            }
        }
        if !self.grid.theta_nodes.is_power_of_two() || !self.grid.rho_nodes.is_power_of_two() {
            return Err(Error::Config(
                "grid.theta_nodes and grid.rho_nodes must be powers of two".into(),
            ));
        }
        for d in &self.spectrum.dimensions {
            if !d.is_power_of_two() {
                return Err(Error::Config(format!(
                    "spectrum dimension {d} must be a power of two"
                )));
            }
        }
        for m in &self.spectrum.multipliers {
            if !(*m > 1.0) {
                return Err(Error::Config(format!(
                    "spectrum multiplier {m} must be > 1"
                )));
            }
        }
        Ok(())
    }

    pub fn grid_size(&self) -> usize {
        self.budget.coefficients * self.budget.oversample
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        ExperimentConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_bad_mu() {
        let mut cfg = ExperimentConfig::default();
        cfg.automorphism.mu = 0.5;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn parses_minimal_json() {
        let cfg: ExperimentConfig =
            serde_json::from_str(r#"{"schema_version":1,"automorphism":{"mu":3.0}}"#).unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.automorphism.mu, 3.0);
        assert_eq!(cfg.budget.coefficients, 4096);
    }

    #[test]
    fn rejects_unknown_fields() {
        let r: std::result::Result<ExperimentConfig, _> =
            serde_json::from_str(r#"{"schema_version":1,"nonsense":true}"#);
        assert!(r.is_err());
    }
}
