use nadosc_core::hamiltonian::OscParams;
use nadosc_core::nonabelian::GaugeParams;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Run configuration shared by every subcommand. `dimension`, `mass`,
/// `omega` and `truncation` are required; everything else has a default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub dimension: usize,
    pub mass: f64,
    pub omega: f64,
    #[serde(default)]
    pub eta: f64,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default)]
    pub phi: [f64; 3],
    #[serde(rename = "B0", default)]
    pub b0: f64,
    #[serde(rename = "E0", default)]
    pub e0: [f64; 2],
    #[serde(default = "one")]
    pub kappa: f64,
    #[serde(default = "one")]
    pub e_charge: f64,
    #[serde(default = "one")]
    pub q_charge: f64,
    pub truncation: usize,
    #[serde(default = "minus_one")]
    pub extra_sign: i32,
    #[serde(default = "one")]
    pub kappa_q: f64,
    #[serde(default = "half")]
    pub guard_fraction: f64,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn one() -> f64 {
    1.0
}

fn half() -> f64 {
    0.5
}

fn minus_one() -> i32 {
    -1
}

fn default_tolerance() -> f64 {
    1e-10
}

impl RunConfig {
    /// Configuration with every optional field at its default.
    pub fn new(dimension: usize, mass: f64, omega: f64, truncation: usize) -> Self {
        Self {
            dimension,
            mass,
            omega,
            eta: 0.0,
            lambda: 0.0,
            phi: [0.0; 3],
            b0: 0.0,
            e0: [0.0; 2],
            kappa: 1.0,
            e_charge: 1.0,
            q_charge: 1.0,
            truncation,
            extra_sign: -1,
            kappa_q: 1.0,
            guard_fraction: 0.5,
            tolerance: default_tolerance(),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let invalid = |field: &str, why: String| Err(CliError::Input(format!("{field}: {why}")));
        if !matches!(self.dimension, 1 | 2) {
            return invalid("dimension", format!("must be 1 or 2, got {}", self.dimension));
        }
        for (field, v) in [("mass", self.mass), ("omega", self.omega), ("tolerance", self.tolerance)] {
            if !(v > 0.0) {
                return invalid(field, format!("must be > 0, got {v}"));
            }
        }
        if self.truncation < 1 {
            return invalid("truncation", "must be >= 1".into());
        }
        if !(self.guard_fraction > 0.0 && self.guard_fraction <= 1.0) {
            return invalid("guard_fraction", format!("must lie in (0, 1], got {}", self.guard_fraction));
        }
        if !matches!(self.extra_sign, -1 | 1) {
            return invalid("extra_sign", format!("must be -1 or +1, got {}", self.extra_sign));
        }
        if !(self.eta >= 0.0) {
            return invalid("eta", format!("must be >= 0, got {}", self.eta));
        }
        if self.kappa_q == 0.0 {
            return invalid("kappa_q", "must be nonzero".into());
        }
        Ok(())
    }

    pub fn osc_params(&self) -> OscParams {
        OscParams {
            dimension: self.dimension,
            mass: self.mass,
            omega: self.omega,
            eta: self.eta,
            phi: self.phi,
            extra_sign: self.extra_sign as f64,
            truncation: self.truncation,
            guard_fraction: self.guard_fraction,
            tolerance: self.tolerance,
        }
    }

    pub fn gauge_params(&self) -> GaugeParams {
        GaugeParams {
            b0: self.b0,
            e0: self.e0,
            eta: self.eta,
            lambda: self.lambda,
            phi: self.phi,
            kappa: self.kappa,
            e_charge: self.e_charge,
            q_charge: self.q_charge,
            mass: self.mass,
            omega: self.omega,
        }
    }
}

/// Parses and validates a JSON configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let config: RunConfig =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("config: {e}")))?;
    config.validate()?;
    Ok(config)
}

/// Applies a `NADOSC_TOL` override when one is given.
pub fn apply_tolerance_override(config: &mut RunConfig, value: Option<&str>) -> Result<(), CliError> {
    if let Some(raw) = value {
        let tol: f64 = raw
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("NADOSC_TOL: not a number: {raw:?}")))?;
        config.tolerance = tol;
        config.validate()?;
    }
    Ok(())
}
