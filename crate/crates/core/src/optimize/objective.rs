use serde::{Deserialize, Serialize};

use crate::hydro::HydroResult;

use super::OptimizeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    MaxEfficiency,
    MaxThrust,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveConfig {
    pub target: Target,
    /// N; zero disables the constraint.
    pub min_thrust: f64,
    /// Pa; zero disables the constraint.
    pub max_root_stress: f64,
    pub penalty_weight: f64,
}

impl Default for ObjectiveConfig {
    fn default() -> Self {
        Self {
            target: Target::MaxEfficiency,
            min_thrust: 0.0,
            max_root_stress: 0.0,
            penalty_weight: 10.0,
        }
    }
}

impl ObjectiveConfig {
    pub fn validate(&self) -> Result<(), OptimizeError> {
        if !(self.penalty_weight.is_finite() && self.penalty_weight > 0.0) {
            return Err(OptimizeError::Config(format!(
                "penalty weight must be > 0, got {}",
                self.penalty_weight
            )));
        }
        for (name, v) in [
            ("min_thrust", self.min_thrust),
            ("max_root_stress", self.max_root_stress),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(OptimizeError::Config(format!(
                    "{name} must be >= 0, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Scalar score to maximize: the target quantity minus an exact penalty made
/// of relative constraint violations.
pub fn objective(result: &HydroResult, stress: f64, cfg: &ObjectiveConfig) -> f64 {
    let base = match cfg.target {
        Target::MaxEfficiency => result.efficiency,
        Target::MaxThrust => result.thrust,
    };
    let mut violation = 0.0;
    if cfg.min_thrust > 0.0 {
        violation += (cfg.min_thrust - result.thrust).max(0.0) / cfg.min_thrust;
    }
    if cfg.max_root_stress > 0.0 {
        violation += (stress - cfg.max_root_stress).max(0.0) / cfg.max_root_stress;
    }
    base - cfg.penalty_weight * violation
}
