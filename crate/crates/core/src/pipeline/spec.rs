use serde::{Deserialize, Serialize};

use super::PipelineError;

/// Functional requirements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Functional {
    /// Total thrust over both propulsors (N).
    pub required_thrust_n: f64,
    pub cruise_speed_mps: f64,
    pub payload_mass_kg: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaxDimensions {
    pub length: f64,
    pub beam: f64,
    pub depth: f64,
    pub propeller_diameter: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constraints {
    pub max_dimensions_m: MaxDimensions,
    pub max_stress_pa: f64,
    pub water_density: f64,
    /// Density of the printed hull material (kg/m³).
    #[serde(default = "default_material_density")]
    pub hull_material_density: f64,
}

fn default_material_density() -> f64 {
    1240.0
}

/// One human-feedback directive: replace the plan field at `path`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Override {
    /// Dotted path into the plan, e.g. `initial_params.n_blades`.
    pub path: String,
    pub value: toml::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignSpec {
    pub functional: Functional,
    pub constraints: Constraints,
    /// Applied after planning, in order.
    #[serde(default)]
    pub human_feedback: Vec<Override>,
}

impl DesignSpec {
    pub fn from_toml(text: &str) -> Result<Self, PipelineError> {
        let spec: DesignSpec =
            toml::from_str(text).map_err(|e| PipelineError::Spec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let f = &self.functional;
        let c = &self.constraints;
        let d = &c.max_dimensions_m;
        let positive = [
            ("functional.required_thrust_n", f.required_thrust_n),
            ("functional.cruise_speed_mps", f.cruise_speed_mps),
            ("functional.payload_mass_kg", f.payload_mass_kg),
            ("constraints.max_dimensions_m.length", d.length),
            ("constraints.max_dimensions_m.beam", d.beam),
            ("constraints.max_dimensions_m.depth", d.depth),
            (
                "constraints.max_dimensions_m.propeller_diameter",
                d.propeller_diameter,
            ),
            ("constraints.max_stress_pa", c.max_stress_pa),
            ("constraints.water_density", c.water_density),
            ("constraints.hull_material_density", c.hull_material_density),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(PipelineError::Spec(format!("{name} must be > 0, got {v}")));
            }
        }
        Ok(())
    }
}
