use crate::geometry::BladeDesignParams;

use super::{HydroError, HydroResult};

/// Principal stresses (Pa).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StressState {
    pub sigma1: f64,
    pub sigma2: f64,
    pub sigma3: f64,
}

impl StressState {
    pub fn new(sigma1: f64, sigma2: f64, sigma3: f64) -> Self {
        Self {
            sigma1,
            sigma2,
            sigma3,
        }
    }

    pub fn uniaxial(sigma: f64) -> Self {
        Self::new(sigma, 0.0, 0.0)
    }
}

/// Equivalent von Mises stress from principal stresses.
pub fn von_mises(s: StressState) -> f64 {
    let d12 = s.sigma1 - s.sigma2;
    let d23 = s.sigma2 - s.sigma3;
    let d31 = s.sigma3 - s.sigma1;
    (0.5 * (d12 * d12 + d23 * d23 + d31 * d31)).sqrt()
}

/// Bending stress at the blade root, treating the blade as a cantilever
/// with its share of thrust acting at mid-span and a rectangular root
/// section of width `C_r` and height `t_max · C_r`.
pub fn root_bending_stress(
    result: &HydroResult,
    params: &BladeDesignParams,
) -> Result<f64, HydroError> {
    let per_blade = result.thrust / params.n_blades as f64;
    if !(per_blade > 0.0) {
        return Err(HydroError::StressUndefined(format!(
            "thrust per blade must be > 0, got {per_blade}"
        )));
    }
    let moment = per_blade * 0.5 * params.span;
    let height = params.thickness_ratio * params.chord_root;
    let modulus = params.chord_root * height * height / 6.0;
    Ok(moment / modulus)
}
