//! Strip-theory thrust and torque without induced-velocity iteration.
//!
//! At each station of radius `ρs = R_hub + r·L` the inflow angle is
//! `φ = atan2(V, ω ρs)`, the angle of attack `a = α(r) − φ`, and the section
//! coefficients follow a thin-foil line with a stall cap:
//!
//! ```text
//! Cl = clamp(2π a, ±1.2)        Cd = 0.008 + 0.01 Cl²
//! dT/dρ = ½ ρ W² C (Cl cos φ − Cd sin φ)
//! dQ/dρ = ½ ρ W² C (Cl sin φ + Cd cos φ) ρs
//! ```
//!
//! Loads are integrated with the trapezoid rule over the uniform station grid.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{chord_at, pitch_at, BladeDesignParams};

use super::HydroError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatingPoint {
    pub rpm: f64,
    /// Axial inflow speed at the propeller plane (m/s).
    pub advance_speed: f64,
    /// kg/m³
    pub fluid_density: f64,
    /// m²/s; carried for reporting, the section model is Reynolds-independent.
    pub kinematic_viscosity: f64,
}

impl Default for OperatingPoint {
    fn default() -> Self {
        Self {
            rpm: 3000.0,
            advance_speed: 0.5,
            fluid_density: 998.0,
            kinematic_viscosity: 1.0e-6,
        }
    }
}

impl OperatingPoint {
    pub fn omega(&self) -> f64 {
        self.rpm * 2.0 * PI / 60.0
    }

    pub fn validate(&self) -> Result<(), HydroError> {
        if !(self.rpm.is_finite() && self.rpm > 0.0) {
            return Err(HydroError::OperatingPoint(format!(
                "rpm must be > 0, got {}",
                self.rpm
            )));
        }
        if !(self.advance_speed.is_finite() && self.advance_speed >= 0.0) {
            return Err(HydroError::OperatingPoint(format!(
                "advance speed must be >= 0, got {}",
                self.advance_speed
            )));
        }
        if !(self.fluid_density.is_finite() && self.fluid_density > 0.0) {
            return Err(HydroError::OperatingPoint(format!(
                "fluid density must be > 0, got {}",
                self.fluid_density
            )));
        }
        Ok(())
    }
}

/// Section polar of the strip model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SectionModel {
    pub lift_slope: f64,
    pub stall_cl: f64,
    /// Parasitic drag coefficient.
    pub cd0: f64,
    /// Induced-like drag factor on `Cl²`.
    pub cd2: f64,
}

impl Default for SectionModel {
    fn default() -> Self {
        Self {
            lift_slope: 2.0 * PI,
            stall_cl: 1.2,
            cd0: 0.008,
            cd2: 0.01,
        }
    }
}

impl SectionModel {
    pub fn lift(&self, angle_of_attack: f64) -> f64 {
        (self.lift_slope * angle_of_attack).clamp(-self.stall_cl, self.stall_cl)
    }

    pub fn drag(&self, cl: f64) -> f64 {
        self.cd0 + self.cd2 * cl * cl
    }
}

/// Spanwise load at one station, summed over all blades.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StationLoad {
    /// Normalized span coordinate.
    pub r: f64,
    /// Thrust per unit radius (N/m).
    pub thrust_per_length: f64,
    /// Torque per unit radius (N·m/m).
    pub torque_per_length: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct HydroResult {
    /// N
    pub thrust: f64,
    /// N·m
    pub torque: f64,
    /// `T V / (Q ω)`; zero at `V = 0` and whenever thrust is not positive.
    pub efficiency: f64,
    pub station_loads: Vec<StationLoad>,
}

/// Evaluates the design at the operating point with the default section model.
pub fn bem_evaluate(
    params: &BladeDesignParams,
    op: &OperatingPoint,
) -> Result<HydroResult, HydroError> {
    bem_evaluate_with(params, op, &SectionModel::default())
}

pub fn bem_evaluate_with(
    params: &BladeDesignParams,
    op: &OperatingPoint,
    model: &SectionModel,
) -> Result<HydroResult, HydroError> {
    bem_evaluate_with_pitch(params, op, model, |r, _| pitch_at(r, params))
}

/// Like [`bem_evaluate_with`], with the local pitch supplied by `pitch(r, φ)`
/// instead of the design's pitch law.
pub fn bem_evaluate_with_pitch<F>(
    params: &BladeDesignParams,
    op: &OperatingPoint,
    model: &SectionModel,
    pitch: F,
) -> Result<HydroResult, HydroError>
where
    F: Fn(f64, f64) -> Result<f64, crate::geometry::GeometryError>,
{
    params.validate()?;
    op.validate()?;
    let omega = op.omega();
    let v = op.advance_speed;
    let n = params.n_sections;
    let blades = params.n_blades as f64;

    let mut station_loads = Vec::with_capacity(n);
    for i in 0..n {
        let r = i as f64 / (n - 1) as f64;
        let radius = params.hub_radius() + r * params.span;
        let tangential = omega * radius;
        let phi = v.atan2(tangential);
        let aoa = pitch(r, phi)? - phi;
        let cl = model.lift(aoa);
        let cd = model.drag(cl);
        let (sin_phi, cos_phi) = phi.sin_cos();
        let dynamic =
            0.5 * op.fluid_density * (v * v + tangential * tangential) * chord_at(r, params)?;
        station_loads.push(StationLoad {
            r,
            thrust_per_length: blades * dynamic * (cl * cos_phi - cd * sin_phi),
            torque_per_length: blades * dynamic * (cl * sin_phi + cd * cos_phi) * radius,
        });
    }

    let h = params.span / (n - 1) as f64;
    let trapezoid = |f: fn(&StationLoad) -> f64| {
        let inner: f64 = station_loads[1..n - 1].iter().map(f).sum();
        h * (0.5 * (f(&station_loads[0]) + f(&station_loads[n - 1])) + inner)
    };
    let thrust = trapezoid(|s| s.thrust_per_length);
    let torque = trapezoid(|s| s.torque_per_length);
    let efficiency = if v > 0.0 && thrust > 0.0 && torque > 0.0 {
        thrust * v / (torque * omega)
    } else {
        0.0
    };
    Ok(HydroResult {
        thrust,
        torque,
        efficiency,
        station_loads,
    })
}

impl fmt::Display for HydroResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "thrust_N = {:.9e}", self.thrust)?;
        writeln!(f, "torque_Nm = {:.9e}", self.torque)?;
        writeln!(f, "efficiency = {:.9e}", self.efficiency)?;
        writeln!(f, "stations = {}", self.station_loads.len())?;
        writeln!(f, "[stations]")?;
        writeln!(f, "r,dT_dr_N_per_m,dQ_dr_Nm_per_m")?;
        for s in &self.station_loads {
            writeln!(
                f,
                "{:.9},{:.9e},{:.9e}",
                s.r, s.thrust_per_length, s.torque_per_length
            )?;
        }
        Ok(())
    }
}
