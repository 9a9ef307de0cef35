use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use super::GeometryError;

/// Spanwise chord law.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChordMode {
    Linear,
    GaussianBulge,
    PiecewiseMidspan,
}

/// Spanwise pitch law.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PitchMode {
    Linear,
    PiecewiseMidspan,
}

/// Chordwise sample distribution for airfoil sections.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChordSpacing {
    /// `x = (1 - cos θ) / 2`, clustered at both edges.
    #[default]
    Cosine,
    Uniform,
}

/// Complete parameter vector for one propeller design.
///
/// Lengths are meters, angles radians. Blade-local frame: `z` runs radially
/// from root (`z = 0`) to tip (`z = span`), `X` is chordwise (rotation
/// direction at zero pitch) and `Y` is axial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BladeDesignParams {
    /// Blade length along the span (m).
    pub span: f64,
    pub chord_root: f64,
    pub chord_tip: f64,
    /// Mid-span chord, used by [`ChordMode::PiecewiseMidspan`].
    pub chord_mid: f64,
    pub pitch_root: f64,
    pub pitch_tip: f64,
    /// Mid-span pitch, used by [`PitchMode::PiecewiseMidspan`].
    pub pitch_mid: f64,
    /// Gaussian bulge amplitude.
    pub bulge_beta: f64,
    /// Gaussian bulge sharpness.
    pub bulge_gamma: f64,
    /// Gaussian bulge center in normalized span.
    pub bulge_r0: f64,
    pub rake_angle: f64,
    pub skew_angle: f64,
    /// Maximum section thickness as a fraction of chord.
    pub thickness_ratio: f64,
    /// Constant thickness scaling factor applied to the section `Y` coordinate.
    pub thickness_scale: f64,
    /// Chordwise position of the pitch (twist) axis, fraction of chord.
    pub pitch_axis: f64,
    pub chord_mode: ChordMode,
    pub pitch_mode: PitchMode,
    #[serde(default)]
    pub chord_spacing: ChordSpacing,
    pub n_sections: usize,
    pub n_chord_points: usize,
    pub n_blades: usize,
    pub hub_diameter: f64,
    /// Axial length of the hub cylinder (m).
    pub hub_length: f64,
}

impl Default for BladeDesignParams {
    /// Three blades of 26 mm on a 20 mm hub with mid-span loaded chord and pitch.
    fn default() -> Self {
        Self {
            span: 0.026,
            chord_root: 0.010,
            chord_tip: 0.008,
            chord_mid: 0.016,
            pitch_root: 0.45,
            pitch_tip: 0.20,
            pitch_mid: 0.30,
            bulge_beta: 0.2,
            bulge_gamma: 50.0,
            bulge_r0: 0.5,
            rake_angle: 0.0,
            skew_angle: 0.0,
            thickness_ratio: 0.12,
            thickness_scale: 1.0,
            pitch_axis: 0.25,
            chord_mode: ChordMode::PiecewiseMidspan,
            pitch_mode: PitchMode::PiecewiseMidspan,
            chord_spacing: ChordSpacing::Cosine,
            n_sections: 11,
            n_chord_points: 24,
            n_blades: 3,
            hub_diameter: 0.020,
            hub_length: 0.012,
        }
    }
}

impl BladeDesignParams {
    pub fn hub_radius(&self) -> f64 {
        0.5 * self.hub_diameter
    }

    /// Checks every field invariant, naming the first offending field.
    pub fn validate(&self) -> Result<(), GeometryError> {
        fn positive(field: &'static str, value: f64) -> Result<(), GeometryError> {
            if value.is_finite() && value > 0.0 {
                Ok(())
            } else {
                Err(GeometryError::InvalidParameter {
                    field,
                    reason: format!("must be > 0, got {value}"),
                })
            }
        }
        fn unit_interval(field: &'static str, value: f64) -> Result<(), GeometryError> {
            if (0.0..=1.0).contains(&value) {
                Ok(())
            } else {
                Err(GeometryError::InvalidParameter {
                    field,
                    reason: format!("must lie in [0, 1], got {value}"),
                })
            }
        }
        fn finite_tangent(field: &'static str, value: f64) -> Result<(), GeometryError> {
            if value.is_finite() && value.abs() < FRAC_PI_2 {
                Ok(())
            } else {
                Err(GeometryError::InvalidParameter {
                    field,
                    reason: format!("|angle| must be < pi/2, got {value}"),
                })
            }
        }
        fn finite(field: &'static str, value: f64) -> Result<(), GeometryError> {
            if value.is_finite() {
                Ok(())
            } else {
                Err(GeometryError::InvalidParameter {
                    field,
                    reason: "must be finite".into(),
                })
            }
        }

        positive("span", self.span)?;
        positive("chord_root", self.chord_root)?;
        positive("chord_tip", self.chord_tip)?;
        positive("chord_mid", self.chord_mid)?;
        finite("pitch_root", self.pitch_root)?;
        finite("pitch_tip", self.pitch_tip)?;
        finite("pitch_mid", self.pitch_mid)?;
        // The bulge factor 1 + beta * exp(..) must stay positive for any r.
        if !(self.bulge_beta.is_finite() && self.bulge_beta > -1.0) {
            return Err(GeometryError::InvalidParameter {
                field: "bulge_beta",
                reason: format!("must be > -1, got {}", self.bulge_beta),
            });
        }
        if !(self.bulge_gamma.is_finite() && self.bulge_gamma >= 0.0) {
            return Err(GeometryError::InvalidParameter {
                field: "bulge_gamma",
                reason: format!("must be >= 0, got {}", self.bulge_gamma),
            });
        }
        unit_interval("bulge_r0", self.bulge_r0)?;
        finite_tangent("rake_angle", self.rake_angle)?;
        finite_tangent("skew_angle", self.skew_angle)?;
        positive("thickness_ratio", self.thickness_ratio)?;
        positive("thickness_scale", self.thickness_scale)?;
        unit_interval("pitch_axis", self.pitch_axis)?;
        if self.n_sections < 2 {
            return Err(GeometryError::InvalidParameter {
                field: "n_sections",
                reason: format!("must be >= 2, got {}", self.n_sections),
            });
        }
        if self.n_chord_points < 8 {
            return Err(GeometryError::InvalidParameter {
                field: "n_chord_points",
                reason: format!("must be >= 8, got {}", self.n_chord_points),
            });
        }
        if self.n_blades < 1 {
            return Err(GeometryError::InvalidParameter {
                field: "n_blades",
                reason: "must be >= 1".into(),
            });
        }
        positive("hub_diameter", self.hub_diameter)?;
        positive("hub_length", self.hub_length)?;
        Ok(())
    }
}
