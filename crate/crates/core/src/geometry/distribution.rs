//! Spanwise chord and pitch laws over the normalized span coordinate.

use super::{BladeDesignParams, ChordMode, GeometryError, PitchMode};

/// Maps a spanwise position `z ∈ [0, length]` to `r = z / length`.
pub fn normalized_coord(z: f64, length: f64) -> Result<f64, GeometryError> {
    if !(length.is_finite() && length > 0.0) {
        return Err(GeometryError::Domain(format!(
            "span length must be > 0, got {length}"
        )));
    }
    if !(0.0..=length).contains(&z) {
        return Err(GeometryError::Domain(format!(
            "station z = {z} outside [0, {length}]"
        )));
    }
    Ok(z / length)
}

fn check_unit(r: f64) -> Result<(), GeometryError> {
    if (0.0..=1.0).contains(&r) {
        Ok(())
    } else {
        Err(GeometryError::Domain(format!(
            "normalized coordinate r = {r} outside [0, 1]"
        )))
    }
}

/// Two linear pieces meeting at `mid` for `r = 0.5`.
fn piecewise_midspan(r: f64, root: f64, mid: f64, tip: f64) -> f64 {
    if r <= 0.5 {
        root + (mid - root) * (2.0 * r)
    } else {
        mid + (tip - mid) * (2.0 * r - 1.0)
    }
}

/// Local chord length at normalized span `r`.
pub fn chord_at(r: f64, params: &BladeDesignParams) -> Result<f64, GeometryError> {
    check_unit(r)?;
    let linear = params.chord_root + (params.chord_tip - params.chord_root) * r;
    let chord = match params.chord_mode {
        ChordMode::Linear => linear,
        ChordMode::GaussianBulge => {
            let d = r - params.bulge_r0;
            linear * (1.0 + params.bulge_beta * (-params.bulge_gamma * d * d).exp())
        }
        ChordMode::PiecewiseMidspan => {
            piecewise_midspan(r, params.chord_root, params.chord_mid, params.chord_tip)
        }
    };
    Ok(chord)
}

/// Local pitch angle (radians) at normalized span `r`.
pub fn pitch_at(r: f64, params: &BladeDesignParams) -> Result<f64, GeometryError> {
    check_unit(r)?;
    let pitch = match params.pitch_mode {
        PitchMode::Linear => params.pitch_root + (params.pitch_tip - params.pitch_root) * r,
        PitchMode::PiecewiseMidspan => {
            piecewise_midspan(r, params.pitch_root, params.pitch_mid, params.pitch_tip)
        }
    };
    Ok(pitch)
}
