use super::{
    chord_at, make_airfoil, normalized_coord, pitch_at, AirfoilSection, BladeDesignParams,
    GeometryError,
};

/// A section placed at its spanwise station, in meters.
#[derive(Clone, Debug, PartialEq)]
pub struct Section3D {
    pub station_z: f64,
    pub points: Vec<[f64; 3]>,
}

/// Scales, twists and translates a normalized section to station `z`.
///
/// Order: scale by the local chord (and the constant thickness factor on
/// `Y`), rotate by the local pitch, then shift `X` by the skew offset
/// `z tan(skew)` and `Y` by the rake offset `-z tan(rake)`.
pub fn transform_section(
    section: &AirfoilSection,
    z: f64,
    params: &BladeDesignParams,
) -> Result<Section3D, GeometryError> {
    let r = normalized_coord(z, params.span)?;
    let chord = chord_at(r, params)?;
    let (sin_a, cos_a) = pitch_at(r, params)?.sin_cos();
    let rake_offset = -z * params.rake_angle.tan();
    let skew_offset = r * params.span * params.skew_angle.tan();

    let points = section
        .points
        .iter()
        .map(|&[x, y]| {
            let sx = chord * x;
            let sy = chord * params.thickness_scale * y;
            let xr = sx * cos_a - sy * sin_a;
            let yr = sx * sin_a + sy * cos_a;
            [xr + skew_offset, yr + rake_offset, z]
        })
        .collect();
    Ok(Section3D {
        station_z: z,
        points,
    })
}

/// Section stations, uniformly spaced from root to tip.
pub fn station_positions(params: &BladeDesignParams) -> Vec<f64> {
    let last = (params.n_sections - 1) as f64;
    (0..params.n_sections)
        .map(|i| params.span * (i as f64 / last))
        .collect()
}

/// All placed sections of one blade, ordered root to tip.
pub fn generate_blade_sections(
    params: &BladeDesignParams,
) -> Result<Vec<Section3D>, GeometryError> {
    params.validate()?;
    let airfoil = make_airfoil(
        params.n_chord_points,
        params.thickness_ratio,
        params.pitch_axis,
        params.chord_spacing,
    )?;
    station_positions(params)
        .into_iter()
        .map(|z| transform_section(&airfoil, z, params))
        .collect()
}
