use super::trimesh::{cross, sub};
use super::{is_watertight, MeshError, TriMesh};

/// Target bracket width for the draft bisection (m).
pub const DRAFT_TOLERANCE: f64 = 1e-6;
const MAX_BISECTIONS: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct BuoyancyReport {
    /// Depth of the waterline above the lowest hull point (m).
    pub draft: f64,
    /// Hull depth minus draft (m); the deck edge height above water.
    pub freeboard_margin: f64,
    pub displaced_volume: f64,
    pub displaced_mass: f64,
}

/// Volume of a closed, outward-oriented mesh lying below the plane `z = level`.
///
/// Each triangle is clipped to the half-space and contributes the flux of
/// `F = (0, 0, z − level)`; the waterplane cap carries zero flux, so it never
/// has to be built.
pub fn volume_below(mesh: &TriMesh, level: f64) -> f64 {
    let mut total = 0.0;
    let mut poly: Vec<[f64; 3]> = Vec::with_capacity(4);
    for t in 0..mesh.triangle_count() {
        let corners = mesh.corners(t);
        poly.clear();
        for i in 0..3 {
            let a = corners[i];
            let b = corners[(i + 1) % 3];
            let a_in = a[2] <= level;
            let b_in = b[2] <= level;
            if a_in {
                poly.push(a);
            }
            if a_in != b_in {
                let s = (level - a[2]) / (b[2] - a[2]);
                poly.push([a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]), level]);
            }
        }
        for k in 1..poly.len().saturating_sub(1) {
            let (a, b, c) = (poly[0], poly[k], poly[k + 1]);
            let area_z = 0.5 * cross(sub(b, a), sub(c, a))[2];
            total += area_z * ((a[2] + b[2] + c[2]) / 3.0 - level);
        }
    }
    total
}

/// Finds the draft at which displaced water balances `total_mass`.
///
/// Bisection on the waterline height; the bracket is narrowed until it is
/// below [`DRAFT_TOLERANCE`] and the mass residual is below `1e-9` relative.
pub fn buoyancy_check(
    hull: &TriMesh,
    total_mass: f64,
    water_density: f64,
) -> Result<BuoyancyReport, MeshError> {
    if !(total_mass.is_finite() && total_mass > 0.0) {
        return Err(MeshError::InvalidMass(format!(
            "total mass must be > 0, got {total_mass}"
        )));
    }
    if !(water_density.is_finite() && water_density > 0.0) {
        return Err(MeshError::InvalidMass(format!(
            "water density must be > 0, got {water_density}"
        )));
    }
    let report = is_watertight(hull);
    if !report.is_watertight() {
        return Err(MeshError::NotWatertight {
            boundary: report.boundary_edges.len(),
            non_manifold: report.non_manifold_edges.len(),
            inconsistent: report.inconsistent_edges.len(),
        });
    }
    let (lo, hi) = hull
        .bounding_box()
        .ok_or_else(|| MeshError::Loft("empty hull mesh".into()))?;
    let (keel, deck) = (lo[2], hi[2]);
    let capacity = water_density * volume_below(hull, deck);
    if total_mass > capacity {
        return Err(MeshError::Sinking {
            mass: total_mass,
            capacity,
        });
    }

    let mass_at = |level: f64| water_density * volume_below(hull, level);
    let (mut a, mut b) = (keel, deck);
    let mut level = 0.5 * (a + b);
    for _ in 0..MAX_BISECTIONS {
        level = 0.5 * (a + b);
        let residual = mass_at(level) - total_mass;
        if b - a < DRAFT_TOLERANCE && residual.abs() <= 1e-9 * total_mass {
            break;
        }
        if residual < 0.0 {
            a = level;
        } else {
            b = level;
        }
    }
    let displaced_volume = volume_below(hull, level);
    Ok(BuoyancyReport {
        draft: level - keel,
        freeboard_margin: deck - level,
        displaced_volume,
        displaced_mass: displaced_volume * water_density,
    })
}
