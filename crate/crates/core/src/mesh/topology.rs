//! Edge-incidence checks and divergence-theorem volume.

use std::collections::BTreeMap;

use super::trimesh::{cross, dot};
use super::{MeshError, TriMesh};

/// Defects found by [`is_watertight`]. Edges are reported as sorted vertex pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WatertightReport {
    /// Edges used by exactly one triangle.
    pub boundary_edges: Vec<[usize; 2]>,
    /// Edges used by three or more triangles.
    pub non_manifold_edges: Vec<[usize; 2]>,
    /// Edges shared by two triangles that traverse them in the same direction.
    pub inconsistent_edges: Vec<[usize; 2]>,
}

impl WatertightReport {
    pub fn is_watertight(&self) -> bool {
        self.boundary_edges.is_empty()
            && self.non_manifold_edges.is_empty()
            && self.inconsistent_edges.is_empty()
    }
}

/// Closed 2-manifold check: every undirected edge has exactly two incident
/// triangles whose half-edges run in opposite directions.
pub fn is_watertight(mesh: &TriMesh) -> WatertightReport {
    // (forward count, backward count) per undirected edge, with forward meaning lo -> hi.
    let mut edges: BTreeMap<[usize; 2], (u32, u32)> = BTreeMap::new();
    for &[a, b, c] in mesh.triangles() {
        for (u, v) in [(a, b), (b, c), (c, a)] {
            let entry = edges.entry([u.min(v), u.max(v)]).or_default();
            if u < v {
                entry.0 += 1;
            } else {
                entry.1 += 1;
            }
        }
    }
    let mut report = WatertightReport::default();
    for (edge, (fwd, bwd)) in edges {
        match fwd + bwd {
            1 => report.boundary_edges.push(edge),
            2 if fwd == 1 => {}
            2 => report.inconsistent_edges.push(edge),
            _ => report.non_manifold_edges.push(edge),
        }
    }
    report
}

/// Signed enclosed volume, summing tetrahedra against the origin.
/// Positive for outward-facing triangles.
pub fn mesh_volume(mesh: &TriMesh) -> Result<f64, MeshError> {
    let report = is_watertight(mesh);
    if !report.is_watertight() {
        return Err(MeshError::NotWatertight {
            boundary: report.boundary_edges.len(),
            non_manifold: report.non_manifold_edges.len(),
            inconsistent: report.inconsistent_edges.len(),
        });
    }
    Ok(signed_volume_unchecked(mesh))
}

pub(crate) fn signed_volume_unchecked(mesh: &TriMesh) -> f64 {
    (0..mesh.triangle_count())
        .map(|t| {
            let [a, b, c] = mesh.corners(t);
            dot(a, cross(b, c))
        })
        .sum::<f64>()
        / 6.0
}
