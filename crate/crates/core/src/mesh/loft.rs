use crate::geometry::Section3D;

use super::{MeshError, TriMesh};

/// Shoelace area of the section outline projected onto the XY plane.
fn projected_area(points: &[[f64; 3]]) -> f64 {
    let n = points.len();
    (0..n)
        .map(|i| {
            let a = points[i];
            let b = points[(i + 1) % n];
            a[0] * b[1] - b[0] * a[1]
        })
        .sum::<f64>()
        * 0.5
}

/// Skins a stack of closed sections into a watertight solid.
///
/// Adjacent sections are joined by two triangles per outline segment and
/// both ends are capped with a vertex fan, giving
/// `2·p·(s − 1) + 2·(p − 2)` triangles for `s` sections of `p` points.
/// Caps assume convex outlines. Winding is chosen so normals face outward.
pub fn loft_sections(sections: &[Section3D]) -> Result<TriMesh, MeshError> {
    if sections.len() < 2 {
        return Err(MeshError::Loft(format!(
            "need at least 2 sections, got {}",
            sections.len()
        )));
    }
    let p = sections[0].points.len();
    if p < 3 {
        return Err(MeshError::Loft(format!(
            "sections need at least 3 points, got {p}"
        )));
    }
    if let Some((i, s)) = sections
        .iter()
        .enumerate()
        .find(|(_, s)| s.points.len() != p)
    {
        return Err(MeshError::Loft(format!(
            "section {i} has {} points, expected {p}",
            s.points.len()
        )));
    }
    if let Some(i) = sections
        .windows(2)
        .position(|w| !(w[1].station_z > w[0].station_z))
    {
        return Err(MeshError::Ordering(format!(
            "station {} (z = {}) does not exceed station {} (z = {})",
            i + 1,
            sections[i + 1].station_z,
            i,
            sections[i].station_z
        )));
    }

    let s = sections.len();
    let vertices: Vec<[f64; 3]> = sections
        .iter()
        .flat_map(|sec| sec.points.iter().copied())
        .collect();
    let mut triangles = Vec::with_capacity(2 * p * (s - 1) + 2 * (p - 2));
    for i in 0..s - 1 {
        let lo = i * p;
        let hi = lo + p;
        for j in 0..p {
            let k = (j + 1) % p;
            triangles.push([lo + j, lo + k, hi + k]);
            triangles.push([lo + j, hi + k, hi + j]);
        }
    }
    let tip = (s - 1) * p;
    for j in 1..p - 1 {
        triangles.push([0, j + 1, j]);
        triangles.push([tip, tip + j, tip + j + 1]);
    }
    // Above assumes counter-clockwise outlines seen from +z.
    if projected_area(&sections[0].points) < 0.0 {
        for t in &mut triangles {
            t.swap(1, 2);
        }
    }
    TriMesh::new(vertices, triangles)
}
