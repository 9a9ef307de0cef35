//! Hub plus replicated blades, kept as separate closed shells.
//!
//! Global frame: the hub axis is `+z`. Blade `k` points along
//! `e_r = (cos θk, sin θk, 0)` with `θk = 2πk / n_blades`; its local chordwise
//! `X` maps to the tangential direction and local `Y` to the hub axis.

use std::f64::consts::{PI, TAU};

use crate::geometry::{generate_blade_sections, BladeDesignParams, Section3D};

use super::{loft_sections, MeshError, TriMesh};

/// Circumferential resolution of the hub cylinder.
pub const HUB_SEGMENTS: usize = 64;

/// Closed cylinder of the given radius and length, centered on the origin along `z`.
pub fn cylinder(radius: f64, length: f64, segments: usize) -> Result<TriMesh, MeshError> {
    if !(radius > 0.0 && length > 0.0) || segments < 3 {
        return Err(MeshError::Fit(format!(
            "invalid cylinder r = {radius}, l = {length}, n = {segments}"
        )));
    }
    let h = 0.5 * length;
    let mut vertices = Vec::with_capacity(2 * segments + 2);
    for z in [-h, h] {
        for i in 0..segments {
            let (s, c) = (TAU * i as f64 / segments as f64).sin_cos();
            vertices.push([radius * c, radius * s, z]);
        }
    }
    let bottom = vertices.len();
    vertices.push([0.0, 0.0, -h]);
    let top = vertices.len();
    vertices.push([0.0, 0.0, h]);

    let mut triangles = Vec::with_capacity(4 * segments);
    for i in 0..segments {
        let j = (i + 1) % segments;
        let (a, b) = (i, j);
        let (c, d) = (segments + j, segments + i);
        triangles.push([a, b, c]);
        triangles.push([a, c, d]);
        triangles.push([bottom, b, a]);
        triangles.push([top, d, c]);
    }
    TriMesh::new(vertices, triangles)
}

pub fn hub_mesh(params: &BladeDesignParams) -> Result<TriMesh, MeshError> {
    cylinder(params.hub_radius(), params.hub_length, HUB_SEGMENTS)
}

/// Depth below the hub surface at which the blade root is extended so that
/// the whole root outline lies inside the hub cylinder.
fn root_embedding(root: &Section3D, hub_radius: f64) -> f64 {
    let half_width = root.points.iter().map(|p| p[0].abs()).fold(0.0, f64::max);
    let sagitta = if half_width < hub_radius {
        hub_radius - (hub_radius * hub_radius - half_width * half_width).sqrt()
    } else {
        0.5 * hub_radius
    };
    sagitta + 0.05 * hub_radius
}

/// One blade in its local frame, radial coordinate measured from the hub surface.
///
/// The root outline is repeated at a small negative station so the blade
/// solid penetrates the hub.
pub fn blade_local_mesh(params: &BladeDesignParams) -> Result<TriMesh, MeshError> {
    let sections = generate_blade_sections(params)?;
    let root = &sections[0];
    let depth = root_embedding(root, params.hub_radius());
    let stub = Section3D {
        station_z: -depth,
        points: root
            .points
            .iter()
            .map(|&[x, y, _]| [x, y, -depth])
            .collect(),
    };
    let mut stack = Vec::with_capacity(sections.len() + 1);
    stack.push(stub);
    stack.extend(sections);
    loft_sections(&stack)
}

/// Angular position of blade `index` about the hub axis.
pub fn blade_angle(index: usize, n_blades: usize) -> f64 {
    2.0 * PI * index as f64 / n_blades as f64
}

/// Blade `index` placed in the global frame.
pub fn blade_mesh(params: &BladeDesignParams, index: usize) -> Result<TriMesh, MeshError> {
    let local = blade_local_mesh(params)?;
    place_blade(
        &local,
        blade_angle(index, params.n_blades),
        params.hub_radius(),
    )
}

fn place_blade(local: &TriMesh, angle: f64, hub_radius: f64) -> Result<TriMesh, MeshError> {
    let (s, c) = angle.sin_cos();
    local.map_vertices(|[x, y, z]| {
        let radial = hub_radius + z;
        [radial * c - x * s, radial * s + x * c, y]
    })
}

/// Hub followed by `n_blades` blades, as one multi-shell mesh.
pub fn assemble_propeller(params: &BladeDesignParams) -> Result<TriMesh, MeshError> {
    params.validate()?;
    if params.chord_root > params.hub_length {
        return Err(MeshError::Fit(format!(
            "root chord {} m exceeds hub length {} m",
            params.chord_root, params.hub_length
        )));
    }
    let local = blade_local_mesh(params)?;
    let mut parts = Vec::with_capacity(params.n_blades + 1);
    parts.push(hub_mesh(params)?);
    for k in 0..params.n_blades {
        parts.push(place_blade(
            &local,
            blade_angle(k, params.n_blades),
            params.hub_radius(),
        )?);
    }
    Ok(TriMesh::merge(&parts))
}
