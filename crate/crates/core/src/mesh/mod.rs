//! Triangle meshes: lofting blades, propeller and hull assembly, volume,
//! watertightness, buoyancy and STL I/O.

mod buoyancy;
mod hull;
mod loft;
mod propeller;
mod stl;
mod topology;
mod trimesh;

pub use buoyancy::{buoyancy_check, volume_below, BuoyancyReport, DRAFT_TOLERANCE};
pub use hull::{generate_hull, hull_envelope, planform, planform_area, shell_volume, HullParams};
pub use loft::loft_sections;
pub use propeller::{
    assemble_propeller, blade_angle, blade_local_mesh, blade_mesh, cylinder, hub_mesh, HUB_SEGMENTS,
};
pub use stl::{export_stl, import_stl, StlFormat};
pub use topology::{is_watertight, mesh_volume, WatertightReport};
pub use trimesh::{MeshStats, TriMesh};

use thiserror::Error;

use crate::geometry::GeometryError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeshError {
    #[error("triangle {triangle} references vertex {index}, mesh has {vertex_count}")]
    IndexOutOfRange {
        triangle: usize,
        index: usize,
        vertex_count: usize,
    },
    #[error("triangle {triangle} has zero area")]
    DegenerateTriangle { triangle: usize },
    #[error("loft error: {0}")]
    Loft(String),
    #[error("section ordering error: {0}")]
    Ordering(String),
    #[error("fit error: {0}")]
    Fit(String),
    #[error("hull parameter error: {0}")]
    HullParameter(String),
    #[error("mesh is not watertight ({boundary} boundary, {non_manifold} non-manifold, {inconsistent} misoriented edges)")]
    NotWatertight {
        boundary: usize,
        non_manifold: usize,
        inconsistent: usize,
    },
    #[error("invalid mass input: {0}")]
    InvalidMass(String),
    #[error("hull sinks: mass {mass:.6} kg exceeds full displacement {capacity:.6} kg")]
    Sinking { mass: f64, capacity: f64 },
    #[error("STL parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
