//! Parametric blade geometry: spanwise chord and pitch laws, symmetric
//! airfoil sections, and placement of sections in the blade frame.
//!
//! Everything here is a pure function of [`BladeDesignParams`].

mod airfoil;
mod distribution;
mod params;
mod section;

pub use airfoil::{make_airfoil, thickness, AirfoilSection};
pub use distribution::{chord_at, normalized_coord, pitch_at};
pub use params::{BladeDesignParams, ChordMode, ChordSpacing, PitchMode};
pub use section::{generate_blade_sections, station_positions, transform_section, Section3D};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate section: {0}")]
    DegenerateSection(String),
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },
}
