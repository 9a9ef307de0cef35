//! Hydrodynamic feedback for the optimizer: a blade-element surrogate and
//! simple stress utilities.

mod bem;
mod stress;

pub use bem::{
    bem_evaluate, bem_evaluate_with, bem_evaluate_with_pitch, HydroResult, OperatingPoint,
    SectionModel, StationLoad,
};
pub use stress::{root_bending_stress, von_mises, StressState};

use thiserror::Error;

use crate::geometry::GeometryError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HydroError {
    #[error("operating point error: {0}")]
    OperatingPoint(String),
    #[error("stress undefined: {0}")]
    StressUndefined(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
