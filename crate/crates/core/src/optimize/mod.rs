//! Bounded derivative-free refinement of blade designs.

mod bounds;
mod objective;
mod search;

pub use bounds::{FieldBound, ParameterBounds, Tunable};
pub use objective::{objective, ObjectiveConfig, Target};
pub use search::{
    best, evaluate_design, history_csv, optimize, optimize_with, Evaluation, IterationRecord,
    PatternSearch, SearchState, StepOutcome, INITIAL_STEP, MIN_STEP,
};

use thiserror::Error;

use crate::hydro::HydroError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OptimizeError {
    #[error("optimizer configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Hydro(#[from] HydroError),
}
