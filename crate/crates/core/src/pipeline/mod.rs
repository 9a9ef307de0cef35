//! Spec-to-artifacts pipeline: planning, stage execution, human review
//! checkpoints and autonomy classification.

mod amd;
mod plan;
mod run;
mod spec;

pub use amd::{classify_amd_level, AmdLevel};
pub use plan::{
    default_bounds, plan, set_param, BuoyancyPlan, Checkpoint, ControlPlan, LogEntry, LogKind,
    OptimizerPlan, PipelinePlan, Stage, DEFAULT_BUDGET, DEFAULT_PENALTY_WEIGHT, DEFAULT_SEGMENT_MS,
    PROPULSORS,
};
pub use run::{
    hydro_report, run_pipeline, sections_csv, without_timestamp, RunOptions, RunReport, RunStatus,
    StageRecord, StageStatus, REPORT_FILE, TIMESTAMP_KEY,
};
pub use spec::{Constraints, DesignSpec, Functional, MaxDimensions, Override};

use thiserror::Error;

use crate::optimize::OptimizeError;

/// Length unit for exported meshes and tables. Internal values are meters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Units {
    #[default]
    Meters,
    Millimeters,
}

impl Units {
    pub fn scale(self) -> f64 {
        match self {
            Units::Meters => 1.0,
            Units::Millimeters => 1000.0,
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            Units::Meters => "m",
            Units::Millimeters => "mm",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error("design spec error: {0}")]
    Spec(String),
    #[error("planning error: constraint {constraint}: {reason}")]
    Planning { constraint: String, reason: String },
    #[error("override error at `{path}`: {reason}")]
    Override { path: String, reason: String },
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl From<OptimizeError> for PipelineError {
    fn from(e: OptimizeError) -> Self {
        PipelineError::InvalidPlan(e.to_string())
    }
}
