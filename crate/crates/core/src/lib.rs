//! Parametric propeller and hull design toolkit.
//!
//! The crate maps a design parameter vector to blade sections and watertight
//! meshes, scores designs with a blade-element surrogate, refines them with a
//! bounded pattern search, simulates the PWM motor drive, and chains all of
//! it into a reproducible, file-based pipeline.

pub mod control;
pub mod geometry;
pub mod hydro;
pub mod mesh;
pub mod optimize;
pub mod pipeline;
