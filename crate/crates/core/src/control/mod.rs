//! Differential-drive motor control: serial commands, H-bridge states, PWM
//! traces and duty measurement.

mod command;
mod trace;

pub use command::{
    command_to_motor_states, differential_steer, parse_command, parse_script, steer_states,
    ControlCommand, FrameDecoder, MotorState, LEVEL_BACKWARD, LEVEL_FORWARD, LEVEL_INNER,
    LEVEL_OUTER,
};
pub use trace::{
    export_trace_csv, generate_pwm_trace, measure_duty, parse_trace_csv, Channel, TraceEvent,
    DEFAULT_PWM_FREQ_HZ,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ControlError {
    #[error("unknown command `{token}`{}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    UnknownCommand { token: String, line: Option<usize> },
    #[error("in1 and in2 both high would short the H-bridge")]
    ShootThrough,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("channel {channel} has {periods} complete period(s) after the first; need at least 2")]
    InsufficientData { channel: Channel, periods: usize },
    #[error("trace line {line}: {message}")]
    TraceParse { line: usize, message: String },
}
