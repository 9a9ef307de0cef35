use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ControlError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ControlCommand {
    Forward,
    Backward,
    Left,
    Right,
    Stop,
}

impl ControlCommand {
    pub const ALL: [ControlCommand; 5] = [
        ControlCommand::Forward,
        ControlCommand::Backward,
        ControlCommand::Left,
        ControlCommand::Right,
        ControlCommand::Stop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ControlCommand::Forward => "forward",
            ControlCommand::Backward => "backward",
            ControlCommand::Left => "left",
            ControlCommand::Right => "right",
            ControlCommand::Stop => "stop",
        }
    }
}

impl fmt::Display for ControlCommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ControlCommand {
    type Err = ControlError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ControlCommand::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| ControlError::UnknownCommand {
                token: s.to_string(),
                line: None,
            })
    }
}

/// Parses one serial frame. Surrounding whitespace, including the LF
/// terminator and any CR, is ignored; a blank frame yields `None`.
pub fn parse_command(frame: &str) -> Result<Option<ControlCommand>, ControlError> {
    let token = frame.trim();
    if token.is_empty() {
        return Ok(None);
    }
    token.parse().map(Some)
}

/// Parses a command script with one command per line. Blank lines are skipped.
pub fn parse_script(text: &str) -> Result<Vec<ControlCommand>, ControlError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        match parse_command(line) {
            Ok(Some(cmd)) => out.push(cmd),
            Ok(None) => {}
            Err(ControlError::UnknownCommand { token, .. }) => {
                return Err(ControlError::UnknownCommand {
                    token,
                    line: Some(i + 1),
                })
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Splits a byte stream into LF-terminated frames, as a serial reader would.
///
/// Bytes after the last LF are buffered until more input arrives.
#[derive(Clone, Debug, Default)]
pub struct FrameDecoder {
    pending: Vec<u8>,
}

impl FrameDecoder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Feeds bytes and returns the commands of every completed frame.
    pub fn push(&mut self, bytes: &[u8]) -> Vec<Result<ControlCommand, ControlError>> {
        let mut out = Vec::new();
        for &b in bytes {
            if b == b'\n' {
                let frame = String::from_utf8_lossy(&self.pending).into_owned();
                self.pending.clear();
                match parse_command(&frame) {
                    Ok(Some(cmd)) => out.push(Ok(cmd)),
                    Ok(None) => {}
                    Err(e) => out.push(Err(e)),
                }
            } else {
                self.pending.push(b);
            }
        }
        out
    }

    pub fn pending(&self) -> &[u8] {
        &self.pending
    }
}

/// H-bridge input state for one motor. `in1 && in2` is unrepresentable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MotorState {
    in1: bool,
    in2: bool,
    pwm_level: u8,
}

impl MotorState {
    pub const STOP: MotorState = MotorState {
        in1: false,
        in2: false,
        pwm_level: 0,
    };

    pub fn new(in1: bool, in2: bool, pwm_level: u8) -> Result<Self, ControlError> {
        if in1 && in2 {
            return Err(ControlError::ShootThrough);
        }
        Ok(Self {
            in1,
            in2,
            pwm_level,
        })
    }

    pub fn forward(pwm_level: u8) -> Self {
        Self {
            in1: true,
            in2: false,
            pwm_level,
        }
    }

    pub fn reverse(pwm_level: u8) -> Self {
        Self {
            in1: false,
            in2: true,
            pwm_level,
        }
    }

    /// Signed duty in `[-1, 1]`: the sign picks the polarity, the magnitude
    /// the nearest 8-bit level. Zero is a stop.
    pub fn from_signed_duty(duty: f64) -> Result<Self, ControlError> {
        if !(-1.0..=1.0).contains(&duty) {
            return Err(ControlError::Domain(format!(
                "signed duty must be in [-1, 1], got {duty}"
            )));
        }
        let level = (duty.abs() * 255.0).round() as u8;
        Ok(if level == 0 {
            Self::STOP
        } else if duty > 0.0 {
            Self::forward(level)
        } else {
            Self::reverse(level)
        })
    }

    pub fn in1(&self) -> bool {
        self.in1
    }

    pub fn in2(&self) -> bool {
        self.in2
    }

    pub fn pwm_level(&self) -> u8 {
        self.pwm_level
    }

    pub fn duty(&self) -> f64 {
        f64::from(self.pwm_level) / 255.0
    }
}

/// 8-bit levels of the drive table.
pub const LEVEL_FORWARD: u8 = 100;
pub const LEVEL_BACKWARD: u8 = 80;
pub const LEVEL_OUTER: u8 = 150;
pub const LEVEL_INNER: u8 = 40;

/// Drive table for motors `(A, B)`. In a turn the outer motor runs fast and
/// the inner motor slow, so the vessel turns toward the slow side.
pub fn command_to_motor_states(cmd: ControlCommand) -> (MotorState, MotorState) {
    match cmd {
        ControlCommand::Forward => (
            MotorState::forward(LEVEL_FORWARD),
            MotorState::forward(LEVEL_FORWARD),
        ),
        ControlCommand::Backward => (
            MotorState::reverse(LEVEL_BACKWARD),
            MotorState::reverse(LEVEL_BACKWARD),
        ),
        ControlCommand::Left => (
            MotorState::forward(LEVEL_INNER),
            MotorState::forward(LEVEL_OUTER),
        ),
        ControlCommand::Right => (
            MotorState::forward(LEVEL_OUTER),
            MotorState::forward(LEVEL_INNER),
        ),
        ControlCommand::Stop => (MotorState::STOP, MotorState::STOP),
    }
}

/// Mixes normalized linear and angular demands into signed motor duties
/// `(A, B) = (linear − angular, linear + angular)`, each clamped to `[-1, 1]`.
pub fn differential_steer(linear: f64, angular: f64) -> Result<(f64, f64), ControlError> {
    for (name, v) in [("linear", linear), ("angular", angular)] {
        if !(-1.0..=1.0).contains(&v) {
            return Err(ControlError::Domain(format!(
                "{name} demand must be in [-1, 1], got {v}"
            )));
        }
    }
    Ok((
        (linear - angular).clamp(-1.0, 1.0),
        (linear + angular).clamp(-1.0, 1.0),
    ))
}

pub fn steer_states(linear: f64, angular: f64) -> Result<(MotorState, MotorState), ControlError> {
    let (a, b) = differential_steer(linear, angular)?;
    Ok((
        MotorState::from_signed_duty(a)?,
        MotorState::from_signed_duty(b)?,
    ))
}
