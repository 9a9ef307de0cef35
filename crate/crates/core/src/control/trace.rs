//! Logic-analyzer model of the motor driver outputs.

use std::fmt;
use std::str::FromStr;

use super::{ControlError, MotorState};

pub const DEFAULT_PWM_FREQ_HZ: f64 = 490.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Channel {
    AIn1,
    AIn2,
    APwm,
    BIn1,
    BIn2,
    BPwm,
}

impl Channel {
    pub const ALL: [Channel; 6] = [
        Channel::AIn1,
        Channel::AIn2,
        Channel::APwm,
        Channel::BIn1,
        Channel::BIn2,
        Channel::BPwm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Channel::AIn1 => "A_IN1",
            Channel::AIn2 => "A_IN2",
            Channel::APwm => "A_PWM",
            Channel::BIn1 => "B_IN1",
            Channel::BIn2 => "B_IN2",
            Channel::BPwm => "B_PWM",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Channel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Channel::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown channel `{s}`"))
    }
}

/// A level change on one channel. The first event of a channel sets its
/// initial level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TraceEvent {
    pub time_us: u64,
    pub channel: Channel,
    pub value: u8,
}

fn push_level(out: &mut Vec<(u64, u8)>, t: u64, v: u8) {
    match out.last() {
        Some(&(_, last)) if last == v => {}
        // A zero-length segment: undo the previous edge.
        Some(&(lt, _)) if lt == t => {
            out.pop();
            if out.is_empty() {
                out.push((t, v));
            }
        }
        _ => out.push((t, v)),
    }
}

fn pwm_edges(duty: f64, duration_us: u64, period_us: f64) -> Vec<(u64, u8)> {
    if duty <= 0.0 {
        return vec![(0, 0)];
    }
    if duty >= 1.0 {
        return vec![(0, 1)];
    }
    let mut out = Vec::new();
    for k in 0u64.. {
        let start = k as f64 * period_us;
        let rise = start.floor() as u64;
        if rise >= duration_us {
            break;
        }
        push_level(&mut out, rise, 1);
        let fall = (start + duty * period_us).floor() as u64;
        if fall < duration_us {
            push_level(&mut out, fall, 0);
        }
    }
    out
}

/// Synthesizes driver outputs for `duration_ms` with each motor's PWM
/// carrier at `pwm_freq_hz`. Edge times are floored to whole microseconds
/// and events are ordered by time, then channel.
pub fn generate_pwm_trace(
    states: (MotorState, MotorState),
    duration_ms: f64,
    pwm_freq_hz: f64,
) -> Result<Vec<TraceEvent>, ControlError> {
    if !(duration_ms.is_finite() && duration_ms > 0.0) {
        return Err(ControlError::Domain(format!(
            "duration must be > 0 ms, got {duration_ms}"
        )));
    }
    let period_us = 1e6 / pwm_freq_hz;
    if !(pwm_freq_hz.is_finite() && pwm_freq_hz > 0.0 && period_us >= 2.0) {
        return Err(ControlError::Domain(format!(
            "PWM frequency must be in (0, 500 kHz], got {pwm_freq_hz}"
        )));
    }
    let duration_us = (duration_ms * 1000.0).floor().max(1.0) as u64;

    let mut events = Vec::new();
    let motors = [
        (states.0, [Channel::AIn1, Channel::AIn2, Channel::APwm]),
        (states.1, [Channel::BIn1, Channel::BIn2, Channel::BPwm]),
    ];
    for (state, [in1, in2, pwm]) in motors {
        events.push(TraceEvent {
            time_us: 0,
            channel: in1,
            value: u8::from(state.in1()),
        });
        events.push(TraceEvent {
            time_us: 0,
            channel: in2,
            value: u8::from(state.in2()),
        });
        events.extend(
            pwm_edges(state.duty(), duration_us, period_us)
                .into_iter()
                .map(|(time_us, value)| TraceEvent {
                    time_us,
                    channel: pwm,
                    value,
                }),
        );
    }
    events.sort_by_key(|e| (e.time_us, e.channel));
    Ok(events)
}

/// Fraction of time `channel` is high over the complete periods after the
/// first one, delimited by rising edges. A channel with a single event is
/// constant and returns its level.
pub fn measure_duty(trace: &[TraceEvent], channel: Channel) -> Result<f64, ControlError> {
    let events: Vec<_> = trace.iter().filter(|e| e.channel == channel).collect();
    match events.as_slice() {
        [] => {
            return Err(ControlError::InsufficientData {
                channel,
                periods: 0,
            })
        }
        [only] => return Ok(f64::from(only.value)),
        _ => {}
    }
    let rises: Vec<usize> = (0..events.len())
        .filter(|&i| events[i].value == 1 && (i == 0 || events[i - 1].value == 0))
        .collect();
    // Skip the first period; it may start mid-transient.
    let periods = rises.len().saturating_sub(2);
    if periods < 2 {
        return Err(ControlError::InsufficientData { channel, periods });
    }
    let (first, last) = (rises[1], rises[rises.len() - 1]);
    let mut high = 0u64;
    for i in first..last {
        if events[i].value == 1 {
            high += events[i + 1].time_us - events[i].time_us;
        }
    }
    let span = events[last].time_us - events[first].time_us;
    Ok(high as f64 / span as f64)
}

pub fn export_trace_csv(trace: &[TraceEvent]) -> String {
    let mut out = String::from("time_us,channel,value\n");
    for e in trace {
        out.push_str(&format!("{},{},{}\n", e.time_us, e.channel, e.value));
    }
    out
}

pub fn parse_trace_csv(text: &str) -> Result<Vec<TraceEvent>, ControlError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "time_us,channel,value")) => {}
        _ => {
            return Err(ControlError::TraceParse {
                line: 1,
                message: "missing header".into(),
            })
        }
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        let bad = |message: String| ControlError::TraceParse {
            line: i + 1,
            message,
        };
        let mut fields = line.split(',');
        let (Some(t), Some(c), Some(v), None) =
            (fields.next(), fields.next(), fields.next(), fields.next())
        else {
            return Err(bad(format!("expected 3 fields in `{line}`")));
        };
        let time_us = t.parse().map_err(|_| bad(format!("bad time `{t}`")))?;
        let channel = c.parse().map_err(bad)?;
        let value = match v {
            "0" => 0,
            "1" => 1,
            _ => return Err(bad(format!("bad level `{v}`"))),
        };
        out.push(TraceEvent {
            time_us,
            channel,
            value,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::control::{command_to_motor_states, ControlCommand};

    fn square_wave(duty: f64, period_us: u64, periods: u64) -> Vec<TraceEvent> {
        let mut out = Vec::new();
        for k in 0..periods {
            let t = k * period_us;
            out.push(TraceEvent {
                time_us: t,
                channel: Channel::APwm,
                value: 1,
            });
            out.push(TraceEvent {
                time_us: t + (duty * period_us as f64) as u64,
                channel: Channel::APwm,
                value: 0,
            });
        }
        out.push(TraceEvent {
            time_us: periods * period_us,
            channel: Channel::APwm,
            value: 1,
        });
        out
    }

    #[test]
    fn synthetic_quarter_duty() {
        let d = measure_duty(&square_wave(0.25, 1000, 10), Channel::APwm).unwrap();
        assert!((d - 0.25).abs() < 1e-6);
    }

    #[test]
    fn quarter_duty_edges() {
        // 1000 Hz: 250 µs high, 750 µs low.
        let quarter: Vec<_> = pwm_edges(0.25, 3000, 1000.0)
            .into_iter()
            .map(|(time_us, value)| TraceEvent {
                time_us,
                channel: Channel::APwm,
                value,
            })
            .collect();
        let times: Vec<_> = quarter.iter().map(|e| (e.time_us, e.value)).collect();
        assert_eq!(
            times,
            vec![(0, 1), (250, 0), (1000, 1), (1250, 0), (2000, 1), (2250, 0)]
        );
    }

    #[test]
    fn constant_channels() {
        let trace = generate_pwm_trace(
            (MotorState::STOP, MotorState::forward(255)),
            50.0,
            DEFAULT_PWM_FREQ_HZ,
        )
        .unwrap();
        let a: Vec<_> = trace
            .iter()
            .filter(|e| e.channel == Channel::APwm)
            .collect();
        let b: Vec<_> = trace
            .iter()
            .filter(|e| e.channel == Channel::BPwm)
            .collect();
        assert_eq!((a.len(), a[0].value, b.len(), b[0].value), (1, 0, 1, 1));
        assert_eq!(measure_duty(&trace, Channel::APwm).unwrap(), 0.0);
        assert_eq!(measure_duty(&trace, Channel::BPwm).unwrap(), 1.0);
    }

    #[test]
    fn polarity_events_at_start() {
        let trace = generate_pwm_trace(
            command_to_motor_states(ControlCommand::Backward),
            10.0,
            490.0,
        )
        .unwrap();
        for (ch, v) in [
            (Channel::AIn1, 0),
            (Channel::AIn2, 1),
            (Channel::BIn1, 0),
            (Channel::BIn2, 1),
        ] {
            let evs: Vec<_> = trace.iter().filter(|e| e.channel == ch).collect();
            assert_eq!(evs.len(), 1);
            assert_eq!((evs[0].time_us, evs[0].value), (0, v));
        }
    }

    #[test]
    fn events_sorted_and_alternating() {
        let trace = generate_pwm_trace(command_to_motor_states(ControlCommand::Left), 100.0, 490.0)
            .unwrap();
        assert!(trace
            .windows(2)
            .all(|w| (w[0].time_us, w[0].channel) < (w[1].time_us, w[1].channel)));
        for ch in Channel::ALL {
            let evs: Vec<_> = trace.iter().filter(|e| e.channel == ch).collect();
            assert!(evs
                .windows(2)
                .all(|w| w[0].value != w[1].value && w[0].time_us < w[1].time_us));
        }
    }

    #[test]
    fn forward_round_trip() {
        let trace = generate_pwm_trace(
            command_to_motor_states(ControlCommand::Forward),
            100.0,
            490.0,
        )
        .unwrap();
        for ch in [Channel::APwm, Channel::BPwm] {
            assert!((measure_duty(&trace, ch).unwrap() - 0.392).abs() < 0.001);
        }
    }

    #[test]
    fn distorted_first_pulse_is_ignored() {
        let mut trace = square_wave(0.25, 1000, 12);
        // Stretch the first pulse to 600 µs.
        trace[1].time_us = 600;
        let d = measure_duty(&trace, Channel::APwm).unwrap();
        assert!((d - 0.25).abs() < 1e-12, "{d}");
        // Including the first period would have shifted the result.
        let naive: f64 = (600.0 + 11.0 * 250.0) / 12_000.0;
        assert!((naive - 0.25).abs() > 1e-3);
    }

    #[test]
    fn too_short_trace() {
        let trace = square_wave(0.5, 1000, 2);
        assert!(matches!(
            measure_duty(&trace, Channel::APwm),
            Err(ControlError::InsufficientData { periods: 1, .. })
        ));
        assert!(matches!(
            measure_duty(&[], Channel::BPwm),
            Err(ControlError::InsufficientData { periods: 0, .. })
        ));
    }

    #[test]
    fn near_full_duty_merges_segments() {
        // 254/255 at 100 kHz leaves a sub-microsecond low gap that floors away.
        let edges = pwm_edges(254.0 / 255.0, 100, 10.0);
        assert!(edges
            .windows(2)
            .all(|w| w[0].1 != w[1].1 && w[0].0 < w[1].0));
    }

    #[test]
    fn csv_round_trip() {
        assert_eq!(export_trace_csv(&[]), "time_us,channel,value\n");
        let one = [TraceEvent {
            time_us: 7,
            channel: Channel::BIn2,
            value: 1,
        }];
        assert_eq!(export_trace_csv(&one), "time_us,channel,value\n7,B_IN2,1\n");
        let trace = generate_pwm_trace(command_to_motor_states(ControlCommand::Right), 30.0, 490.0)
            .unwrap();
        assert_eq!(parse_trace_csv(&export_trace_csv(&trace)).unwrap(), trace);
        assert!(matches!(
            parse_trace_csv("time_us,channel,value\n1,C_PWM,1\n"),
            Err(ControlError::TraceParse { line: 2, .. })
        ));
    }

    #[test]
    fn rejects_bad_timing() {
        let s = (MotorState::STOP, MotorState::STOP);
        assert!(generate_pwm_trace(s, 0.0, 490.0).is_err());
        assert!(generate_pwm_trace(s, 10.0, 0.0).is_err());
    }
}
