use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::geometry::BladeDesignParams;

use super::OptimizeError;

/// Continuous fields of [`BladeDesignParams`] that the search may move.
///
/// Variant order is the probe order of the pattern search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tunable {
    Span,
    ChordRoot,
    ChordTip,
    ChordMid,
    PitchRoot,
    PitchTip,
    PitchMid,
    BulgeBeta,
    BulgeGamma,
    BulgeR0,
    RakeAngle,
    SkewAngle,
    ThicknessRatio,
    PitchAxis,
    HubDiameter,
    HubLength,
}

impl Tunable {
    pub const ALL: [Tunable; 16] = [
        Tunable::Span,
        Tunable::ChordRoot,
        Tunable::ChordTip,
        Tunable::ChordMid,
        Tunable::PitchRoot,
        Tunable::PitchTip,
        Tunable::PitchMid,
        Tunable::BulgeBeta,
        Tunable::BulgeGamma,
        Tunable::BulgeR0,
        Tunable::RakeAngle,
        Tunable::SkewAngle,
        Tunable::ThicknessRatio,
        Tunable::PitchAxis,
        Tunable::HubDiameter,
        Tunable::HubLength,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Tunable::Span => "span",
            Tunable::ChordRoot => "chord_root",
            Tunable::ChordTip => "chord_tip",
            Tunable::ChordMid => "chord_mid",
            Tunable::PitchRoot => "pitch_root",
            Tunable::PitchTip => "pitch_tip",
            Tunable::PitchMid => "pitch_mid",
            Tunable::BulgeBeta => "bulge_beta",
            Tunable::BulgeGamma => "bulge_gamma",
            Tunable::BulgeR0 => "bulge_r0",
            Tunable::RakeAngle => "rake_angle",
            Tunable::SkewAngle => "skew_angle",
            Tunable::ThicknessRatio => "thickness_ratio",
            Tunable::PitchAxis => "pitch_axis",
            Tunable::HubDiameter => "hub_diameter",
            Tunable::HubLength => "hub_length",
        }
    }

    pub fn get(self, p: &BladeDesignParams) -> f64 {
        match self {
            Tunable::Span => p.span,
            Tunable::ChordRoot => p.chord_root,
            Tunable::ChordTip => p.chord_tip,
            Tunable::ChordMid => p.chord_mid,
            Tunable::PitchRoot => p.pitch_root,
            Tunable::PitchTip => p.pitch_tip,
            Tunable::PitchMid => p.pitch_mid,
            Tunable::BulgeBeta => p.bulge_beta,
            Tunable::BulgeGamma => p.bulge_gamma,
            Tunable::BulgeR0 => p.bulge_r0,
            Tunable::RakeAngle => p.rake_angle,
            Tunable::SkewAngle => p.skew_angle,
            Tunable::ThicknessRatio => p.thickness_ratio,
            Tunable::PitchAxis => p.pitch_axis,
            Tunable::HubDiameter => p.hub_diameter,
            Tunable::HubLength => p.hub_length,
        }
    }

    pub fn set(self, p: &mut BladeDesignParams, value: f64) {
        *self.slot(p) = value;
    }

    fn slot(self, p: &mut BladeDesignParams) -> &mut f64 {
        match self {
            Tunable::Span => &mut p.span,
            Tunable::ChordRoot => &mut p.chord_root,
            Tunable::ChordTip => &mut p.chord_tip,
            Tunable::ChordMid => &mut p.chord_mid,
            Tunable::PitchRoot => &mut p.pitch_root,
            Tunable::PitchTip => &mut p.pitch_tip,
            Tunable::PitchMid => &mut p.pitch_mid,
            Tunable::BulgeBeta => &mut p.bulge_beta,
            Tunable::BulgeGamma => &mut p.bulge_gamma,
            Tunable::BulgeR0 => &mut p.bulge_r0,
            Tunable::RakeAngle => &mut p.rake_angle,
            Tunable::SkewAngle => &mut p.skew_angle,
            Tunable::ThicknessRatio => &mut p.thickness_ratio,
            Tunable::PitchAxis => &mut p.pitch_axis,
            Tunable::HubDiameter => &mut p.hub_diameter,
            Tunable::HubLength => &mut p.hub_length,
        }
    }
}

impl fmt::Display for Tunable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tunable {
    type Err = OptimizeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Tunable::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| OptimizeError::Config(format!("unknown tunable field `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldBound {
    pub field: Tunable,
    pub lower: f64,
    pub upper: f64,
    #[serde(default = "default_tunable")]
    pub tunable: bool,
}

fn default_tunable() -> bool {
    true
}

impl FieldBound {
    pub fn new(field: Tunable, lower: f64, upper: f64) -> Self {
        Self {
            field,
            lower,
            upper,
            tunable: true,
        }
    }

    pub fn range(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Box bounds over a subset of [`Tunable`] fields, kept in declaration order.
///
/// Fields without an entry, or with `tunable = false`, are held at their
/// starting value.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<FieldBound>", into = "Vec<FieldBound>")]
pub struct ParameterBounds {
    entries: Vec<FieldBound>,
}

impl TryFrom<Vec<FieldBound>> for ParameterBounds {
    type Error = OptimizeError;

    fn try_from(entries: Vec<FieldBound>) -> Result<Self, Self::Error> {
        Self::new(entries)
    }
}

impl From<ParameterBounds> for Vec<FieldBound> {
    fn from(b: ParameterBounds) -> Self {
        b.entries
    }
}

impl ParameterBounds {
    pub fn new(mut entries: Vec<FieldBound>) -> Result<Self, OptimizeError> {
        entries.sort_by_key(|e| e.field);
        for pair in entries.windows(2) {
            if pair[0].field == pair[1].field {
                return Err(OptimizeError::Config(format!(
                    "field `{}` bounded twice",
                    pair[0].field
                )));
            }
        }
        let bounds = Self { entries };
        bounds.validate()?;
        Ok(bounds)
    }

    pub fn validate(&self) -> Result<(), OptimizeError> {
        for e in &self.entries {
            if !(e.lower.is_finite() && e.upper.is_finite()) {
                return Err(OptimizeError::Config(format!(
                    "bounds of `{}` must be finite",
                    e.field
                )));
            }
            if e.tunable && !(e.lower < e.upper) {
                return Err(OptimizeError::Config(format!(
                    "bounds of `{}` need lower < upper, got [{}, {}]",
                    e.field, e.lower, e.upper
                )));
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> &[FieldBound] {
        &self.entries
    }

    pub fn tunable(&self) -> impl Iterator<Item = &FieldBound> {
        self.entries.iter().filter(|e| e.tunable)
    }

    pub fn get(&self, field: Tunable) -> Option<&FieldBound> {
        self.entries.iter().find(|e| e.field == field)
    }

    /// Checks every bounded field of `p`, tunable or not.
    pub fn contains(&self, p: &BladeDesignParams) -> bool {
        self.entries.iter().all(|e| {
            let v = e.field.get(p);
            v >= e.lower && v <= e.upper
        })
    }
}
