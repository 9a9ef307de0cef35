//! Rule-table planner: design spec in, pipeline plan out.
//!
//! Every rule that sets a plan field is named and logged, and every
//! human-feedback override is logged after the rules, so a plan file records
//! how each of its values came to be.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::control::{ControlCommand, DEFAULT_PWM_FREQ_HZ};
use crate::geometry::BladeDesignParams;
use crate::hydro::OperatingPoint;
use crate::mesh::HullParams;
use crate::optimize::{FieldBound, ObjectiveConfig, ParameterBounds, Target, Tunable};

use super::{DesignSpec, PipelineError};

/// Twin propulsors share the required thrust.
pub const PROPULSORS: f64 = 2.0;
pub const DEFAULT_BUDGET: usize = 200;
pub const DEFAULT_PENALTY_WEIGHT: f64 = 10.0;
pub const DEFAULT_SEGMENT_MS: f64 = 100.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    GenerateGeometry,
    AssembleMesh,
    Evaluate,
    Optimize,
    BuoyancyCheck,
    ControlSim,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::GenerateGeometry,
        Stage::AssembleMesh,
        Stage::Evaluate,
        Stage::Optimize,
        Stage::BuoyancyCheck,
        Stage::ControlSim,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::GenerateGeometry => "generate_geometry",
            Stage::AssembleMesh => "assemble_mesh",
            Stage::Evaluate => "evaluate",
            Stage::Optimize => "optimize",
            Stage::BuoyancyCheck => "buoyancy_check",
            Stage::ControlSim => "control_sim",
        }
    }

    /// Stages whose outputs this stage consumes.
    pub fn dependencies(self) -> &'static [Stage] {
        match self {
            Stage::GenerateGeometry | Stage::ControlSim => &[],
            Stage::AssembleMesh => &[Stage::GenerateGeometry],
            Stage::Evaluate => &[Stage::AssembleMesh],
            Stage::Optimize => &[Stage::Evaluate],
            Stage::BuoyancyCheck => &[Stage::AssembleMesh],
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Stage {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stage::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| PipelineError::InvalidPlan(format!("unknown stage `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Checkpoint {
    #[default]
    None,
    HumanReview,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerPlan {
    pub budget: usize,
    pub bounds: ParameterBounds,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuoyancyPlan {
    pub payload_mass: f64,
    pub hull_material_density: f64,
    pub water_density: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ControlPlan {
    pub script: Vec<ControlCommand>,
    pub segment_ms: f64,
    pub pwm_freq_hz: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogKind {
    Rule,
    Override,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogEntry {
    pub kind: LogKind,
    pub name: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelinePlan {
    pub stages: Vec<Stage>,
    pub checkpoints: BTreeMap<Stage, Checkpoint>,
    pub initial_params: BladeDesignParams,
    pub hull: HullParams,
    pub objective: ObjectiveConfig,
    pub operating_point: OperatingPoint,
    pub optimizer: OptimizerPlan,
    pub buoyancy: BuoyancyPlan,
    pub control: ControlPlan,
    #[serde(default)]
    pub log: Vec<LogEntry>,
}

impl PipelinePlan {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plan fields are all TOML-representable")
    }

    pub fn from_toml(text: &str) -> Result<Self, PipelineError> {
        let plan: PipelinePlan =
            toml::from_str(text).map_err(|e| PipelineError::InvalidPlan(e.to_string()))?;
        plan.validate()?;
        Ok(plan)
    }

    /// Structural checks: stage order and checkpoint references. Numeric
    /// problems in the parameters surface when the affected stage runs.
    pub fn validate(&self) -> Result<(), PipelineError> {
        for (i, stage) in self.stages.iter().enumerate() {
            if self.stages[..i].contains(stage) {
                return Err(PipelineError::InvalidPlan(format!(
                    "stage {stage} listed twice"
                )));
            }
            for dep in stage.dependencies() {
                if !self.stages[..i].contains(dep) {
                    return Err(PipelineError::InvalidPlan(format!(
                        "stage {stage} requires {dep} to run before it"
                    )));
                }
            }
        }
        for (stage, cp) in &self.checkpoints {
            if *cp == Checkpoint::HumanReview && !self.stages.contains(stage) {
                return Err(PipelineError::InvalidPlan(format!(
                    "checkpoint on {stage}, which is not in the plan"
                )));
            }
        }
        Ok(())
    }

    pub fn checkpoint(&self, stage: Stage) -> Checkpoint {
        self.checkpoints.get(&stage).copied().unwrap_or_default()
    }

    pub fn overrides(&self) -> impl Iterator<Item = &LogEntry> {
        self.log.iter().filter(|e| e.kind == LogKind::Override)
    }
}

/// Search box around a design: chords and span scale with the design, pitch
/// angles use fixed windows. Every interval is widened to contain `params`.
pub fn default_bounds(params: &BladeDesignParams) -> Result<ParameterBounds, PipelineError> {
    let p = params;
    let b = |field: Tunable, lo: f64, hi: f64| {
        let v = field.get(p);
        FieldBound::new(field, lo.min(v), hi.max(v))
    };
    Ok(ParameterBounds::new(vec![
        b(Tunable::Span, 0.5 * p.span, p.span),
        b(
            Tunable::ChordRoot,
            0.6 * p.chord_root,
            p.hub_length.min(1.2 * p.chord_root),
        ),
        b(Tunable::ChordTip, 0.5 * p.chord_tip, 1.25 * p.chord_tip),
        b(Tunable::ChordMid, 0.5 * p.chord_mid, 1.25 * p.chord_mid),
        b(Tunable::PitchRoot, 0.20, 0.60),
        b(Tunable::PitchTip, 0.10, 0.35),
        b(Tunable::PitchMid, 0.15, 0.45),
    ])?)
}

/// Sets one design field from command-line text. Lengths accept an `mm`
/// suffix and angles a `deg` suffix; bare numbers are SI.
pub fn set_param(
    params: &BladeDesignParams,
    key: &str,
    raw: &str,
) -> Result<BladeDesignParams, PipelineError> {
    let bad = |reason: String| PipelineError::Override {
        path: key.to_string(),
        reason,
    };
    let raw = raw.trim();
    let number = |text: &str, scale: f64| {
        text.trim()
            .parse::<f64>()
            .map(|v| toml::Value::Float(v * scale))
            .map_err(|_| bad(format!("`{raw}` is not a number")))
    };
    let value = if let Some(mm) = raw.strip_suffix("mm") {
        number(mm, 1e-3)?
    } else if let Some(deg) = raw.strip_suffix("deg") {
        number(deg, std::f64::consts::PI / 180.0)?
    } else if let Ok(i) = raw.parse::<i64>() {
        toml::Value::Integer(i)
    } else if let Ok(v) = raw.parse::<f64>() {
        toml::Value::Float(v)
    } else if let Ok(b) = raw.parse::<bool>() {
        toml::Value::Boolean(b)
    } else {
        toml::Value::String(raw.to_string())
    };
    let mut tree = toml::Value::try_from(params).expect("params serialize to TOML");
    patch(&mut tree, key, value).map_err(bad)?;
    let next: BladeDesignParams = tree
        .try_into()
        .map_err(|e: toml::de::Error| bad(e.message().to_string()))?;
    next.validate().map_err(|e| bad(e.to_string()))?;
    Ok(next)
}

struct Log(Vec<LogEntry>);

impl Log {
    fn rule(&mut self, name: &str, detail: String) {
        self.0.push(LogEntry {
            kind: LogKind::Rule,
            name: name.into(),
            detail,
        });
    }
}

/// Builds the plan for `spec` with the rule table, then applies the
/// spec's human-feedback overrides in order.
pub fn plan(spec: &DesignSpec) -> Result<PipelinePlan, PipelineError> {
    spec.validate()?;
    let f = &spec.functional;
    let c = &spec.constraints;
    let dims = &c.max_dimensions_m;
    let mut log = Log(Vec::new());

    let mut params = BladeDesignParams::default();
    let radial_room = 0.5 * dims.propeller_diameter - params.hub_radius();
    if radial_room <= 0.0 {
        return Err(PipelineError::Planning {
            constraint: "constraints.max_dimensions_m.propeller_diameter".into(),
            reason: format!(
                "diameter {} m leaves no room for blades on a {} m hub",
                dims.propeller_diameter, params.hub_diameter
            ),
        });
    }
    let default_span = params.span;
    // Tolerate round-off when the diameter is sized exactly for the default span.
    if radial_room < default_span * (1.0 - 1e-12) {
        params.span = radial_room;
    }
    log.rule(
        "span_from_propeller_diameter",
        format!(
            "span = min({default_span}, D/2 - R_hub = {radial_room:.6}) = {:.6} m",
            params.span
        ),
    );

    let hull = HullParams {
        length: dims.length,
        beam: dims.beam,
        depth: dims.depth,
        ..HullParams::default()
    };
    hull.validate().map_err(|e| PipelineError::Planning {
        constraint: "constraints.max_dimensions_m".into(),
        reason: e.to_string(),
    })?;
    log.rule(
        "hull_from_max_dimensions",
        format!(
            "hull {} x {} x {} m, wall {} m",
            hull.length, hull.beam, hull.depth, hull.wall_thickness
        ),
    );

    let operating_point = OperatingPoint {
        advance_speed: f.cruise_speed_mps,
        fluid_density: c.water_density,
        ..OperatingPoint::default()
    };
    log.rule(
        "operating_point_from_cruise",
        format!(
            "V = {} m/s, rpm = {}, rho = {} kg/m3",
            operating_point.advance_speed, operating_point.rpm, c.water_density
        ),
    );

    let objective = ObjectiveConfig {
        target: Target::MaxEfficiency,
        min_thrust: f.required_thrust_n / PROPULSORS,
        max_root_stress: c.max_stress_pa,
        penalty_weight: DEFAULT_PENALTY_WEIGHT,
    };
    log.rule(
        "min_thrust_per_propulsor",
        format!(
            "min_thrust = {} N / {PROPULSORS} = {} N",
            f.required_thrust_n, objective.min_thrust
        ),
    );
    log.rule(
        "stress_limit",
        format!("max_root_stress = {} Pa", objective.max_root_stress),
    );

    let bounds = default_bounds(&params)?;
    log.rule(
        "search_bounds",
        format!(
            "{} tunable fields, span capped at {:.6} m, budget {DEFAULT_BUDGET}",
            bounds.tunable().count(),
            params.span
        ),
    );

    let buoyancy = BuoyancyPlan {
        payload_mass: f.payload_mass_kg,
        hull_material_density: c.hull_material_density,
        water_density: c.water_density,
    };
    log.rule(
        "buoyancy_mass",
        format!(
            "total mass = {} kg payload + shell volume x {} kg/m3",
            f.payload_mass_kg, c.hull_material_density
        ),
    );

    let control = ControlPlan {
        script: ControlCommand::ALL.to_vec(),
        segment_ms: DEFAULT_SEGMENT_MS,
        pwm_freq_hz: DEFAULT_PWM_FREQ_HZ,
    };
    log.rule(
        "control_script",
        format!(
            "{} commands, {} ms each at {} Hz",
            control.script.len(),
            control.segment_ms,
            control.pwm_freq_hz
        ),
    );

    let plan = PipelinePlan {
        stages: Stage::ALL.to_vec(),
        checkpoints: Stage::ALL.iter().map(|&s| (s, Checkpoint::None)).collect(),
        initial_params: params,
        hull,
        objective,
        operating_point,
        optimizer: OptimizerPlan {
            budget: DEFAULT_BUDGET,
            bounds,
        },
        buoyancy,
        control,
        log: log.0,
    };
    let plan = apply_overrides(plan, spec)?;
    plan.validate()?;
    Ok(plan)
}

fn apply_overrides(plan: PipelinePlan, spec: &DesignSpec) -> Result<PipelinePlan, PipelineError> {
    if spec.human_feedback.is_empty() {
        return Ok(plan);
    }
    let mut log = plan.log.clone();
    let mut value = toml::Value::try_from(&plan).expect("plan serializes to TOML");
    for o in &spec.human_feedback {
        let old = patch(&mut value, &o.path, o.value.clone()).map_err(|reason| {
            PipelineError::Override {
                path: o.path.clone(),
                reason,
            }
        })?;
        log.push(LogEntry {
            kind: LogKind::Override,
            name: o.path.clone(),
            detail: format!("{old} -> {}", o.value),
        });
    }
    let mut plan: PipelinePlan =
        value
            .try_into()
            .map_err(|e: toml::de::Error| PipelineError::Override {
                path: "<plan>".into(),
                reason: e.message().to_string(),
            })?;
    plan.log = log;
    Ok(plan)
}

/// Replaces the existing value at dotted `path` and returns the old one.
/// Array elements are addressed by index. Integers written into float
/// fields are widened.
fn patch(root: &mut toml::Value, path: &str, value: toml::Value) -> Result<toml::Value, String> {
    let mut cur = root;
    for key in path.split('.') {
        cur = match cur {
            toml::Value::Table(t) => t
                .get_mut(key)
                .ok_or_else(|| format!("no plan field `{key}`"))?,
            toml::Value::Array(a) => {
                let i: usize = key
                    .parse()
                    .map_err(|_| format!("`{key}` is not an array index"))?;
                let len = a.len();
                a.get_mut(i)
                    .ok_or_else(|| format!("index {i} out of range for array of {len}"))?
            }
            _ => return Err(format!("`{key}` addresses into a scalar")),
        };
    }
    let value = match (&*cur, value) {
        (toml::Value::Float(_), toml::Value::Integer(i)) => toml::Value::Float(i as f64),
        (old, new) if std::mem::discriminant(old) != std::mem::discriminant(&new) => {
            return Err(format!(
                "expected {}, got {}",
                old.type_str(),
                new.type_str()
            ))
        }
        (_, new) => new,
    };
    Ok(std::mem::replace(cur, value))
}
