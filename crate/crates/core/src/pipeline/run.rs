use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use crate::control::{
    command_to_motor_states, export_trace_csv, generate_pwm_trace, measure_duty, Channel,
};
use crate::geometry::{generate_blade_sections, BladeDesignParams, Section3D};
use crate::hydro::{bem_evaluate, root_bending_stress, HydroResult};
use crate::mesh::{
    assemble_propeller, buoyancy_check, export_stl, generate_hull, hull_envelope, is_watertight,
    mesh_volume, shell_volume, StlFormat, TriMesh,
};
use crate::optimize::{best, history_csv, optimize};

use super::{classify_amd_level, AmdLevel, Checkpoint, PipelineError, PipelinePlan, Stage, Units};

pub const REPORT_FILE: &str = "run_report.txt";
/// Prefix of the only report line that differs between identical runs.
pub const TIMESTAMP_KEY: &str = "generated_at";

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Checkpointed stages the reviewer has signed off.
    pub approvals: BTreeSet<Stage>,
    pub stl_format: StlFormat,
    pub units: Units,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageStatus {
    Succeeded,
    Failed,
    Skipped,
    AwaitingReview,
    Pending,
}

impl fmt::Display for StageStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StageStatus::Succeeded => "succeeded",
            StageStatus::Failed => "failed",
            StageStatus::Skipped => "skipped",
            StageStatus::AwaitingReview => "awaiting_review",
            StageStatus::Pending => "pending",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunStatus {
    Succeeded,
    Failed,
    Paused,
}

impl fmt::Display for RunStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RunStatus::Succeeded => "succeeded",
            RunStatus::Failed => "failed",
            RunStatus::Paused => "paused",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StageRecord {
    pub stage: Stage,
    pub status: StageStatus,
    pub message: Option<String>,
    pub metrics: Vec<(String, String)>,
    /// File names relative to the output directory.
    pub artifacts: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub status: RunStatus,
    pub amd: AmdLevel,
    pub overrides: usize,
    pub stages: Vec<StageRecord>,
    pub generated_at_unix: u64,
}

impl RunReport {
    pub fn artifacts(&self) -> impl Iterator<Item = &str> {
        self.stages
            .iter()
            .flat_map(|s| s.artifacts.iter().map(String::as_str))
    }

    pub fn stage(&self, stage: Stage) -> Option<&StageRecord> {
        self.stages.iter().find(|s| s.stage == stage)
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# vesselkit run report")?;
        writeln!(f, "{TIMESTAMP_KEY} = unix:{}", self.generated_at_unix)?;
        writeln!(f, "status = {}", self.status)?;
        writeln!(f, "amd_level = {}", self.amd.level)?;
        writeln!(f, "amd_rationale = {}", self.amd.rationale)?;
        writeln!(f, "overrides = {}", self.overrides)?;
        writeln!(f, "stages = {}", self.stages.len())?;
        for s in &self.stages {
            writeln!(f)?;
            writeln!(f, "[stage.{}]", s.stage)?;
            writeln!(f, "status = {}", s.status)?;
            if let Some(m) = &s.message {
                writeln!(f, "message = {m}")?;
            }
            if !s.artifacts.is_empty() {
                writeln!(f, "artifacts = {}", s.artifacts.join(", "))?;
            }
            for (k, v) in &s.metrics {
                writeln!(f, "{k} = {v}")?;
            }
        }
        Ok(())
    }
}

/// Strips the timestamp line so two reports can be compared.
pub fn without_timestamp(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.starts_with(TIMESTAMP_KEY))
        .map(|l| format!("{l}\n"))
        .collect()
}

pub fn sections_csv(sections: &[Section3D], units: Units) -> String {
    let u = units.suffix();
    let k = units.scale();
    let mut out = format!("station,point,x_{u},y_{u},z_{u}\n");
    for (i, s) in sections.iter().enumerate() {
        for (j, p) in s.points.iter().enumerate() {
            let _ = writeln!(
                out,
                "{i},{j},{:.9e},{:.9e},{:.9e}",
                p[0] * k,
                p[1] * k,
                p[2] * k
            );
        }
    }
    out
}

pub fn hydro_report(result: &HydroResult, params: &BladeDesignParams) -> String {
    let stress = match root_bending_stress(result, params) {
        Ok(s) => format!("{s:.9e}"),
        Err(_) => "n/a".into(),
    };
    format!("root_bending_stress_Pa = {stress}\n{result}")
}

fn e9(v: f64) -> String {
    format!("{v:.9e}")
}

#[derive(Default)]
struct Outputs {
    hull: Option<TriMesh>,
}

struct StageRun<'a> {
    dir: &'a Path,
    metrics: Vec<(String, String)>,
    artifacts: Vec<String>,
}

impl StageRun<'_> {
    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<(), String> {
        fs::write(self.dir.join(name), bytes).map_err(|e| format!("writing {name}: {e}"))?;
        self.artifacts.push(name.to_string());
        Ok(())
    }

    fn metric(&mut self, key: &str, value: impl fmt::Display) {
        self.metrics.push((key.to_string(), value.to_string()));
    }
}

fn solid_check(mesh: &TriMesh, what: &str) -> Result<Vec<f64>, String> {
    mesh.components()
        .iter()
        .enumerate()
        .map(|(i, part)| {
            if !is_watertight(part).is_watertight() {
                return Err(format!("{what} shell {i} is not watertight"));
            }
            match mesh_volume(part) {
                Ok(v) if v > 0.0 => Ok(v),
                Ok(v) => Err(format!("{what} shell {i} has non-positive volume {v}")),
                Err(e) => Err(e.to_string()),
            }
        })
        .collect()
}

fn stl_bytes(mesh: &TriMesh, opts: &RunOptions) -> Result<Vec<u8>, String> {
    let scaled = mesh.scaled(opts.units.scale()).map_err(|e| e.to_string())?;
    Ok(export_stl(&scaled, opts.stl_format))
}

fn run_stage(
    stage: Stage,
    plan: &PipelinePlan,
    opts: &RunOptions,
    out: &mut Outputs,
    run: &mut StageRun<'_>,
) -> Result<(), String> {
    let params = &plan.initial_params;
    match stage {
        Stage::GenerateGeometry => {
            let sections = generate_blade_sections(params).map_err(|e| e.to_string())?;
            run.write(
                "sections.csv",
                sections_csv(&sections, opts.units).as_bytes(),
            )?;
            run.metric("sections", sections.len());
            run.metric("points_per_section", sections[0].points.len());
            run.metric("span_m", e9(params.span));
            run.metric("tip_radius_m", e9(params.hub_radius() + params.span));
        }
        Stage::AssembleMesh => {
            let propeller = assemble_propeller(params).map_err(|e| e.to_string())?;
            let volumes = solid_check(&propeller, "propeller")?;
            let hull = generate_hull(&plan.hull).map_err(|e| e.to_string())?;
            let hull_volumes = solid_check(&hull, "hull")?;
            run.write("propeller.stl", &stl_bytes(&propeller, opts)?)?;
            run.write("hull.stl", &stl_bytes(&hull, opts)?)?;
            let mut stats = format!("[propeller]\n{}", propeller.stats());
            for (i, v) in volumes.iter().enumerate() {
                let _ = writeln!(stats, "shell_{i}_volume_m3 = {v:.9e}");
            }
            let _ = write!(stats, "\n[hull]\n{}", hull.stats());
            run.write("mesh_stats.txt", stats.as_bytes())?;
            run.metric("propeller_shells", volumes.len());
            run.metric("propeller_triangles", propeller.triangle_count());
            run.metric("propeller_volume_m3", e9(volumes.iter().sum()));
            run.metric("hull_triangles", hull.triangle_count());
            run.metric("hull_volume_m3", e9(hull_volumes.iter().sum()));
            out.hull = Some(hull);
        }
        Stage::Evaluate => {
            let result = bem_evaluate(params, &plan.operating_point).map_err(|e| e.to_string())?;
            run.write("hydro_report.txt", hydro_report(&result, params).as_bytes())?;
            run.metric("thrust_N", e9(result.thrust));
            run.metric("torque_Nm", e9(result.torque));
            run.metric("efficiency", e9(result.efficiency));
            if let Ok(s) = root_bending_stress(&result, params) {
                run.metric("root_bending_stress_Pa", e9(s));
            }
        }
        Stage::Optimize => {
            let history = optimize(
                params,
                &plan.optimizer.bounds,
                &plan.objective,
                &plan.operating_point,
                plan.optimizer.budget,
            )
            .map_err(|e| e.to_string())?;
            let top = best(&history).expect("start point is always accepted");
            run.write("optimization_history.csv", history_csv(&history).as_bytes())?;
            let params_toml = toml::to_string(&top.params).map_err(|e| e.to_string())?;
            run.write("optimized_params.toml", params_toml.as_bytes())?;
            if let Ok(mesh) = assemble_propeller(&top.params) {
                run.write("propeller_optimized.stl", &stl_bytes(&mesh, opts)?)?;
            }
            run.metric("evaluations", history.len());
            run.metric(
                "accepted_moves",
                history.iter().filter(|r| r.accepted).count() - 1,
            );
            run.metric("initial_objective", e9(history[0].objective));
            run.metric("best_objective", e9(top.objective));
            run.metric("best_thrust_N", e9(top.feedback.thrust));
            run.metric("best_efficiency", e9(top.feedback.efficiency));
            if let Ok(s) = root_bending_stress(&top.feedback, &top.params) {
                run.metric("best_root_bending_stress_Pa", e9(s));
            }
        }
        Stage::BuoyancyCheck => {
            if out.hull.is_none() {
                return Err("no hull mesh from assemble_mesh".into());
            }
            let b = &plan.buoyancy;
            let shell_mass = shell_volume(&plan.hull) * b.hull_material_density;
            let total = b.payload_mass + shell_mass;
            let envelope = hull_envelope(&plan.hull).map_err(|e| e.to_string())?;
            let report =
                buoyancy_check(&envelope, total, b.water_density).map_err(|e| e.to_string())?;
            let text = format!(
                "hull_shell_mass_kg = {}\npayload_mass_kg = {}\ntotal_mass_kg = {}\nwater_density = {}\ndraft_m = {}\n\
                 freeboard_margin_m = {}\ndisplaced_volume_m3 = {}\ndisplaced_mass_kg = {}\n",
                e9(shell_mass),
                e9(b.payload_mass),
                e9(total),
                e9(b.water_density),
                e9(report.draft),
                e9(report.freeboard_margin),
                e9(report.displaced_volume),
                e9(report.displaced_mass),
            );
            run.write("buoyancy.txt", text.as_bytes())?;
            run.metric("total_mass_kg", e9(total));
            run.metric("draft_m", e9(report.draft));
            run.metric("freeboard_margin_m", e9(report.freeboard_margin));
        }
        Stage::ControlSim => {
            let c = &plan.control;
            let mut summary = String::from("segment,command,A_duty,B_duty\n");
            for (i, &cmd) in c.script.iter().enumerate() {
                let trace =
                    generate_pwm_trace(command_to_motor_states(cmd), c.segment_ms, c.pwm_freq_hz)
                        .map_err(|e| e.to_string())?;
                run.write(
                    &format!("control_trace_{:02}_{cmd}.csv", i + 1),
                    export_trace_csv(&trace).as_bytes(),
                )?;
                let a = measure_duty(&trace, Channel::APwm).map_err(|e| e.to_string())?;
                let b = measure_duty(&trace, Channel::BPwm).map_err(|e| e.to_string())?;
                let _ = writeln!(summary, "{},{cmd},{a:.6},{b:.6}", i + 1);
                run.metric(
                    &format!("{cmd}_duty_pct"),
                    format!("{:.2}/{:.2}", a * 100.0, b * 100.0),
                );
            }
            run.write("control_report.csv", summary.as_bytes())?;
        }
    }
    Ok(())
}

fn review_text(record: &StageRecord) -> String {
    let mut text = format!("# review requested for stage {}\n", record.stage);
    for (k, v) in &record.metrics {
        let _ = writeln!(text, "{k} = {v}");
    }
    let _ = writeln!(text, "artifacts = {}", record.artifacts.join(", "));
    let _ = writeln!(text, "\nrerun with --approve {} to continue", record.stage);
    text
}

/// Runs the plan's stages in order, writing artifacts and `run_report.txt`
/// into `out_dir`.
///
/// A failed stage marks every later stage skipped. A stage with an
/// unapproved review checkpoint runs, writes `review_<stage>.txt`, and
/// leaves later stages pending.
pub fn run_pipeline(
    plan: &PipelinePlan,
    out_dir: &Path,
    opts: &RunOptions,
) -> Result<RunReport, PipelineError> {
    plan.validate()?;
    fs::create_dir_all(out_dir).map_err(|e| PipelineError::Io {
        path: out_dir.display().to_string(),
        message: e.to_string(),
    })?;

    let mut outputs = Outputs::default();
    let mut records = Vec::new();
    let mut halted: Option<RunStatus> = None;
    for &stage in &plan.stages {
        if let Some(status) = halted {
            let s = if status == RunStatus::Failed {
                StageStatus::Skipped
            } else {
                StageStatus::Pending
            };
            records.push(StageRecord {
                stage,
                status: s,
                message: None,
                metrics: vec![],
                artifacts: vec![],
            });
            continue;
        }
        let mut run = StageRun {
            dir: out_dir,
            metrics: vec![],
            artifacts: vec![],
        };
        let result = run_stage(stage, plan, opts, &mut outputs, &mut run);
        let mut record = StageRecord {
            stage,
            status: StageStatus::Succeeded,
            message: None,
            metrics: run.metrics,
            artifacts: run.artifacts,
        };
        match result {
            Err(message) => {
                record.status = StageStatus::Failed;
                record.message = Some(message);
                halted = Some(RunStatus::Failed);
            }
            Ok(()) if plan.checkpoint(stage) == Checkpoint::HumanReview => {
                if opts.approvals.contains(&stage) {
                    record.metrics.push(("review".into(), "approved".into()));
                } else {
                    let name = format!("review_{stage}.txt");
                    fs::write(out_dir.join(&name), review_text(&record)).map_err(|e| {
                        PipelineError::Io {
                            path: name.clone(),
                            message: e.to_string(),
                        }
                    })?;
                    record.status = StageStatus::AwaitingReview;
                    record.message = Some(format!("see {name}"));
                    record.artifacts.push(name);
                    halted = Some(RunStatus::Paused);
                }
            }
            Ok(()) => {}
        }
        records.push(record);
    }

    let report = RunReport {
        status: halted.unwrap_or(RunStatus::Succeeded),
        amd: classify_amd_level(plan),
        overrides: plan.overrides().count(),
        stages: records,
        generated_at_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    };
    fs::write(out_dir.join(REPORT_FILE), report.to_string()).map_err(|e| PipelineError::Io {
        path: REPORT_FILE.into(),
        message: e.to_string(),
    })?;
    Ok(report)
}
