use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vesselkit::control::{
    command_to_motor_states, export_trace_csv, generate_pwm_trace, measure_duty, parse_script,
    Channel, DEFAULT_PWM_FREQ_HZ,
};
use vesselkit::geometry::{generate_blade_sections, BladeDesignParams};
use vesselkit::hydro::{bem_evaluate, OperatingPoint};
use vesselkit::mesh::{assemble_propeller, export_stl, generate_hull, HullParams, StlFormat};
use vesselkit::optimize::{best, history_csv, optimize, ObjectiveConfig};
use vesselkit::pipeline::{
    classify_amd_level, default_bounds, hydro_report, plan, run_pipeline, sections_csv, set_param,
    DesignSpec, PipelinePlan, RunOptions, RunStatus, Stage, Units, DEFAULT_BUDGET, REPORT_FILE,
};

const EXIT_VALIDATION: u8 = 2;
const EXIT_STAGE_FAILURE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "vesselkit",
    version,
    about = "Propeller and hull design pipeline"
)]
struct Cli {
    /// Length unit for exported meshes and tables.
    #[arg(long, global = true, value_enum, default_value = "m")]
    units: UnitArg,
    /// STL encoding.
    #[arg(long, global = true, value_enum, default_value = "binary")]
    stl: StlArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitArg {
    Mm,
    M,
}

#[derive(Clone, Copy, ValueEnum)]
enum StlArg {
    Ascii,
    Binary,
}

#[derive(Args)]
struct DesignArgs {
    /// Blade parameters as TOML; defaults to the built-in design.
    #[arg(long)]
    params: Option<PathBuf>,
    /// Override one field, e.g. `--set span=24mm` or `--set rake_angle=5deg`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
}

#[derive(Args)]
struct OperatingArgs {
    #[arg(long, default_value_t = 3000.0)]
    rpm: f64,
    /// Advance speed (m/s).
    #[arg(long, default_value_t = 0.5)]
    speed: f64,
    /// Fluid density (kg/m³).
    #[arg(long, default_value_t = 998.0)]
    density: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Turn a design spec into a pipeline plan.
    Plan {
        spec: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Execute a plan, writing artifacts and a run report.
    Run {
        plan: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Approve a review checkpoint; repeatable.
        #[arg(long, value_name = "STAGE")]
        approve: Vec<String>,
    },
    /// Write the blade section table.
    Generate {
        #[command(flatten)]
        design: DesignArgs,
        /// Output CSV; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Mesh the propeller (or the hull) to STL and print mesh statistics.
    Mesh {
        #[command(flatten)]
        design: DesignArgs,
        #[arg(short, long)]
        output: PathBuf,
        /// Mesh the default hull instead of the propeller.
        #[arg(long)]
        hull: bool,
    },
    /// Blade-element evaluation of a design.
    Eval {
        #[command(flatten)]
        design: DesignArgs,
        #[command(flatten)]
        op: OperatingArgs,
    },
    /// Pattern-search refinement of a design.
    Optimize {
        #[command(flatten)]
        design: DesignArgs,
        #[command(flatten)]
        op: OperatingArgs,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Minimum thrust constraint (N); 0 disables it.
        #[arg(long, default_value_t = 0.0)]
        min_thrust: f64,
        /// Maximum root bending stress (Pa); 0 disables it.
        #[arg(long, default_value_t = 0.0)]
        max_stress: f64,
        /// History CSV; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Simulate a command script and write one PWM trace per command.
    Simctl {
        script: PathBuf,
        #[arg(short, long, default_value = ".")]
        output: PathBuf,
        #[arg(long, default_value_t = 100.0)]
        duration_ms: f64,
        #[arg(long, default_value_t = DEFAULT_PWM_FREQ_HZ)]
        freq: f64,
    },
    /// Print the autonomy level of a plan.
    Classify { plan: PathBuf },
}

enum Failure {
    Validation(String),
    Stage(String),
}

type CliResult = Result<(), Failure>;

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Validation(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> CliResult {
    fs::write(path, bytes).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn design(args: &DesignArgs) -> Result<BladeDesignParams, Failure> {
    let mut params = match &args.params {
        Some(path) => toml::from_str(&read(path)?).map_err(invalid)?,
        None => BladeDesignParams::default(),
    };
    for item in &args.sets {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| invalid(format!("--set expects KEY=VALUE, got `{item}`")))?;
        params = set_param(&params, key.trim(), value).map_err(invalid)?;
    }
    params.validate().map_err(invalid)?;
    Ok(params)
}

fn operating_point(op: &OperatingArgs) -> OperatingPoint {
    OperatingPoint {
        rpm: op.rpm,
        advance_speed: op.speed,
        fluid_density: op.density,
        ..OperatingPoint::default()
    }
}

fn load_plan(path: &Path) -> Result<PipelinePlan, Failure> {
    PipelinePlan::from_toml(&read(path)?).map_err(invalid)
}

fn execute(cli: Cli) -> CliResult {
    let units = match cli.units {
        UnitArg::Mm => Units::Millimeters,
        UnitArg::M => Units::Meters,
    };
    let stl_format = match cli.stl {
        StlArg::Ascii => StlFormat::Ascii,
        StlArg::Binary => StlFormat::Binary,
    };
    match cli.command {
        Command::Plan { spec, output } => {
            let spec = DesignSpec::from_toml(&read(&spec)?).map_err(invalid)?;
            let p = plan(&spec).map_err(invalid)?;
            write(&output, p.to_toml().as_bytes())?;
            for entry in &p.log {
                println!("{:?} {}: {}", entry.kind, entry.name, entry.detail);
            }
            println!("wrote {}", output.display());
        }
        Command::Run {
            plan,
            output,
            approve,
        } => {
            let p = load_plan(&plan)?;
            let approvals = approve
                .iter()
                .map(|s| s.parse::<Stage>())
                .collect::<Result<_, _>>()
                .map_err(invalid)?;
            let report = run_pipeline(
                &p,
                &output,
                &RunOptions {
                    approvals,
                    stl_format,
                    units,
                },
            )
            .map_err(invalid)?;
            for s in &report.stages {
                println!("{:<18} {}", s.stage.name(), s.status);
            }
            println!("report: {}", output.join(REPORT_FILE).display());
            match report.status {
                RunStatus::Failed => {
                    let failed = report
                        .stages
                        .iter()
                        .find(|s| s.message.is_some())
                        .and_then(|s| s.message.clone());
                    return Err(Failure::Stage(
                        failed.unwrap_or_else(|| "stage failed".into()),
                    ));
                }
                RunStatus::Paused => println!("paused for review; rerun with --approve <stage>"),
                RunStatus::Succeeded => {}
            }
        }
        Command::Generate { design: d, output } => {
            let sections = generate_blade_sections(&design(&d)?).map_err(invalid)?;
            let csv = sections_csv(&sections, units);
            match output {
                Some(path) => write(&path, csv.as_bytes())?,
                None => print!("{csv}"),
            }
        }
        Command::Mesh {
            design: d,
            output,
            hull,
        } => {
            let mesh = if hull {
                generate_hull(&HullParams::default()).map_err(invalid)?
            } else {
                assemble_propeller(&design(&d)?).map_err(invalid)?
            };
            print!("{}", mesh.stats());
            let scaled = mesh.scaled(units.scale()).map_err(invalid)?;
            write(&output, &export_stl(&scaled, stl_format))?;
        }
        Command::Eval { design: d, op } => {
            let params = design(&d)?;
            let result = bem_evaluate(&params, &operating_point(&op)).map_err(invalid)?;
            print!("{}", hydro_report(&result, &params));
        }
        Command::Optimize {
            design: d,
            op,
            budget,
            min_thrust,
            max_stress,
            output,
        } => {
            let params = design(&d)?;
            let cfg = ObjectiveConfig {
                min_thrust,
                max_root_stress: max_stress,
                ..ObjectiveConfig::default()
            };
            let bounds = default_bounds(&params).map_err(invalid)?;
            let history =
                optimize(&params, &bounds, &cfg, &operating_point(&op), budget).map_err(invalid)?;
            let csv = history_csv(&history);
            match output {
                Some(path) => {
                    write(&path, csv.as_bytes())?;
                    let top = best(&history).expect("start point is accepted");
                    println!("evaluations = {}", history.len());
                    println!("best_objective = {:.9e}", top.objective);
                    print!("{}", toml::to_string(&top.params).map_err(invalid)?);
                }
                None => print!("{csv}"),
            }
        }
        Command::Simctl {
            script,
            output,
            duration_ms,
            freq,
        } => {
            let commands = parse_script(&read(&script)?).map_err(invalid)?;
            fs::create_dir_all(&output)
                .map_err(|e| invalid(format!("{}: {e}", output.display())))?;
            println!("segment,command,A_duty,B_duty");
            for (i, cmd) in commands.iter().enumerate() {
                let trace = generate_pwm_trace(command_to_motor_states(*cmd), duration_ms, freq)
                    .map_err(invalid)?;
                let name = format!("trace_{:03}_{cmd}.csv", i + 1);
                write(&output.join(&name), export_trace_csv(&trace).as_bytes())?;
                let a = measure_duty(&trace, Channel::APwm).map_err(invalid)?;
                let b = measure_duty(&trace, Channel::BPwm).map_err(invalid)?;
                println!("{},{cmd},{a:.6},{b:.6}", i + 1);
            }
        }
        Command::Classify { plan } => {
            let level = classify_amd_level(&load_plan(&plan)?);
            println!("amd_level = {}", level.level);
            println!("rationale = {}", level.rationale);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Stage(m)) => {
            eprintln!("stage failure: {m}");
            ExitCode::from(EXIT_STAGE_FAILURE)
        }
    }
}
