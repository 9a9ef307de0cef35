//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance`. Exits non-zero if any criterion fails.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vesselkit::control::{
    command_to_motor_states, generate_pwm_trace, measure_duty, Channel, ControlCommand,
};
use vesselkit::geometry::{
    chord_at, make_airfoil, pitch_at, transform_section, BladeDesignParams, ChordMode,
    ChordSpacing, PitchMode,
};
use vesselkit::hydro::{bem_evaluate, von_mises, OperatingPoint, StressState};
use vesselkit::mesh::{
    assemble_propeller, blade_angle, blade_mesh, buoyancy_check, export_stl, hub_mesh, import_stl,
    is_watertight, mesh_volume, StlFormat, TriMesh,
};
use vesselkit::optimize::{
    optimize_with, Evaluation, FieldBound, IterationRecord, ParameterBounds, Tunable,
};
use vesselkit::pipeline::{
    classify_amd_level, plan, without_timestamp, Checkpoint, DesignSpec, PipelinePlan, Stage,
};

// Pinned tolerances and limits.
const DUTY_TOL_PCT: f64 = 0.1;
const DUTY_MIN_PERIODS: f64 = 10.0;
const GEOMETRY_TOL: f64 = 1e-12;
const GEOMETRY_DRAWS: usize = 1000;
const CUBE_VOLUME_TOL: f64 = 1e-12;
const SPHERE_VOLUME_REL_TOL: f64 = 0.01;
const VON_MISES_REL_TOL: f64 = 1e-9;
const VON_MISES_DRAWS: usize = 1000;
const THRUST_RATIO_TOL: f64 = 1e-9;
const GRID_CHANGE_MAX: f64 = 0.01;
const SWEEP_POINTS: usize = 100;
const OPT_BUDGET: usize = 500;
const OPT_RANGE_TOL: f64 = 1e-3;
const DRAFT_TOL: f64 = 1e-5;
const REFERENCE_RADIAL_EXTENT: f64 = 0.036;

const SEED: u64 = 0x5eed_2026;

type Outcome = Result<String, String>;

/// Name, check and optional runtime limit.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn duty_reproduction() -> Outcome {
    let freq = 490.0;
    let duration_ms = 100.0;
    ensure(duration_ms * 1e-3 * freq >= DUTY_MIN_PERIODS, || {
        "trace too short".into()
    })?;
    // Motor B carries the published figure for every command.
    let cases = [
        (ControlCommand::Forward, 39.2),
        (ControlCommand::Backward, 31.4),
        (ControlCommand::Left, 58.8),
        (ControlCommand::Right, 15.7),
    ];
    let mut detail = Vec::new();
    for (cmd, expected) in cases {
        let trace = generate_pwm_trace(command_to_motor_states(cmd), duration_ms, freq)
            .map_err(|e| e.to_string())?;
        let pct = 100.0 * measure_duty(&trace, Channel::BPwm).map_err(|e| e.to_string())?;
        ensure((pct - expected).abs() <= DUTY_TOL_PCT, || {
            format!("{cmd}: {pct:.3}% vs {expected}%")
        })?;
        detail.push(format!("{cmd} {pct:.2}%"));
    }
    Ok(detail.join(", "))
}

fn random_params(rng: &mut ChaCha8Rng) -> BladeDesignParams {
    BladeDesignParams {
        span: rng.random_range(0.005..0.1),
        chord_root: rng.random_range(0.002..0.05),
        chord_tip: rng.random_range(0.002..0.05),
        chord_mid: rng.random_range(0.002..0.05),
        pitch_root: rng.random_range(-1.2..1.2),
        pitch_tip: rng.random_range(-1.2..1.2),
        pitch_mid: rng.random_range(-1.2..1.2),
        bulge_beta: rng.random_range(-0.5..1.0),
        bulge_gamma: rng.random_range(0.0..100.0),
        bulge_r0: rng.random_range(0.0..1.0),
        rake_angle: rng.random_range(-1.0..1.0),
        skew_angle: rng.random_range(-1.0..1.0),
        thickness_ratio: rng.random_range(0.04..0.2),
        pitch_axis: rng.random_range(0.0..1.0),
        ..BladeDesignParams::default()
    }
}

fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

fn geometry_invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut iso, mut cont, mut ends, mut gauss) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let e = |x: Result<f64, vesselkit::geometry::GeometryError>| x.map_err(|e| e.to_string());
    for _ in 0..GEOMETRY_DRAWS {
        let p = random_params(&mut rng);

        // Rotation isometry: pairwise distances of the scaled section survive the transform.
        let foil = make_airfoil(12, p.thickness_ratio, p.pitch_axis, ChordSpacing::Cosine)
            .map_err(|e| e.to_string())?;
        let z = rng.random_range(0.0..p.span);
        let section = transform_section(&foil, z, &p).map_err(|e| e.to_string())?;
        let c = e(chord_at(z / p.span, &p))?;
        let scaled: Vec<[f64; 3]> = foil
            .points
            .iter()
            .map(|q| [c * (q[0] - p.pitch_axis), c * p.thickness_scale * q[1], z])
            .collect();
        for i in 0..scaled.len() {
            for j in i + 1..scaled.len() {
                iso = iso.max(
                    (dist(scaled[i], scaled[j]) - dist(section.points[i], section.points[j])).abs(),
                );
            }
        }

        // Piecewise continuity at r = 0.5, approached from both sides.
        let pw = BladeDesignParams {
            chord_mode: ChordMode::PiecewiseMidspan,
            pitch_mode: PitchMode::PiecewiseMidspan,
            ..p.clone()
        };
        let (below, above) = (0.5f64.next_down(), 0.5f64.next_up());
        for f in [chord_at, pitch_at] {
            let mid = e(f(0.5, &pw))?;
            cont = cont
                .max((e(f(below, &pw))? - mid).abs())
                .max((e(f(above, &pw))? - mid).abs());
        }

        // Endpoints in every chord mode (bulge disabled).
        for mode in [
            ChordMode::Linear,
            ChordMode::GaussianBulge,
            ChordMode::PiecewiseMidspan,
        ] {
            let q = BladeDesignParams {
                chord_mode: mode,
                bulge_beta: 0.0,
                ..p.clone()
            };
            ends = ends
                .max((e(chord_at(0.0, &q))? - q.chord_root).abs())
                .max((e(chord_at(1.0, &q))? - q.chord_tip).abs());
        }

        // GaussianBulge with zero amplitude is the linear law.
        let g = BladeDesignParams {
            chord_mode: ChordMode::GaussianBulge,
            bulge_beta: 0.0,
            ..p.clone()
        };
        let l = BladeDesignParams {
            chord_mode: ChordMode::Linear,
            ..p.clone()
        };
        for k in 0..=20 {
            let r = k as f64 / 20.0;
            gauss = gauss.max((e(chord_at(r, &g))? - e(chord_at(r, &l))?).abs());
        }
    }
    for (name, v) in [
        ("isometry", iso),
        ("continuity", cont),
        ("endpoints", ends),
        ("bulge", gauss),
    ] {
        ensure(v <= GEOMETRY_TOL, || format!("{name} error {v:e}"))?;
    }
    Ok(format!("{GEOMETRY_DRAWS} draws: isometry {iso:.1e}, continuity {cont:.1e}, endpoints {ends:.1e}, bulge {gauss:.1e}"))
}

fn f32_corners(mesh: &TriMesh) -> Vec<[[u32; 3]; 3]> {
    (0..mesh.triangle_count())
        .map(|t| mesh.corners(t).map(|v| v.map(|c| (c as f32).to_bits())))
        .collect()
}

fn reference_propeller() -> Outcome {
    let p = BladeDesignParams {
        n_blades: 3,
        span: 0.026,
        hub_diameter: 0.020,
        ..BladeDesignParams::default()
    };
    let propeller = assemble_propeller(&p).map_err(|e| e.to_string())?;
    let mut solids = vec![hub_mesh(&p).map_err(|e| e.to_string())?];
    for k in 0..p.n_blades {
        let blade = blade_mesh(&p, k).map_err(|e| e.to_string())?;
        let theta = blade_angle(k, p.n_blades);
        let extent = blade
            .vertices()
            .iter()
            .map(|v| v[0] * theta.cos() + v[1] * theta.sin())
            .fold(f64::MIN, f64::max);
        ensure(
            (extent - REFERENCE_RADIAL_EXTENT).abs() <= GEOMETRY_TOL,
            || format!("blade {k} reaches {extent} m"),
        )?;
        solids.push(blade);
    }
    ensure(propeller.components().len() == solids.len(), || {
        format!("{} shells", propeller.components().len())
    })?;
    for (i, s) in solids.iter().enumerate() {
        let report = is_watertight(s);
        ensure(report.is_watertight(), || {
            format!("solid {i} open: {report:?}")
        })?;
        let v = mesh_volume(s).map_err(|e| e.to_string())?;
        ensure(v > 0.0, || format!("solid {i} volume {v}"))?;
    }
    let bytes = export_stl(&propeller, StlFormat::Binary);
    let back = import_stl(&bytes).map_err(|e| e.to_string())?;
    ensure(f32_corners(&back) == f32_corners(&propeller), || {
        "binary STL corners differ".into()
    })?;
    // Normals are recomputed from f32 vertices on re-export; vertex payloads must match byte for byte.
    let vertex_bytes = |b: &[u8]| {
        b[84..]
            .chunks(50)
            .map(|r| r[12..48].to_vec())
            .collect::<Vec<_>>()
    };
    let again = export_stl(&back, StlFormat::Binary);
    ensure(
        again.len() == bytes.len() && vertex_bytes(&again) == vertex_bytes(&bytes),
        || "re-export differs".into(),
    )?;
    Ok(format!(
        "{} solids watertight, {} triangles, tip radius 36 mm, STL {} bytes lossless",
        solids.len(),
        propeller.triangle_count(),
        bytes.len()
    ))
}

/// Icosahedron refined `levels` times with vertices projected onto the sphere.
fn icosphere(radius: f64, levels: usize) -> TriMesh {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<[f64; 3]> = [
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ]
    .to_vec();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    let project = |v: [f64; 3]| {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        v.map(|c| c * radius / n)
    };
    verts = verts.into_iter().map(project).collect();
    for _ in 0..levels {
        let mut cache: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |a: usize, b: usize, verts: &mut Vec<[f64; 3]>| {
            *cache.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let m = [0, 1, 2].map(|k| 0.5 * (verts[a][k] + verts[b][k]));
                verts.push(project(m));
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = midpoint(a, b, &mut verts);
            let bc = midpoint(b, c, &mut verts);
            let ca = midpoint(c, a, &mut verts);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    TriMesh::new(verts, faces).expect("icosphere is well formed")
}

fn mesh_oracles() -> Outcome {
    let cube = TriMesh::cuboid([0.0; 3], [1.0; 3]).map_err(|e| e.to_string())?;
    let v = mesh_volume(&cube).map_err(|e| e.to_string())?;
    ensure((v - 1.0).abs() <= CUBE_VOLUME_TOL, || {
        format!("cube volume {v}")
    })?;

    let r = 0.05;
    let sphere = icosphere(r, 4);
    let vs = mesh_volume(&sphere).map_err(|e| e.to_string())?;
    let exact = 4.0 / 3.0 * PI * r.powi(3);
    let rel = (vs - exact).abs() / exact;
    ensure(rel <= SPHERE_VOLUME_REL_TOL, || {
        format!("sphere volume off by {:.3}%", rel * 100.0)
    })?;

    let open = TriMesh::new(cube.vertices().to_vec(), cube.triangles()[1..].to_vec())
        .map_err(|e| e.to_string())?;
    let report = is_watertight(&open);
    ensure(
        !report.is_watertight() && report.boundary_edges.len() == 3,
        || format!("{report:?}"),
    )?;
    Ok(format!(
        "cube {v}, icosphere ({} faces) {:.3}% low, open cube {} boundary edges",
        sphere.triangle_count(),
        rel * 100.0,
        report.boundary_edges.len()
    ))
}

fn von_mises_properties() -> Outcome {
    ensure(von_mises(StressState::new(7e6, 7e6, 7e6)) == 0.0, || {
        "hydrostatic not zero".into()
    })?;
    for s in [1.0, 123.456e6, -80e6] {
        let v = von_mises(StressState::uniaxial(s));
        ensure(v == s.abs(), || format!("uniaxial {s} -> {v}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x5);
    let mut worst = 0.0f64;
    for _ in 0..VON_MISES_DRAWS {
        let [a, b, c]: [f64; 3] = std::array::from_fn(|_| rng.random_range(-500e6..500e6));
        let p = rng.random_range(-100e6..100e6);
        let base = von_mises(StressState::new(a, b, c));
        let variants = [
            von_mises(StressState::new(b, c, a)),
            von_mises(StressState::new(c, a, b)),
            von_mises(StressState::new(b, a, c)),
            von_mises(StressState::new(a, c, b)),
            von_mises(StressState::new(c, b, a)),
            von_mises(StressState::new(a + p, b + p, c + p)),
        ];
        for v in variants {
            worst = worst.max((v - base).abs() / base);
        }
    }
    ensure(worst <= VON_MISES_REL_TOL, || {
        format!("relative deviation {worst:e}")
    })?;
    Ok(format!(
        "{VON_MISES_DRAWS} triples, worst relative deviation {worst:.1e}"
    ))
}

fn bem_properties() -> Outcome {
    let p = BladeDesignParams::default();
    let mut max_eta = 0.0f64;
    for i in 1..=SWEEP_POINTS {
        let op = OperatingPoint {
            advance_speed: 0.05 * i as f64,
            ..OperatingPoint::default()
        };
        let r = bem_evaluate(&p, &op).map_err(|e| e.to_string())?;
        ensure(r.efficiency < 1.0, || {
            format!("eta {} at V = {}", r.efficiency, op.advance_speed)
        })?;
        max_eta = max_eta.max(r.efficiency);
    }
    let bollard = |rpm: f64| OperatingPoint {
        rpm,
        advance_speed: 0.0,
        ..OperatingPoint::default()
    };
    let t1 = bem_evaluate(&p, &bollard(1500.0))
        .map_err(|e| e.to_string())?
        .thrust;
    let t2 = bem_evaluate(&p, &bollard(3000.0))
        .map_err(|e| e.to_string())?
        .thrust;
    let ratio = t2 / t1;
    ensure((ratio - 4.0).abs() <= THRUST_RATIO_TOL, || {
        format!("thrust ratio {ratio}")
    })?;
    let op = OperatingPoint::default();
    let coarse = bem_evaluate(&p, &op).map_err(|e| e.to_string())?.thrust;
    let fine_params = BladeDesignParams {
        n_sections: 2 * p.n_sections,
        ..p.clone()
    };
    let fine = bem_evaluate(&fine_params, &op)
        .map_err(|e| e.to_string())?
        .thrust;
    let change = (fine - coarse).abs() / coarse.abs();
    ensure(change < GRID_CHANGE_MAX, || {
        format!("grid change {:.3}%", change * 100.0)
    })?;
    Ok(format!("max eta {max_eta:.4} over {SWEEP_POINTS} speeds, bollard ratio {ratio:.12}, grid change {:.3}%", change * 100.0))
}

fn best_so_far_monotone(history: &[IterationRecord]) -> bool {
    let mut best = f64::NEG_INFINITY;
    history.iter().filter(|r| r.accepted).all(|r| {
        let ok = r.objective >= best;
        best = r.objective;
        ok
    })
}

/// Objective bits, parameter bits and acceptance flag per record.
type HistoryBits = Vec<(u64, Vec<u64>, bool)>;

fn bits(history: &[IterationRecord]) -> HistoryBits {
    history
        .iter()
        .map(|r| {
            (
                r.objective.to_bits(),
                Tunable::ALL
                    .iter()
                    .map(|t| t.get(&r.params).to_bits())
                    .collect(),
                r.accepted,
            )
        })
        .collect()
}

fn optimizer_oracle() -> Outcome {
    let fields = [
        (Tunable::ChordRoot, 0.006, 0.012, 0.00873),
        (Tunable::PitchRoot, 0.20, 0.60, 0.4137),
        (Tunable::PitchTip, 0.10, 0.30, 0.2291),
        (Tunable::ThicknessRatio, 0.08, 0.16, 0.1123),
    ];
    let bounds = ParameterBounds::new(
        fields
            .iter()
            .map(|&(f, lo, hi, _)| FieldBound::new(f, lo, hi))
            .collect(),
    )
    .map_err(|e| e.to_string())?;
    let surrogate = |p: &BladeDesignParams| {
        let v: f64 = fields
            .iter()
            .map(|&(f, _, _, t)| (f.get(p) - t).powi(2))
            .sum();
        Ok(Evaluation {
            feedback: Default::default(),
            objective: -v,
        })
    };
    let p0 = BladeDesignParams::default();
    let a = optimize_with(&p0, &bounds, OPT_BUDGET, surrogate).map_err(|e| e.to_string())?;
    let b = optimize_with(&p0, &bounds, OPT_BUDGET, surrogate).map_err(|e| e.to_string())?;
    let evaluations = a.len() - 1;
    ensure(evaluations <= OPT_BUDGET, || {
        format!("{evaluations} evaluations")
    })?;
    let last = a.iter().rev().find(|r| r.accepted).expect("start accepted");
    let mut worst = 0.0f64;
    for &(f, lo, hi, t) in &fields {
        worst = worst.max((f.get(&last.params) - t).abs() / (hi - lo));
    }
    ensure(worst <= OPT_RANGE_TOL, || {
        format!("final point {worst:e} of range from optimum")
    })?;
    ensure(best_so_far_monotone(&a), || "best-so-far decreased".into())?;
    ensure(bits(&a) == bits(&b), || {
        "histories differ between runs".into()
    })?;

    // The blade-element objective of the shipped plan obeys the same rule.
    let plan = shipped_plan()?;
    let bem = vesselkit::optimize::optimize(
        &plan.initial_params,
        &plan.optimizer.bounds,
        &plan.objective,
        &plan.operating_point,
        plan.optimizer.budget,
    )
    .map_err(|e| e.to_string())?;
    ensure(best_so_far_monotone(&bem), || {
        "best-so-far decreased on BEM history".into()
    })?;
    Ok(format!(
        "{evaluations} evaluations, worst error {worst:.1e} of range, identical reruns"
    ))
}

fn shipped_spec_path() -> &'static Path {
    Path::new(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/vessel_spec.toml"
    ))
}

fn shipped_plan() -> Result<PipelinePlan, String> {
    let text = std::fs::read_to_string(shipped_spec_path()).map_err(|e| e.to_string())?;
    plan(&DesignSpec::from_toml(&text).map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

fn end_to_end() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_vesselkit");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let plan_path = dir.path().join("plan.toml");
    let run = |args: &[&std::ffi::OsStr]| -> Result<(), String> {
        let out = Command::new(exe)
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr))
        })
    };
    run(&[
        "plan".as_ref(),
        shipped_spec_path().as_os_str(),
        "-o".as_ref(),
        plan_path.as_os_str(),
    ])?;
    let mut reports = Vec::new();
    for name in ["first", "second"] {
        let out = dir.path().join(name);
        run(&[
            "run".as_ref(),
            plan_path.as_os_str(),
            "-o".as_ref(),
            out.as_os_str(),
        ])?;
        reports
            .push(std::fs::read_to_string(out.join("run_report.txt")).map_err(|e| e.to_string())?);
    }
    let succeeded = reports[0].matches("status = succeeded").count();
    // One run-level status line plus six stage lines.
    ensure(succeeded == 7, || {
        format!("{succeeded} succeeded status lines:\n{}", reports[0])
    })?;
    ensure(reports[0] != without_timestamp(&reports[0]), || {
        "report has no timestamp line".into()
    })?;
    ensure(
        without_timestamp(&reports[0]) == without_timestamp(&reports[1]),
        || "reports differ".into(),
    )?;

    let hull = TriMesh::cuboid([0.0; 3], [0.3, 0.2, 0.1]).map_err(|e| e.to_string())?;
    let b = buoyancy_check(&hull, 3.0, 1000.0).map_err(|e| e.to_string())?;
    ensure((b.draft - 0.05).abs() <= DRAFT_TOL, || {
        format!("box draft {}", b.draft)
    })?;
    Ok(format!(
        "6 stages succeeded twice, identical reports, box draft {:.7} m",
        b.draft
    ))
}

fn amd_classification() -> Outcome {
    let base = shipped_plan()?;
    let with_mask = |mask: u32| {
        let mut p = base.clone();
        for (i, &s) in base.stages.iter().enumerate() {
            p.checkpoints.insert(
                s,
                if mask & (1 << i) != 0 {
                    Checkpoint::HumanReview
                } else {
                    Checkpoint::None
                },
            );
        }
        p
    };
    ensure(
        base.stages.len() == 6 && base.stages[0] == Stage::GenerateGeometry,
        || "unexpected default plan".into(),
    )?;
    let none = classify_amd_level(&with_mask(0)).level;
    ensure(none == 4, || format!("zero checkpoints -> {none}"))?;
    let all = classify_amd_level(&with_mask(0b111111)).level;
    ensure(all <= 2, || format!("all checkpoints -> {all}"))?;
    for mask in 0u32..64 {
        let level = classify_amd_level(&with_mask(mask)).level;
        for bit in (0..6).filter(|b| mask & (1 << b) != 0) {
            let fewer = classify_amd_level(&with_mask(mask & !(1 << bit))).level;
            ensure(fewer >= level, || {
                format!("mask {mask:06b} minus bit {bit}: {level} -> {fewer}")
            })?;
        }
    }
    Ok(format!(
        "none -> {none}, all -> {all}, monotone over 64 subsets"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "duty-cycle reproduction",
            duty_reproduction,
            Some(Duration::from_secs(1)),
        ),
        (
            "geometry invariants",
            geometry_invariants,
            Some(Duration::from_secs(5)),
        ),
        (
            "reference propeller build",
            reference_propeller,
            Some(Duration::from_secs(10)),
        ),
        ("mesh oracles", mesh_oracles, None),
        ("von Mises", von_mises_properties, None),
        ("BEM properties", bem_properties, None),
        ("optimizer", optimizer_oracle, Some(Duration::from_secs(5))),
        (
            "end-to-end determinism",
            end_to_end,
            Some(Duration::from_secs(60)),
        ),
        ("AMD classification", amd_classification, None),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if elapsed > *limit {
                outcome = Err(format!("took {elapsed:?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!(
                "criterion {} PASS  {name}: {detail} [{:.1} ms]",
                i + 1,
                elapsed.as_secs_f64() * 1e3
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {} FAIL  {name}: {why} [{:.1} ms]",
                    i + 1,
                    elapsed.as_secs_f64() * 1e3
                );
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
