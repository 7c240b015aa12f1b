//! Command-line front end: loads a material file, runs one solver command,
//! and emits a CSV table or a JSON record (schemas ship under `schema/`).
//!
//! Exit codes: 0 success, 1 usage or unreadable input, 2 inadmissible
//! material, 3 numerical failure. Failures also print a one-line
//! machine-readable JSON record to stderr.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cosserat_waves::algebra::gen_eig3;
use cosserat_waves::classical::{
    classical_rayleigh_speed, secular_classic, secular_mielke_fu, secular_stroh_classical,
    ClassicalSpeeds,
};
use cosserat_waves::impedance::{impedance, NEAR_SONIC_GUARD};
use cosserat_waves::material::{characteristic_speeds, check_conditions, CosseratMaterial};
use cosserat_waves::rayleigh::{
    dispersion_sweep, k_grid, solve, wavefield, FieldGrid, SolveOptions,
};
use cosserat_waves::stroh::{
    limiting_speed_analytic, limiting_speed_scan, stroh_secular, WaveContext,
};
use cosserat_waves::CosseratError;
use output::{emit, matrix_json, sig9, Csv, Cx};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cosserat",
    version,
    about = "Rayleigh surface waves in isotropic Cosserat elastic half-spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scale {
    Lin,
    Log,
}

#[derive(Args)]
struct CommonArgs {
    /// Material file: JSON object with keys lambda_e, mu_e, mu_c,
    /// curvature_G, rot_inertia_J, rho and optional alpha1..alpha3
    #[arg(long)]
    material: PathBuf,
    /// Output path (stdout when omitted); files are written atomically
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct KGridArgs {
    #[arg(long, default_value_t = 0.1)]
    k_min: f64,
    #[arg(long, default_value_t = 100.0)]
    k_max: f64,
    #[arg(long, default_value_t = 50)]
    k_points: usize,
    #[arg(long, value_enum, default_value_t = Scale::Log)]
    k_scale: Scale,
}

#[derive(Args)]
struct SolverArgs {
    /// Wavenumber
    #[arg(long, default_value_t = 1.0)]
    k: f64,
    /// Starting quadrature panel count
    #[arg(long, default_value_t = 256)]
    quad_n: usize,
    /// Root-finder tolerance relative to the limiting speed
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Admissibility condition sets and characteristic speeds (JSON)
    Check {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Limiting speed (analytic and angle-scan) per wavenumber
    LimitSpeed {
        #[command(flatten)]
        common: CommonArgs,
        /// Single wavenumber; when omitted the k-grid flags apply
        #[arg(long)]
        k: Option<f64>,
        #[command(flatten)]
        grid: KGridArgs,
        /// Angles of the coarse scan
        #[arg(long, default_value_t = 512)]
        scan_points: usize,
    },
    /// Surface-wave speed, amplitudes and decay data at one wavenumber
    Solve {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Impedance determinant and explicit secular function on a speed grid
    SecularCurve {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Points of the speed grid on [0, limiting speed)
        #[arg(long, default_value_t = 200)]
        v_points: usize,
    },
    /// Dispersion sweep: wave speed, frequency and group velocity over k
    Dispersion {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        grid: KGridArgs,
        #[arg(long, default_value_t = 256)]
        quad_n: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Reconstructed displacement / microrotation field on a grid
    Field {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, default_value_t = 64)]
        x1_points: usize,
        /// Extent in the propagation direction; defaults to two wavelengths
        #[arg(long)]
        x1_max: Option<f64>,
        #[arg(long, default_value_t = 64)]
        x2_points: usize,
        /// Depth extent; defaults to 6 / k
        #[arg(long)]
        x2_max: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        /// Complex amplitude factor applied to the boundary amplitude
        #[arg(long, default_value_t = 1.0)]
        phase_re: f64,
        #[arg(long, default_value_t = 0.0)]
        phase_im: f64,
    },
    /// Classical-limit secular forms and their shared root
    Classical {
        #[command(flatten)]
        common: CommonArgs,
        /// Points of the speed table (0 = root only)
        #[arg(long, default_value_t = 0)]
        v_points: usize,
    },
}

fn error_kind(e: &CosseratError) -> &'static str {
    use CosseratError::*;
    match e {
        NotHermitian { .. } => "NotHermitian",
        IllConditioned { .. } => "IllConditioned",
        Singular { .. } => "Singular",
        BadDirection(_) => "BadDirection",
        MissingParameter(_) => "MissingParameter",
        ComplexFrequency { .. } => "ComplexFrequency",
        InadmissibleMaterial(_) => "InadmissibleMaterial",
        RealRoot { .. } => "RealRoot",
        DegenerateRoots { .. } => "DegenerateRoots",
        OutOfRange { .. } => "OutOfRange",
        NearLimitingSpeed { .. } => "NearLimitingSpeed",
        SpectrumNotRight { .. } => "SpectrumNotRight",
        NoRoot { .. } => "NoRoot",
        NewtonDiverged(_) => "NewtonDiverged",
        SingularSystem { .. } => "SingularSystem",
        Numerical(_) => "Numerical",
        InvalidMaterial(_) => "InvalidMaterial",
        InvalidArgument(_) => "InvalidArgument",
        Io(_) => "Io",
        Parse(_) => "Parse",
    }
}

fn exit_code_for(e: &CosseratError) -> u8 {
    use CosseratError::*;
    match e {
        Io(_) | Parse(_) | InvalidArgument(_) => 1,
        InadmissibleMaterial(_) | InvalidMaterial(_) | MissingParameter(_) => 2,
        _ => 3,
    }
}

fn report_error(e: &CosseratError) -> u8 {
    let code = exit_code_for(e);
    let record = serde_json::json!({
        "error": { "code": code, "kind": error_kind(e), "message": e.to_string() }
    });
    eprintln!("{record}");
    code
}

fn json_out(common: &CommonArgs, value: &serde_json::Value) -> Result<(), CosseratError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    emit(common.out.as_deref(), &text)?;
    Ok(())
}

fn run(cli: Cli) -> Result<u8, CosseratError> {
    match cli.command {
        Command::Check { common } => {
            let material = CosseratMaterial::from_file(&common.material)?;
            let conditions = check_conditions(&material);
            let speeds = characteristic_speeds(&material, None)?;
            let value = serde_json::json!({
                "material": material,
                "conditions": conditions,
                "characteristic_speeds": speeds,
            });
            json_out(&common, &value)?;
            if !conditions.in_plane_real_waves.holds {
                return Err(CosseratError::InadmissibleMaterial(format!(
                    "in_plane_real_waves = false (margin {})",
                    conditions.in_plane_real_waves.margin
                )));
            }
            Ok(0)
        }

        Command::LimitSpeed {
            common,
            k,
            grid,
            scan_points,
        } => {
            let material = CosseratMaterial::from_file(&common.material)?;
            let ks = match k {
                Some(k) => vec![k],
                None => k_grid(grid.k_min, grid.k_max, grid.k_points, grid.k_scale == Scale::Log)?,
            };
            let mut rows = Vec::new();
            for k in &ks {
                let ctx = WaveContext::new(&material, *k)?;
                rows.push((
                    *k,
                    limiting_speed_analytic(&ctx),
                    limiting_speed_scan(&ctx, scan_points)?,
                ));
            }
            match common.format {
                Format::Csv => {
                    let mut csv = Csv::new(&["k", "v_hat_analytic", "v_hat_scan"]);
                    for (k, a, s) in &rows {
                        csv.row(vec![sig9(*k), sig9(*a), sig9(*s)]);
                    }
                    emit(common.out.as_deref(), &csv.render())?;
                }
                Format::Json => {
                    let points: Vec<_> = rows
                        .iter()
                        .map(|(k, a, s)| {
                            serde_json::json!({"k": k, "analytic": a, "scan": s})
                        })
                        .collect();
                    json_out(&common, &serde_json::json!({ "points": points }))?;
                }
            }
            Ok(0)
        }

        Command::Solve { common, solver } => {
            let material = CosseratMaterial::from_file(&common.material)?;
            let ctx = WaveContext::new(&material, solver.k)?;
            let opts = SolveOptions {
                tol: solver.tol,
                quad_n: solver.quad_n,
                ..SolveOptions::default()
            };
            let sol = solve(&ctx, &opts)?;
            let spec = gen_eig3(&sol.e, None)?;
            let imp = impedance(&ctx, sol.v_r, solver.quad_n)?;
            match common.format {
                Format::Csv => {
                    let mut csv = Csv::new(&["k", "v_r", "limiting_speed", "det_residual"]);
                    csv.row(vec![
                        sig9(solver.k),
                        sig9(sol.v_r),
                        sig9(sol.limiting_speed),
                        sig9(sol.det_residual),
                    ]);
                    emit(common.out.as_deref(), &csv.render())?;
                }
                Format::Json => {
                    let value = serde_json::json!({
                        "k": solver.k,
                        "v_r": sol.v_r,
                        "limiting_speed": sol.limiting_speed,
                        "method": "bisection",
                        "det_residual": sol.det_residual,
                        "riccati_residual": imp.residual,
                        "y0": sol.y0.iter().map(|z| Cx::from(*z)).collect::<Vec<_>>(),
                        "z0": sol.z0.iter().map(|z| Cx::from(*z)).collect::<Vec<_>>(),
                        "impedance_matrix": matrix_json(&sol.m_at_root),
                        "decay_matrix": matrix_json(&sol.e),
                        "decay_spectrum": spec.values.iter().map(|z| Cx::from(*z)).collect::<Vec<_>>(),
                        "decay_rate": spec.min_re(),
                    });
                    json_out(&common, &value)?;
                }
            }
            Ok(0)
        }

        Command::SecularCurve {
            common,
            solver,
            v_points,
        } => {
            if v_points < 2 {
                return Err(CosseratError::InvalidArgument(
                    "secular curve needs at least two speed points".into(),
                ));
            }
            let material = CosseratMaterial::from_file(&common.material)?;
            let ctx = WaveContext::new(&material, solver.k)?;
            let vhat = limiting_speed_analytic(&ctx);
            let hi = NEAR_SONIC_GUARD * vhat;
            let mut rows = Vec::new();
            for i in 0..v_points {
                let v = hi * i as f64 / (v_points - 1) as f64;
                let det = impedance(&ctx, v, solver.quad_n)?.m.det().re;
                let s = stroh_secular(&ctx, v)?;
                rows.push((v, det, s));
            }
            match common.format {
                Format::Csv => {
                    let mut csv = Csv::new(&["v", "det_m", "s_stroh"]);
                    for (v, d, s) in &rows {
                        csv.row(vec![sig9(*v), sig9(*d), sig9(*s)]);
                    }
                    emit(common.out.as_deref(), &csv.render())?;
                }
                Format::Json => {
                    let points: Vec<_> = rows
                        .iter()
                        .map(|(v, d, s)| serde_json::json!({"v": v, "det_m": d, "s_stroh": s}))
                        .collect();
                    json_out(
                        &common,
                        &serde_json::json!({"limiting_speed": vhat, "points": points}),
                    )?;
                }
            }
            Ok(0)
        }

        Command::Dispersion {
            common,
            grid,
            quad_n,
            tol,
        } => {
            let material = CosseratMaterial::from_file(&common.material)?;
            let ks = k_grid(grid.k_min, grid.k_max, grid.k_points, grid.k_scale == Scale::Log)?;
            let opts = SolveOptions {
                tol,
                quad_n,
                ..SolveOptions::default()
            };
            let table = dispersion_sweep(&material, &ks, &opts)?;
            match common.format {
                Format::Csv => {
                    let mut csv =
                        Csv::new(&["k", "v_r", "omega", "group_velocity", "status"]);
                    for p in &table.points {
                        csv.row(vec![
                            sig9(p.k),
                            p.v_r.map_or("nan".into(), sig9),
                            p.omega.map_or("nan".into(), sig9),
                            p.group_velocity.map_or("nan".into(), sig9),
                            if p.error.is_none() { "ok".into() } else { "error".into() },
                        ]);
                    }
                    emit(common.out.as_deref(), &csv.render())?;
                }
                Format::Json => {
                    json_out(&common, &serde_json::to_value(&table).expect("table"))?;
                }
            }
            Ok(0)
        }

        Command::Field {
            common,
            solver,
            x1_points,
            x1_max,
            x2_points,
            x2_max,
            t,
            phase_re,
            phase_im,
        } => {
            let material = CosseratMaterial::from_file(&common.material)?;
            let ctx = WaveContext::new(&material, solver.k)?;
            let opts = SolveOptions {
                tol: solver.tol,
                quad_n: solver.quad_n,
                ..SolveOptions::default()
            };
            let mut sol = solve(&ctx, &opts)?;
            let phase = cosserat_waves::algebra::c(phase_re, phase_im);
            for i in 0..3 {
                sol.y0[i] *= phase;
                sol.z0[i] *= phase;
            }
            let x1_hi = x1_max.unwrap_or(2.0 * std::f64::consts::TAU / solver.k);
            let x2_hi = x2_max.unwrap_or(6.0 / solver.k);
            let linspace = |hi: f64, n: usize| -> Vec<f64> {
                (0..n).map(|i| hi * i as f64 / (n.max(2) - 1) as f64).collect()
            };
            let grid = FieldGrid {
                x1: linspace(x1_hi, x1_points),
                x2: linspace(x2_hi, x2_points),
                t,
            };
            let field = wavefield(&sol, &ctx, &grid)?;
            match common.format {
                Format::Csv => {
                    let mut csv = Csv::new(&["x1", "x2", "t", "u1", "u2", "theta3"]);
                    for s in &field.samples {
                        csv.row(vec![
                            sig9(s.x1),
                            sig9(s.x2),
                            sig9(s.t),
                            sig9(s.u1),
                            sig9(s.u2),
                            sig9(s.theta3),
                        ]);
                    }
                    emit(common.out.as_deref(), &csv.render())?;
                }
                Format::Json => {
                    let value = serde_json::json!({
                        "v_r": sol.v_r,
                        "boundary_traction_residual": field.boundary_traction_residual,
                        "decay_rate": field.decay_rate,
                        "amplitude_conditioning": field.amplitude_conditioning,
                        "samples": field.samples,
                    });
                    json_out(&common, &value)?;
                }
            }
            Ok(0)
        }

        Command::Classical { common, v_points } => {
            let material = CosseratMaterial::from_file(&common.material)?;
            let sp = ClassicalSpeeds::from_material(&material)?;
            let root = classical_rayleigh_speed(&sp)?;
            let hi = 0.999 * sp.c_l.min(sp.c_t);
            let n = v_points.max(0);
            let mut rows = Vec::new();
            for i in 0..n {
                let v = hi * i as f64 / (n.max(2) - 1) as f64;
                rows.push((
                    v,
                    secular_mielke_fu(&sp, v),
                    secular_classic(&sp, v),
                    secular_stroh_classical(&sp, v),
                ));
            }
            match common.format {
                Format::Csv => {
                    let mut csv = Csv::new(&["v", "s_mielke_fu", "s_classic", "s_stroh"]);
                    for (v, a, b, c) in &rows {
                        csv.row(vec![sig9(*v), sig9(*a), sig9(*b), sig9(*c)]);
                    }
                    let mut text = format!("# rayleigh_root,{}\n", sig9(root));
                    text.push_str(&csv.render());
                    emit(common.out.as_deref(), &text)?;
                }
                Format::Json => {
                    let points: Vec<_> = rows
                        .iter()
                        .map(|(v, a, b, c)| {
                            serde_json::json!({
                                "v": v, "mielke_fu": a, "classic": b, "stroh": c
                            })
                        })
                        .collect();
                    let value = serde_json::json!({
                        "c_l": sp.c_l,
                        "c_t": sp.c_t,
                        "c_m": sp.c_m,
                        "rayleigh_root": root,
                        "points": points,
                    });
                    json_out(&common, &value)?;
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; add the machine-readable record
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            if is_help {
                return ExitCode::SUCCESS;
            }
            let record = serde_json::json!({
                "error": { "code": 1, "kind": "Usage", "message": e.to_string() }
            });
            eprintln!("{record}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => ExitCode::from(report_error(&e)),
    }
}
