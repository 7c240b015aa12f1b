//! Surface-wave solvers and field reconstruction.
//!
//! Two routes to the wave speed: a scan-plus-bisection root finder on the
//! monotone secular function det M(v) (the determinant decreases strictly
//! from det M(0) > 0 and crosses zero exactly once below the limiting
//! speed), and a Newton iteration that solves the Riccati equation and the
//! secular equation simultaneously for the nine Hermitian entries of M and
//! the speed.

use crate::algebra::{c, gen_eig3, mat_exp, vnorm_c, vscale_c, C64, Mat3C, Vec3C};
use crate::error::{CosseratError, Result};
use crate::impedance::{decay_matrix, impedance, riccati_residual, NEAR_SONIC_GUARD};
use crate::material::CosseratMaterial;
use crate::stroh::{limiting_speed_analytic, WaveContext};
use rayon::prelude::*;

/// Which algorithm produced a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    Bisection,
    Newton,
    Stroh,
}

/// Root-finder configuration.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Bisection width relative to the limiting speed.
    pub tol: f64,
    /// Points of the initial sign-change scan.
    pub scan_points: usize,
    /// Starting quadrature panel count.
    pub quad_n: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-9,
            scan_points: 64,
            quad_n: 256,
        }
    }
}

/// An admissible surface-wave solution.
#[derive(Debug, Clone)]
pub struct RayleighSolution {
    /// Wave speed, 0 < v_r < limiting speed.
    pub v_r: f64,
    /// Limiting speed of the context.
    pub limiting_speed: f64,
    /// Impedance matrix at the root.
    pub m_at_root: Mat3C,
    /// Decay matrix at the root; Re spec E > 0.
    pub e: Mat3C,
    /// Boundary amplitude in normalized variables, unit norm, first nonzero
    /// component rotated real positive.
    pub y0: Vec3C,
    /// Boundary amplitude in physical variables, z = diag(1/sqrt(rho),
    /// 1/sqrt(rho), 1/sqrt(rho J)) y.
    pub z0: Vec3C,
    /// |lambda_min(M)| at the root (the meaningful "det = 0" residual).
    pub det_residual: f64,
    pub method: SolveMethod,
    pub iterations: usize,
}

fn det_m(ctx: &WaveContext, v: f64, quad_n: usize) -> Result<f64> {
    let imp = impedance(ctx, v, quad_n)?;
    let d = imp.m.det();
    Ok(d.re)
}

fn finish_solution(
    ctx: &WaveContext,
    v: f64,
    vhat: f64,
    quad_n: usize,
    method: SolveMethod,
    iterations: usize,
) -> Result<RayleighSolution> {
    let imp = impedance(ctx, v, quad_n)?;
    let (vals, modal) = crate::algebra::herm_eig(&imp.m, None)?;
    let mut idx = 0;
    for i in 1..3 {
        if vals[i].abs() < vals[idx].abs() {
            idx = i;
        }
    }
    let det_residual = vals[idx].abs();
    let trace = imp.m.trace().re;
    if det_residual > 1e-6 * trace.abs().max(1e-300) {
        return Err(CosseratError::Numerical(format!(
            "secular root rejected: |lambda_min| = {det_residual:.3e} vs trace {trace:.3e}"
        )));
    }
    let mut y0 = [
        modal.0[0][idx],
        modal.0[1][idx],
        modal.0[2][idx],
    ];
    // phase convention: first component above threshold rotated real positive
    let norm = vnorm_c(&y0);
    if let Some(first) = y0.iter().find(|e| e.norm() > 1e-8 * norm) {
        let phase = first.conj() / first.norm();
        y0 = vscale_c(&y0, phase);
    }
    y0 = vscale_c(&y0, c(1.0 / vnorm_c(&y0), 0.0));

    let my = imp.m.matvec(&y0);
    if vnorm_c(&my) > 1e-7 * imp.m.norm_fro() {
        return Err(CosseratError::Numerical(format!(
            "boundary amplitude residual ||M y0|| = {:.3e} too large",
            vnorm_c(&my)
        )));
    }

    let dm = decay_matrix(ctx, v, &imp.m)?;
    let ms = ctx.mass_sqrt();
    let z0 = [y0[0] / ms[0], y0[1] / ms[1], y0[2] / ms[2]];

    Ok(RayleighSolution {
        v_r: v,
        limiting_speed: vhat,
        m_at_root: imp.m,
        e: dm.e,
        y0,
        z0,
        det_residual,
        method,
        iterations,
    })
}

/// Scan + bisection + secant polish on det M(v).
///
/// det M decreases strictly on [0, limiting speed) and has exactly one sign
/// change, so a coarse scan followed by bisection is robust; a secant step
/// sharpens the final digits.
pub fn solve(ctx: &WaveContext, opts: &SolveOptions) -> Result<RayleighSolution> {
    let vhat = limiting_speed_analytic(ctx);
    let hi = NEAR_SONIC_GUARD * vhat;
    let n = opts.scan_points.max(8);

    let mut prev_v = 0.0;
    let mut prev_f = det_m(ctx, 0.0, opts.quad_n)?;
    let mut bracket = None;
    let mut min_det = prev_f;
    for i in 1..n {
        let v = hi * i as f64 / (n - 1) as f64;
        let f = det_m(ctx, v, opts.quad_n)?;
        min_det = min_det.min(f);
        if prev_f > 0.0 && f <= 0.0 {
            bracket = Some((prev_v, prev_f, v, f));
            break;
        }
        prev_v = v;
        prev_f = f;
    }
    let (mut a, mut fa, mut b, mut fb) =
        bracket.ok_or(CosseratError::NoRoot { margin: min_det })?;

    let mut iterations = 0usize;
    while b - a > opts.tol * vhat && iterations < 200 {
        let mid = 0.5 * (a + b);
        let fm = det_m(ctx, mid, opts.quad_n)?;
        iterations += 1;
        if fm > 0.0 {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
    }
    // one secant polish
    let mut root = if (fb - fa).abs() > 0.0 {
        (b - fb * (b - a) / (fb - fa)).clamp(a, b)
    } else {
        0.5 * (a + b)
    };
    if !root.is_finite() {
        root = 0.5 * (a + b);
    }
    iterations += 1;

    finish_solution(ctx, root, vhat, opts.quad_n, SolveMethod::Bisection, iterations)
}

/// Starting point of the Newton solver: an impedance matrix at a guessed
/// speed.
#[derive(Debug, Clone)]
pub struct NewtonSeed {
    pub m: Mat3C,
    pub v: f64,
}

/// Builds a Newton seed by evaluating the impedance matrix at `v`.
pub fn newton_seed(ctx: &WaveContext, v: f64, quad_n: usize) -> Result<NewtonSeed> {
    Ok(NewtonSeed {
        m: impedance(ctx, v, quad_n)?.m,
        v,
    })
}

fn pack(m: &Mat3C, v: f64) -> [f64; 10] {
    [
        m.0[0][0].re,
        m.0[1][1].re,
        m.0[0][1].re,
        m.0[0][1].im,
        m.0[0][2].re,
        m.0[0][2].im,
        m.0[1][2].re,
        m.0[1][2].im,
        m.0[2][2].re,
        v,
    ]
}

fn unpack(x: &[f64; 10]) -> (Mat3C, f64) {
    let m = Mat3C([
        [c(x[0], 0.0), c(x[2], x[3]), c(x[4], x[5])],
        [c(x[2], -x[3]), c(x[1], 0.0), c(x[6], x[7])],
        [c(x[4], -x[5]), c(x[6], -x[7]), c(x[8], 0.0)],
    ]);
    (m, x[9])
}

fn newton_residual(ctx: &WaveContext, x: &[f64; 10]) -> [f64; 10] {
    let (m, v) = unpack(x);
    let t_inv = ctx
        .t
        .inverse()
        .expect("context stiffness is positive definite")
        .to_complex();
    let i = c(0.0, 1.0);
    let g = m
        .sub(&ctx.r.to_complex().scale(i))
        .matmul(&t_inv)
        .matmul(&m.add(&ctx.r.transpose().to_complex().scale(i)))
        .sub(&ctx.q_tilde(v).to_complex());
    [
        g.0[0][0].re,
        g.0[1][1].re,
        g.0[2][2].re,
        g.0[0][1].re,
        g.0[0][1].im,
        g.0[0][2].re,
        g.0[0][2].im,
        g.0[1][2].re,
        g.0[1][2].im,
        m.det().re,
    ]
}

/// Partial-pivot LU solve of a dense 10x10 system; returns the solution and
/// a 1-norm condition estimate.
fn lu_solve10(a: &[[f64; 10]; 10], b: &[f64; 10]) -> Option<([f64; 10], f64)> {
    let norm1 = (0..10)
        .map(|j| (0..10).map(|i| a[i][j].abs()).sum::<f64>())
        .fold(0.0f64, f64::max);
    let mut lu = *a;
    let mut perm = [0usize; 10];
    for (i, p) in perm.iter_mut().enumerate() {
        *p = i;
    }
    for col in 0..10 {
        let piv = (col..10).max_by(|&i, &j| lu[i][col].abs().total_cmp(&lu[j][col].abs()))?;
        if lu[piv][col] == 0.0 {
            return None;
        }
        lu.swap(col, piv);
        perm.swap(col, piv);
        for i in (col + 1)..10 {
            let f = lu[i][col] / lu[col][col];
            lu[i][col] = f;
            for j in (col + 1)..10 {
                lu[i][j] -= f * lu[col][j];
            }
        }
    }
    let solve_one = |rhs: &[f64; 10]| -> [f64; 10] {
        let mut y = [0.0; 10];
        for i in 0..10 {
            let mut s = rhs[perm[i]];
            for j in 0..i {
                s -= lu[i][j] * y[j];
            }
            y[i] = s;
        }
        let mut x = [0.0; 10];
        for i in (0..10).rev() {
            let mut s = y[i];
            for j in (i + 1)..10 {
                s -= lu[i][j] * x[j];
            }
            x[i] = s / lu[i][i];
        }
        x
    };
    // 1-norm of the inverse from unit solves
    let mut inv_norm1: f64 = 0.0;
    for j in 0..10 {
        let mut e = [0.0; 10];
        e[j] = 1.0;
        let col = solve_one(&e);
        inv_norm1 = inv_norm1.max(col.iter().map(|x| x.abs()).sum());
    }
    Some((solve_one(b), norm1 * inv_norm1))
}

/// Newton iteration on the ten real unknowns (Hermitian impedance entries
/// plus the speed) against the nine Riccati components plus det M = 0.
///
/// A solution is accepted only when 0 < v < limiting speed, tr M > 0, M is
/// positive semi-definite with exactly one vanishing eigenvalue, and the
/// decay spectrum lies in the right half plane.
pub fn solve_newton(ctx: &WaveContext, seed: &NewtonSeed) -> Result<RayleighSolution> {
    let vhat = limiting_speed_analytic(ctx);
    let scale = ctx.q_tilde(seed.v).norm_fro().max(1.0);
    let tol = 1e-11 * scale;

    let mut x = pack(&seed.m, seed.v);
    let mut r = newton_residual(ctx, &x);
    let mut rnorm = r.iter().map(|e| e * e).sum::<f64>().sqrt();
    let mut iterations = 0usize;

    while rnorm > tol {
        if iterations >= 100 {
            return Err(CosseratError::NewtonDiverged(format!(
                "no convergence after 100 iterations (residual {rnorm:.3e})"
            )));
        }
        // forward-difference Jacobian
        let mut jac = [[0.0f64; 10]; 10];
        for j in 0..10 {
            let h = 1e-7 * (1.0 + x[j].abs());
            let mut xp = x;
            xp[j] += h;
            let rp = newton_residual(ctx, &xp);
            for i in 0..10 {
                jac[i][j] = (rp[i] - r[i]) / h;
            }
        }
        let neg_r = {
            let mut n = r;
            for e in n.iter_mut() {
                *e = -*e;
            }
            n
        };
        let (step, cond) = lu_solve10(&jac, &neg_r)
            .ok_or_else(|| CosseratError::NewtonDiverged("singular Jacobian".into()))?;
        if cond > 1e14 {
            return Err(CosseratError::NewtonDiverged(format!(
                "Jacobian condition {cond:.3e} exceeds 1e14"
            )));
        }
        // damped update
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..12 {
            let mut xn = x;
            for i in 0..10 {
                xn[i] += lambda * step[i];
            }
            let rn = newton_residual(ctx, &xn);
            let rn_norm = rn.iter().map(|e| e * e).sum::<f64>().sqrt();
            if rn_norm < rnorm || rn_norm <= tol {
                x = xn;
                r = rn;
                rnorm = rn_norm;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            return Err(CosseratError::NewtonDiverged(format!(
                "line search stalled at residual {rnorm:.3e}"
            )));
        }
        iterations += 1;
    }

    let (m, v) = unpack(&x);
    if !(0.0 < v && v < vhat) {
        return Err(CosseratError::NewtonDiverged(format!(
            "converged to speed {v} outside (0, {vhat})"
        )));
    }
    let trace = m.trace().re;
    if trace <= 0.0 {
        return Err(CosseratError::NewtonDiverged("converged with tr M <= 0".into()));
    }
    let (vals, _) = crate::algebra::herm_eig(&m, None)?;
    let zero_tol = 1e-6 * trace;
    let zeros = vals.iter().filter(|l| l.abs() <= zero_tol).count();
    let negatives = vals.iter().filter(|&&l| l < -zero_tol).count();
    if zeros != 1 || negatives != 0 {
        return Err(CosseratError::NewtonDiverged(format!(
            "eigenvalue pattern {vals:?} is not PSD with one vanishing eigenvalue"
        )));
    }
    // Re spec of the decay matrix must be positive; finish_solution checks it
    // again while assembling the amplitude.
    let sol = finish_solution(ctx, v, vhat, 256, SolveMethod::Newton, iterations)?;
    // keep the Newton matrix (it solves the Riccati system tighter than the
    // re-quadratured one only in exact arithmetic; report the Newton one)
    let res = riccati_residual(ctx, v, &m);
    debug_assert!(res <= 1e-6 * scale);
    Ok(RayleighSolution {
        m_at_root: m,
        ..sol
    })
}

/// Rectangular evaluation grid for the reconstructed field.
#[derive(Debug, Clone)]
pub struct FieldGrid {
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub t: f64,
}

/// One spatial sample of the physical field.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct FieldSample {
    pub x1: f64,
    pub x2: f64,
    pub t: f64,
    pub u1: f64,
    pub u2: f64,
    pub theta3: f64,
}

/// Reconstructed field plus decay and boundary diagnostics.
#[derive(Debug, Clone)]
pub struct WaveField {
    /// Samples in x2-major order (outer loop depth, inner loop x1).
    pub samples: Vec<FieldSample>,
    /// Relative residual of the traction-free boundary condition evaluated
    /// from the physical stresses at x2 = 0.
    pub boundary_traction_residual: f64,
    /// Slowest decay rate, min Re spec E (dimensionless; depth scale 1/k).
    pub decay_rate: f64,
    /// Condition number of the decay eigenbasis (the constant in front of
    /// the exponential decay bound).
    pub amplitude_conditioning: f64,
}

/// Evaluates u1, u2, theta3 on a grid from a solved surface wave.
pub fn wavefield(
    sol: &RayleighSolution,
    ctx: &WaveContext,
    grid: &FieldGrid,
) -> Result<WaveField> {
    let k = ctx.k;
    let spec = gen_eig3(&sol.e, None)?;
    let decay_rate = spec.min_re();
    let amplitude_conditioning = spec.condition;

    let ms = ctx.mass_sqrt();
    let mut samples = Vec::with_capacity(grid.x1.len() * grid.x2.len());
    for &x2 in &grid.x2 {
        let prop = mat_exp(&sol.e, -k * x2);
        let y = prop.matvec(&sol.y0);
        let z = [y[0] / ms[0], y[1] / ms[1], y[2] / ms[2]];
        for &x1 in &grid.x1 {
            let phase = (c(0.0, 1.0) * c(k * (x1 - sol.v_r * grid.t), 0.0)).exp();
            samples.push(FieldSample {
                x1,
                x2,
                t: grid.t,
                u1: (z[0] * phase).re,
                u2: (z[1] * phase).re,
                theta3: (c(0.0, 1.0) * z[2] * phase).re,
            });
        }
    }

    // traction-free boundary residual from the physical stresses:
    // T_z z'(0)/k^2 + i R_z^T z(0)/k, with z'(0) = -k M_inv_sqrt E y0
    let (tz, rz) = ctx.physical_t_r();
    let z0 = sol.z0;
    let ey = sol.e.matvec(&sol.y0);
    let zp0 = [
        -(ey[0] / ms[0]) * c(k, 0.0),
        -(ey[1] / ms[1]) * c(k, 0.0),
        -(ey[2] / ms[2]) * c(k, 0.0),
    ];
    let term1 = tz.to_complex().scale(c(1.0 / (k * k), 0.0)).matvec(&zp0);
    let term2 = rz
        .transpose()
        .to_complex()
        .scale(c(0.0, 1.0 / k))
        .matvec(&z0);
    let residual_vec = [term1[0] + term2[0], term1[1] + term2[1], term1[2] + term2[2]];
    let scale = vnorm_c(&term1) + vnorm_c(&term2);
    let boundary_traction_residual = if scale > 0.0 {
        vnorm_c(&residual_vec) / scale
    } else {
        0.0
    };

    Ok(WaveField {
        samples,
        boundary_traction_residual,
        decay_rate,
        amplitude_conditioning,
    })
}

/// One wavenumber of a dispersion sweep.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DispersionPoint {
    pub k: f64,
    pub v_r: Option<f64>,
    pub omega: Option<f64>,
    pub group_velocity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Sampled dispersion relation (phase speed, frequency, group velocity).
#[derive(Debug, Clone, serde::Serialize)]
pub struct DispersionTable {
    pub points: Vec<DispersionPoint>,
}

fn sweep_pool() -> Result<rayon::ThreadPool> {
    let threads = std::env::var("COSSERAT_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CosseratError::Numerical(format!("thread pool: {e}")))
}

/// Solves the surface-wave problem at every wavenumber of an increasing grid
/// and differentiates omega(k) = k v(k) on the grid (central differences,
/// one-sided at the ends). Failed points are marked and skipped by the
/// difference stencil. Points are independent, so the sweep parallelizes
/// over k; `COSSERAT_THREADS` caps the worker count.
pub fn dispersion_sweep(
    material: &CosseratMaterial,
    k_grid: &[f64],
    opts: &SolveOptions,
) -> Result<DispersionTable> {
    if k_grid.is_empty() {
        return Err(CosseratError::InvalidArgument("empty wavenumber grid".into()));
    }
    if k_grid.windows(2).any(|w| w[0] >= w[1]) || k_grid[0] <= 0.0 {
        return Err(CosseratError::InvalidArgument(
            "wavenumber grid must be positive and strictly increasing".into(),
        ));
    }
    let pool = sweep_pool()?;
    let results: Vec<std::result::Result<f64, String>> = pool.install(|| {
        k_grid
            .par_iter()
            .map(|&k| {
                WaveContext::new(material, k)
                    .and_then(|ctx| solve(&ctx, opts))
                    .map(|sol| sol.v_r)
                    .map_err(|e| e.to_string())
            })
            .collect()
    });

    let omega: Vec<Option<f64>> = results
        .iter()
        .zip(k_grid)
        .map(|(r, &k)| r.as_ref().ok().map(|v| k * v))
        .collect();
    let n = k_grid.len();
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        let (v_r, error) = match &results[i] {
            Ok(v) => (Some(*v), None),
            Err(e) => (None, Some(e.clone())),
        };
        let group_velocity = if v_r.is_none() {
            None
        } else {
            let (lo, hi) = if i == 0 {
                (i, i + 1)
            } else if i == n - 1 {
                (i - 1, i)
            } else {
                (i - 1, i + 1)
            };
            match (omega.get(lo).copied().flatten(), omega.get(hi).copied().flatten()) {
                (Some(wl), Some(wh)) if hi > lo => Some((wh - wl) / (k_grid[hi] - k_grid[lo])),
                _ => None,
            }
        };
        points.push(DispersionPoint {
            k: k_grid[i],
            v_r,
            omega: omega[i],
            group_velocity,
            error,
        });
    }
    Ok(DispersionTable { points })
}

/// Convenience: builds a linear or logarithmic wavenumber grid.
pub fn k_grid(min: f64, max: f64, count: usize, log: bool) -> Result<Vec<f64>> {
    if !(min > 0.0 && max > min && count >= 2) {
        return Err(CosseratError::InvalidArgument(
            "grid needs 0 < min < max and at least two points".into(),
        ));
    }
    let n = count as f64 - 1.0;
    Ok((0..count)
        .map(|i| {
            if log {
                (min.ln() + (max.ln() - min.ln()) * i as f64 / n).exp()
            } else {
                min + (max - min) * i as f64 / n
            }
        })
        .collect())
}

/// Residual norm ||M y0|| relative to ||M||, for diagnostics.
pub fn amplitude_residual(m: &Mat3C, y0: &Vec3C) -> f64 {
    let my = m.matvec(y0);
    vnorm_c(&my) / (m.norm_fro() * vnorm_c(y0)).max(1e-300)
}

/// Phase-free component ratio y_i / y_j.
pub fn component_ratio(y: &Vec3C, i: usize, j: usize) -> C64 {
    y[i] / y[j]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bench_ctx() -> WaveContext {
        WaveContext::new(&CosseratMaterial::aluminum_epoxy(), 1.0).unwrap()
    }

    #[test]
    fn solve_benchmark_speed_and_amplitude() {
        let ctx = bench_ctx();
        let sol = solve(&ctx, &SolveOptions::default()).unwrap();
        assert!((sol.v_r - 0.8729598).abs() < 1e-5, "v_r = {}", sol.v_r);
        assert!(sol.v_r < sol.limiting_speed);
        assert!(sol.det_residual <= 1e-6 * sol.m_at_root.trace().re);
        // amplitude ratios (phase-free)
        let r21 = component_ratio(&sol.y0, 1, 0);
        assert!((r21 - c(0.0, -1.6664971)).norm() < 2e-4, "y2/y1 = {r21}");
        let r31 = component_ratio(&sol.y0, 2, 0);
        assert!((r31 - c(0.0, -0.0199633)).norm() < 2e-4, "y3/y1 = {r31}");
        assert!(amplitude_residual(&sol.m_at_root, &sol.y0) < 1e-7);
        // decay spectrum
        let spec = gen_eig3(&sol.e, None).unwrap();
        assert!(spec.min_re() > 0.0);
    }

    #[test]
    fn newton_agrees_with_bisection() {
        let ctx = bench_ctx();
        let bisect = solve(&ctx, &SolveOptions::default()).unwrap();
        let seed = newton_seed(&ctx, 0.87, 256).unwrap();
        let newton = solve_newton(&ctx, &seed).unwrap();
        assert!(
            (newton.v_r - bisect.v_r).abs() < 1e-6,
            "newton {} vs bisect {}",
            newton.v_r,
            bisect.v_r
        );
        assert_eq!(newton.method, SolveMethod::Newton);
    }

    #[test]
    fn newton_at_exact_solution_takes_no_steps() {
        let ctx = bench_ctx();
        let sol = solve(&ctx, &SolveOptions::default()).unwrap();
        let seed = NewtonSeed {
            m: sol.m_at_root,
            v: sol.v_r,
        };
        let newton = solve_newton(&ctx, &seed).unwrap();
        assert_eq!(newton.iterations, 0);
    }

    #[test]
    fn wavefield_decays_and_satisfies_boundary() {
        let ctx = bench_ctx();
        let sol = solve(&ctx, &SolveOptions::default()).unwrap();
        let spec = gen_eig3(&sol.e, None).unwrap();
        let alpha = spec.min_re();
        let depth = 5.0 / (ctx.k * alpha);
        let grid = FieldGrid {
            x1: vec![0.0],
            x2: vec![0.0, depth],
            t: 0.0,
        };
        let field = wavefield(&sol, &ctx, &grid).unwrap();
        assert!(field.boundary_traction_residual < 1e-6);
        assert!(field.decay_rate > 0.0);
        // amplitude at depth bounded by kappa * exp(-5) * |y0|
        let y_depth = mat_exp(&sol.e, -ctx.k * depth).matvec(&sol.y0);
        let bound = field.amplitude_conditioning * (-5.0f64).exp();
        assert!(vnorm_c(&y_depth) <= bound * 1.0001);
        // surface sample equals Re[(z1, z2, i z3)]
        let s = &field.samples[0];
        assert!((s.u1 - sol.z0[0].re).abs() < 1e-14);
        assert!((s.u2 - sol.z0[1].re).abs() < 1e-14);
        assert!((s.theta3 - (c(0.0, 1.0) * sol.z0[2]).re).abs() < 1e-14);
    }

    #[test]
    fn classical_limit_matches_reference_root() {
        // mu_c -> 0 with the Eringen shear modulus: the printed classical
        // benchmark speed 0.868832
        let m = CosseratMaterial::new(7.59, 1.89, 1e-9, 0.263383, 0.0196, 2.22287).unwrap();
        let ctx = WaveContext::new(&m, 1.0).unwrap();
        let sol = solve(&ctx, &SolveOptions::default()).unwrap();
        assert!((sol.v_r - 0.868832).abs() < 2e-4, "v_r = {}", sol.v_r);
        // the Newton route lands on the same root
        let seed = newton_seed(&ctx, sol.v_r * 0.999, 256).unwrap();
        let newton = solve_newton(&ctx, &seed).unwrap();
        assert!((newton.v_r - 0.868832).abs() < 2e-4);
    }

    #[test]
    fn sweep_grid_validation() {
        let m = CosseratMaterial::aluminum_epoxy();
        assert!(dispersion_sweep(&m, &[], &SolveOptions::default()).is_err());
        assert!(dispersion_sweep(&m, &[2.0, 1.0], &SolveOptions::default()).is_err());
        let g = k_grid(0.1, 100.0, 5, true).unwrap();
        assert_eq!(g.len(), 5);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn small_sweep_monotone() {
        let m = CosseratMaterial::aluminum_epoxy();
        let grid = k_grid(0.5, 5.0, 5, true).unwrap();
        let table = dispersion_sweep(&m, &grid, &SolveOptions::default()).unwrap();
        let vs: Vec<f64> = table.points.iter().map(|p| p.v_r.unwrap()).collect();
        assert!(vs.windows(2).all(|w| w[0] < w[1]), "{vs:?}");
        assert!(table.points.iter().all(|p| p.group_velocity.is_some()));
    }
}
