//! Surface impedance matrix via the angular-average (Barnett-Lothe type)
//! integral representation, the algebraic Riccati residual, and the decay
//! matrix.
//!
//! For a subsonic speed v the unique impedance matrix is
//!
//! ```text
//! M = H^-1 + i H^-1 S,   H = (1/pi) int_0^pi T_th^-1 dth,
//!                        S = -(1/pi) int_0^pi T_th^-1 R_th^T dth,
//! ```
//!
//! where (T_th, R_th, Q_th) are the depth-ODE matrices rotated about e3.
//! M is Hermitian, satisfies the Riccati equation
//! (M - iR) T^-1 (M + iR^T) = Q(v), and vanishing det M is the secular
//! condition for a free surface. The integrands are pi-periodic and smooth
//! below the limiting speed, so the composite midpoint rule converges
//! spectrally; node sums use a fixed pairwise tree, which keeps results
//! bit-identical regardless of evaluation order.

use crate::algebra::{c, gen_eig3, Mat3C, Mat3R, Spectrum3};
use crate::error::{CosseratError, Result};
use crate::stroh::{limiting_speed_analytic, WaveContext};

/// Fraction of the limiting speed past which the quadrature refuses to run.
pub const NEAR_SONIC_GUARD: f64 = 1.0 - 1e-6;
/// Condition-number ceiling for a rotated stiffness node.
pub const NODE_CONDITION_LIMIT: f64 = 1e12;

/// The depth-ODE matrices rotated by an angle about the out-of-plane axis.
#[derive(Debug, Clone, Copy)]
pub struct RotatedTriple {
    pub theta: f64,
    pub t_theta: Mat3R,
    pub r_theta: Mat3R,
    pub q_theta: Mat3R,
}

/// Exact trigonometric rotation of (T, R, Q(v)).
pub fn rotate(ctx: &WaveContext, v: f64, theta: f64) -> RotatedTriple {
    let (s, co) = theta.sin_cos();
    let qt = ctx.q_tilde(v);
    let rr = ctx.r.add(&ctx.r.transpose());
    let t_theta = ctx
        .t
        .scale(co * co)
        .sub(&rr.scale(s * co))
        .add(&qt.scale(s * s));
    let r_theta = ctx
        .r
        .scale(co * co)
        .add(&ctx.t.sub(&qt).scale(s * co))
        .sub(&ctx.r.transpose().scale(s * s));
    let q_theta = qt
        .scale(co * co)
        .add(&rr.scale(s * co))
        .add(&ctx.t.scale(s * s));
    RotatedTriple {
        theta,
        t_theta,
        r_theta,
        q_theta,
    }
}

/// Surface impedance matrix with its Barnett-Lothe factors and diagnostics.
#[derive(Debug, Clone)]
pub struct ImpedanceResult {
    pub v: f64,
    /// Hermitian impedance matrix (symmetrized after assembly).
    pub m: Mat3C,
    /// Real symmetric factor H = (1/pi) int T_th^-1.
    pub h: Mat3R,
    /// Real factor S = -(1/pi) int T_th^-1 R_th^T; H^-1 S is skew.
    pub s: Mat3R,
    /// Midpoint panels used by the final pass.
    pub quadrature_points: usize,
    /// Frobenius norm of the Riccati defect (M - iR) T^-1 (M + iR^T) - Q(v).
    pub residual: f64,
}

fn node(ctx: &WaveContext, v: f64, theta: f64) -> Result<(Mat3R, Mat3R)> {
    let rt = rotate(ctx, v, theta);
    let inv = rt.t_theta.inverse().map_err(|_| CosseratError::NearLimitingSpeed {
        v,
        cond: f64::INFINITY,
    })?;
    let cond = rt.t_theta.norm_fro() * inv.norm_fro();
    if cond > NODE_CONDITION_LIMIT {
        return Err(CosseratError::NearLimitingSpeed { v, cond });
    }
    Ok((inv, inv.matmul(&rt.r_theta.transpose())))
}

/// Pairwise (fixed-tree) accumulation of the quadrature nodes in [lo, hi).
fn accumulate(
    ctx: &WaveContext,
    v: f64,
    n: usize,
    offset: f64,
    lo: usize,
    hi: usize,
) -> Result<(Mat3R, Mat3R)> {
    if hi - lo <= 8 {
        let mut h = Mat3R::zero();
        let mut s = Mat3R::zero();
        for j in lo..hi {
            let theta = offset + (j as f64 + 0.5) * std::f64::consts::PI / n as f64;
            let (ti, tr) = node(ctx, v, theta)?;
            h = h.add(&ti);
            s = s.add(&tr);
        }
        Ok((h, s))
    } else {
        let mid = lo + (hi - lo) / 2;
        let (h1, s1) = accumulate(ctx, v, n, offset, lo, mid)?;
        let (h2, s2) = accumulate(ctx, v, n, offset, mid, hi)?;
        Ok((h1.add(&h2), s1.add(&s2)))
    }
}

fn assemble(ctx: &WaveContext, v: f64, n: usize, offset: f64) -> Result<ImpedanceResult> {
    let (hsum, ssum) = accumulate(ctx, v, n, offset, 0, n)?;
    let h = hsum.scale(1.0 / n as f64);
    let s = ssum.scale(-1.0 / n as f64);
    let h_inv = h.inverse()?;
    let hs = h_inv.matmul(&s);
    let mut m = Mat3C::zero();
    for i in 0..3 {
        for j in 0..3 {
            m.0[i][j] = c(h_inv.0[i][j], hs.0[i][j]);
        }
    }
    let m = m.add(&m.adjoint()).scale(c(0.5, 0.0));
    let residual = riccati_residual(ctx, v, &m);
    Ok(ImpedanceResult {
        v,
        m,
        h,
        s,
        quadrature_points: n,
        residual,
    })
}

/// Frobenius norm of the Riccati defect of a candidate impedance matrix.
pub fn riccati_residual(ctx: &WaveContext, v: f64, m: &Mat3C) -> f64 {
    let t_inv = ctx
        .t
        .inverse()
        .expect("context stiffness is positive definite")
        .to_complex();
    let i = c(0.0, 1.0);
    let r = ctx.r.to_complex();
    let rt = ctx.r.transpose().to_complex();
    let lhs = m
        .sub(&r.scale(i))
        .matmul(&t_inv)
        .matmul(&m.add(&rt.scale(i)));
    lhs.sub(&ctx.q_tilde(v).to_complex()).norm_fro()
}

fn check_speed(ctx: &WaveContext, v: f64) -> Result<f64> {
    let vhat = limiting_speed_analytic(ctx);
    if v < 0.0 {
        return Err(CosseratError::OutOfRange { v, limit: vhat });
    }
    if v > NEAR_SONIC_GUARD * vhat {
        return Err(CosseratError::NearLimitingSpeed {
            v,
            cond: f64::INFINITY,
        });
    }
    Ok(vhat)
}

/// Impedance matrix with a fixed number of midpoint panels (no refinement).
pub fn impedance_fixed(ctx: &WaveContext, v: f64, n: usize) -> Result<ImpedanceResult> {
    check_speed(ctx, v)?;
    if n < 16 {
        return Err(CosseratError::InvalidArgument(
            "quadrature needs at least 16 panels".into(),
        ));
    }
    assemble(ctx, v, n, 0.0)
}

/// Impedance matrix with Richardson doubling: panels double from `n` until
/// the matrix moves by less than 1e-10 relative or 4096 panels are reached.
pub fn impedance(ctx: &WaveContext, v: f64, n: usize) -> Result<ImpedanceResult> {
    check_speed(ctx, v)?;
    if n < 16 {
        return Err(CosseratError::InvalidArgument(
            "quadrature needs at least 16 panels".into(),
        ));
    }
    let mut prev = assemble(ctx, v, n, 0.0)?;
    let mut panels = n;
    while panels < 4096 {
        panels *= 2;
        let next = assemble(ctx, v, panels, 0.0)?;
        let delta = next.m.sub(&prev.m).norm_fro();
        let done = delta <= 1e-10 * next.m.norm_fro();
        prev = next;
        if done {
            break;
        }
    }
    Ok(prev)
}

/// Decay matrix E = T^-1 (M + i R^T) with its spectrum.
#[derive(Debug, Clone)]
pub struct DecayMatrix {
    pub e: Mat3C,
    pub spectrum: Spectrum3,
}

/// Builds the decay matrix from an impedance matrix and verifies that its
/// spectrum lies strictly in the right half plane.
pub fn decay_matrix(ctx: &WaveContext, v: f64, m: &Mat3C) -> Result<DecayMatrix> {
    let t_inv = ctx
        .t
        .inverse()
        .expect("context stiffness is positive definite")
        .to_complex();
    let rt = ctx.r.transpose().to_complex().scale(c(0.0, 1.0));
    let e = t_inv.matmul(&m.add(&rt));
    let spectrum = gen_eig3(&e, None)?;
    let min_re = spectrum.min_re();
    if min_re <= 0.0 {
        return Err(CosseratError::SpectrumNotRight { min_re });
    }
    let _ = v;
    Ok(DecayMatrix { e, spectrum })
}

/// Solves the rotated impedance problem at each sample angle through the same
/// integral representation (angle-shifted quadrature) and returns the largest
/// deviation from the unrotated matrix. The theory makes the matrix exactly
/// angle-independent, so the deviation measures quadrature error only.
pub fn rotated_impedance_check(
    ctx: &WaveContext,
    v: f64,
    theta_samples: &[f64],
    n: usize,
) -> Result<f64> {
    check_speed(ctx, v)?;
    let base = assemble(ctx, v, n, 0.0)?;
    let mut worst: f64 = 0.0;
    for &theta in theta_samples {
        let shifted = assemble(ctx, v, n, theta)?;
        worst = worst.max(shifted.m.sub(&base.m).norm_fro());
    }
    Ok(worst)
}

/// Deviations of the angular identities of the decay family E_theta.
#[derive(Debug, Clone, Copy)]
pub struct AngularIdentityReport {
    /// || int_0^pi E_theta dtheta - pi I ||_F by quadrature.
    pub integral_deviation: f64,
    /// max_theta || E_theta(closed form) - T_theta^-1 (M + i R_theta^T) ||_F.
    pub closed_form_deviation: f64,
    /// max_theta || dE/dtheta - (i I - i E_theta^2) ||_F (central differences).
    pub derivative_deviation: f64,
}

fn e_theta_closed(e: &Mat3C, theta: f64) -> Result<Mat3C> {
    let (s, co) = theta.sin_cos();
    let i = c(0.0, 1.0);
    let lhs = Mat3C::identity().scale(c(co, 0.0)).add(&e.scale(i * c(s, 0.0)));
    let rhs = e.scale(c(co, 0.0)).add(&Mat3C::identity().scale(i * c(s, 0.0)));
    Ok(lhs.inverse()?.matmul(&rhs))
}

/// Evaluates the rotation identities of the decay family at a subsonic speed.
pub fn angular_identities(ctx: &WaveContext, v: f64, n: usize) -> Result<AngularIdentityReport> {
    check_speed(ctx, v)?;
    let imp = impedance(ctx, v, n)?;
    let e = decay_matrix(ctx, v, &imp.m)?.e;

    let panels = n.max(256);
    let mut sum = Mat3C::zero();
    let mut closed_dev: f64 = 0.0;
    for j in 0..panels {
        let theta = (j as f64 + 0.5) * std::f64::consts::PI / panels as f64;
        let eth = e_theta_closed(&e, theta)?;
        sum = sum.add(&eth);
        let rt = rotate(ctx, v, theta);
        let direct = rt
            .t_theta
            .inverse()?
            .to_complex()
            .matmul(&imp.m.add(&rt.r_theta.transpose().to_complex().scale(c(0.0, 1.0))));
        closed_dev = closed_dev.max(eth.sub(&direct).norm_fro());
    }
    let integral = sum.scale(c(std::f64::consts::PI / panels as f64, 0.0));
    let integral_deviation = integral
        .sub(&Mat3C::identity().scale(c(std::f64::consts::PI, 0.0)))
        .norm_fro();

    let h = 1e-6;
    let mut deriv_dev: f64 = 0.0;
    for j in 0..16 {
        let theta = (j as f64 + 0.5) * std::f64::consts::PI / 16.0;
        let plus = e_theta_closed(&e, theta + h)?;
        let minus = e_theta_closed(&e, theta - h)?;
        let fd = plus.sub(&minus).scale(c(1.0 / (2.0 * h), 0.0));
        let eth = e_theta_closed(&e, theta)?;
        let i = c(0.0, 1.0);
        let analytic = Mat3C::identity().scale(i).sub(&eth.matmul(&eth).scale(i));
        deriv_dev = deriv_dev.max(fd.sub(&analytic).norm_fro());
    }

    Ok(AngularIdentityReport {
        integral_deviation,
        closed_form_deviation: closed_dev,
        derivative_deviation: deriv_dev,
    })
}

/// Central-difference derivative of the impedance matrix with respect to the
/// speed, Hermitian-symmetrized. The step defaults to 1e-5 of the limiting
/// speed. Negative definite for every subsonic speed.
pub fn dm_dv(ctx: &WaveContext, v: f64, step: Option<f64>, n: usize) -> Result<Mat3C> {
    let vhat = check_speed(ctx, v)?;
    let h = step.unwrap_or(1e-5 * vhat);
    if v - h < 0.0 || v + h > NEAR_SONIC_GUARD * vhat {
        return Err(CosseratError::OutOfRange { v, limit: vhat });
    }
    let plus = impedance(ctx, v + h, n)?;
    let minus = impedance(ctx, v - h, n)?;
    let d = plus.m.sub(&minus.m).scale(c(1.0 / (2.0 * h), 0.0));
    Ok(d.add(&d.adjoint()).scale(c(0.5, 0.0)))
}
