//! Bulk plane-wave analysis: the reduced acoustic eigenproblems whose
//! positive definiteness decides whether only real plane waves propagate.
//!
//! For an in-plane direction xi = (xi1, xi2, 0) the displacement pair
//! (u1, u2) couples to the microrotation theta3; after symmetrizing with the
//! inverse square root of the mass matrix diag(rho, rho, rho J) the problem
//! becomes a symmetric eigenvalue problem for omega^2.

use crate::algebra::{herm_eig, Mat3R};
use crate::error::{CosseratError, Result};
use crate::material::CosseratMaterial;

/// A direction-bound acoustic eigenproblem; `matrix` is symmetric and its
/// eigenvalues are the squared angular frequencies.
#[derive(Debug, Clone)]
pub struct AcousticProblem {
    pub direction: [f64; 3],
    pub wavenumber: f64,
    pub matrix: Mat3R,
}

/// Mass-normalized acoustic matrix for the coupled (u1, u2, theta3) channel
/// in an in-plane direction.
pub fn acoustic_matrix_inplane(
    m: &CosseratMaterial,
    xi: [f64; 3],
    k: f64,
) -> Result<AcousticProblem> {
    m.validate()?;
    let norm = (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]).sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(CosseratError::BadDirection(format!(
            "direction must be unit length, got |xi| = {norm}"
        )));
    }
    if xi[2].abs() > 1e-14 {
        return Err(CosseratError::BadDirection(
            "direction must lie in the x1-x2 plane".into(),
        ));
    }
    if !(k > 0.0) {
        return Err(CosseratError::InvalidArgument("wavenumber must be positive".into()));
    }
    let (x1, x2) = (xi[0], xi[1]);
    let k2 = k * k;
    let p = 2.0 * m.mu_e + m.lambda_e;
    let s = m.mu_e + m.mu_c;
    let cross = m.mu_e - m.mu_c + m.lambda_e;
    let rho = m.rho;
    let rho_j = m.rho * m.rot_inertia_j;
    let rho_sj = m.rho * m.rot_inertia_j.sqrt();

    let mut q = Mat3R::zero();
    q.0[0][0] = k2 * (p * x1 * x1 + s * x2 * x2) / rho;
    q.0[1][1] = k2 * (s * x1 * x1 + p * x2 * x2) / rho;
    q.0[0][1] = k2 * cross * x1 * x2 / rho;
    q.0[1][0] = q.0[0][1];
    q.0[0][2] = 2.0 * k * m.mu_c * x2 / rho_sj;
    q.0[2][0] = q.0[0][2];
    q.0[1][2] = -2.0 * k * m.mu_c * x1 / rho_sj;
    q.0[2][1] = q.0[1][2];
    q.0[2][2] = (k2 * m.curvature_g + 4.0 * m.mu_c) / rho_j;

    Ok(AcousticProblem {
        direction: xi,
        wavenumber: k,
        matrix: q,
    })
}

/// Mass-normalized acoustic matrix for the out-of-plane channel
/// (u3, theta1, theta2) in the direction e1. Needs the individual curvature
/// weights so that the 2 alpha1 + alpha3 stiffness can be formed.
pub fn acoustic_matrix_outofplane(m: &CosseratMaterial, k: f64) -> Result<AcousticProblem> {
    m.validate()?;
    if !(k > 0.0) {
        return Err(CosseratError::InvalidArgument("wavenumber must be positive".into()));
    }
    let (a1, a3) = m
        .alpha1
        .zip(m.alpha3)
        .ok_or_else(|| CosseratError::MissingParameter("alpha1 and alpha3".into()))?;
    let split = m
        .mu_e_lc2()
        .ok_or_else(|| CosseratError::MissingParameter("mu_e Lc^2 split (alpha1 + alpha2 = 0?)".into()))?;
    let k2 = k * k;
    let rho_j = m.rho * m.rot_inertia_j;
    let rho_sj = m.rho * m.rot_inertia_j.sqrt();

    let mut q = Mat3R::zero();
    q.0[0][0] = k2 * (m.mu_e + m.mu_c) / m.rho;
    q.0[1][1] = (k2 * split * (2.0 * a1 + a3) + 4.0 * m.mu_c) / rho_j;
    q.0[2][2] = (k2 * m.curvature_g + 4.0 * m.mu_c) / rho_j;
    q.0[0][2] = 2.0 * k * m.mu_c / rho_sj;
    q.0[2][0] = q.0[0][2];

    Ok(AcousticProblem {
        direction: [1.0, 0.0, 0.0],
        wavenumber: k,
        matrix: q,
    })
}

/// The three branch frequencies omega >= 0, ascending.
///
/// Eigenvalues in (-tol, 0] are clamped to zero; a genuinely negative
/// eigenvalue means the material does not carry real waves in this channel.
pub fn branch_frequencies(problem: &AcousticProblem) -> Result<[f64; 3]> {
    let a = problem.matrix.to_complex();
    let (vals, _) = herm_eig(&a, None)?;
    let tol = 1e-12 * problem.matrix.norm_fro();
    let mut out = [0.0; 3];
    for (i, v) in vals.iter().enumerate() {
        if *v < -tol {
            return Err(CosseratError::ComplexFrequency { eigenvalue: *v });
        }
        out[i] = v.max(0.0).sqrt();
    }
    Ok(out)
}

/// Checks positive definiteness of the in-plane acoustic matrix over a fixed
/// log grid of wavenumbers (25 points per decade on [1e-3, 1e3]); this is the
/// sampled counterpart of the in-plane real-wave condition set.
pub fn inplane_real_waves_over_k(m: &CosseratMaterial) -> bool {
    let decades = 6;
    let per_decade = 25;
    let n = decades * per_decade + 1;
    for i in 0..n {
        let k = 10f64.powf(-3.0 + i as f64 / per_decade as f64);
        let Ok(problem) = acoustic_matrix_inplane(m, [1.0, 0.0, 0.0], k) else {
            return false;
        };
        if branch_frequencies(&problem).is_err() {
            return false;
        }
        // strict positivity of the smallest eigenvalue
        let (vals, _) = herm_eig(&problem.matrix.to_complex(), None).unwrap();
        if vals[0] <= 0.0 {
            return false;
        }
    }
    true
}
