//! Classical-elasticity limit (vanishing couple modulus): closed-form
//! impedance matrix, three equivalent secular functions, and the boundary
//! amplitude. These serve as analytic oracles for the full solver.
//!
//! With wave speeds c_l (compression) and c_t (shear) and the abbreviations
//! x = v^2/c_l^2, y = v^2/c_t^2, s = sqrt((1-x)(1-y)), the in-plane block of
//! the impedance matrix has the numerically stable form
//!
//! ```text
//! F = (1+s) c_l^2 c_t^2 / (c_l^2 + c_t^2 - v^2),
//! w = 1 - 2 (c_l^2 + c_t^2 - v^2) / (c_l^2 (1+s)),
//! M11 = k^2 sqrt(1-x) F,  M22 = k^2 sqrt(1-y) F,  M12 = i k^2 F w,
//! ```
//!
//! which is regular at v = 0 (the raw quotient forms are 0/0 there). The
//! decoupled microrotation channel contributes M33 = k^2 c_m sqrt(c_m^2 -
//! v^2), the angular average of the rotated curvature stiffness.

use crate::algebra::{c, C64, Mat3C};
use crate::error::{CosseratError, Result};
use crate::material::CosseratMaterial;

/// Classical wave speeds, plus the originating moduli for the Stroh form.
#[derive(Debug, Clone, Copy)]
pub struct ClassicalSpeeds {
    /// Compression speed sqrt((lambda + 2 mu)/rho).
    pub c_l: f64,
    /// Shear speed sqrt(mu/rho).
    pub c_t: f64,
    /// Microrotation channel speed sqrt(G/(rho J)); absent when the
    /// curvature data is not available.
    pub c_m: Option<f64>,
    lambda: f64,
    mu: f64,
    rho: f64,
}

impl ClassicalSpeeds {
    /// From Lame moduli; requires 2 mu + lambda > 0, mu > 0, rho > 0.
    pub fn from_elastic(lambda: f64, mu: f64, rho: f64) -> Result<Self> {
        if !(rho > 0.0 && mu > 0.0 && 2.0 * mu + lambda > 0.0) {
            return Err(CosseratError::InvalidMaterial(
                "classical speeds need 2 mu + lambda > 0, mu > 0, rho > 0".into(),
            ));
        }
        Ok(ClassicalSpeeds {
            c_l: ((lambda + 2.0 * mu) / rho).sqrt(),
            c_t: (mu / rho).sqrt(),
            c_m: None,
            lambda,
            mu,
            rho,
        })
    }

    /// From a Cosserat material, ignoring the couple modulus; the curvature
    /// data fixes c_m.
    pub fn from_material(m: &CosseratMaterial) -> Result<Self> {
        let mut sp = Self::from_elastic(m.lambda_e, m.mu_e, m.rho)?;
        let cm2 = m.curvature_g / (m.rho * m.rot_inertia_j);
        sp.c_m = (cm2 > 0.0).then(|| cm2.sqrt());
        Ok(sp)
    }

    pub fn with_rotation_speed(mut self, c_m: f64) -> Self {
        self.c_m = Some(c_m);
        self
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Largest admissible surface-wave speed, min(c_l, c_t, c_m).
    pub fn limiting_speed(&self) -> f64 {
        self.c_l.min(self.c_t).min(self.c_m.unwrap_or(f64::INFINITY))
    }

    fn svw(&self, v: f64) -> (f64, f64, f64) {
        let cl2 = self.c_l * self.c_l;
        let ct2 = self.c_t * self.c_t;
        let x = v * v / cl2;
        let y = v * v / ct2;
        let s = ((1.0 - x) * (1.0 - y)).max(0.0).sqrt();
        let w = 1.0 - 2.0 * (cl2 + ct2 - v * v) / (cl2 * (1.0 + s));
        let f = (1.0 + s) * cl2 * ct2 / (cl2 + ct2 - v * v);
        (s, w, f)
    }
}

/// Closed-form impedance matrix of the classical limit.
pub fn analytic_impedance(sp: &ClassicalSpeeds, k: f64, v: f64) -> Result<Mat3C> {
    let c_m = sp
        .c_m
        .ok_or_else(|| CosseratError::MissingParameter("rotation-channel speed c_m".into()))?;
    let limit = sp.limiting_speed();
    if !(0.0..limit).contains(&v) {
        return Err(CosseratError::OutOfRange { v, limit });
    }
    let (_, w, f) = sp.svw(v);
    let k2 = k * k;
    let x = v * v / (sp.c_l * sp.c_l);
    let y = v * v / (sp.c_t * sp.c_t);
    let mut m = Mat3C::zero();
    m.0[0][0] = c(k2 * (1.0 - x).sqrt() * f, 0.0);
    m.0[1][1] = c(k2 * (1.0 - y).sqrt() * f, 0.0);
    m.0[0][1] = c(0.0, k2 * f * w);
    m.0[1][0] = -m.0[0][1];
    m.0[2][2] = c(k2 * c_m * (c_m * c_m - v * v).sqrt(), 0.0);
    Ok(m)
}

/// Secular function of the impedance route (the in-plane determinant with
/// the rotation channel divided out), regular at v = 0 where it equals
/// 4 c_t^4 (c_l^2 - c_t^2) / (c_l^2 + c_t^2) in k = 1 units.
pub fn secular_mielke_fu(sp: &ClassicalSpeeds, v: f64) -> f64 {
    let (s, w, _) = sp.svw(v);
    let cl2 = sp.c_l * sp.c_l;
    let ct2 = sp.c_t * sp.c_t;
    (s - w * w) * (1.0 + s).powi(2) * cl2 * cl2 * ct2 * ct2 / (cl2 + ct2 - v * v).powi(2)
}

/// The textbook secular function 4 sqrt((1 - v^2/c_l^2)(1 - v^2/c_t^2)) -
/// (2 - v^2/c_t^2)^2; shares its nontrivial root with the other two forms
/// (and vanishes trivially at v = 0).
pub fn secular_classic(sp: &ClassicalSpeeds, v: f64) -> f64 {
    let x = v * v / (sp.c_l * sp.c_l);
    let y = v * v / (sp.c_t * sp.c_t);
    4.0 * ((1.0 - x) * (1.0 - y)).max(0.0).sqrt() - (2.0 - y).powi(2)
}

/// Secular function in the stiffness-matrix (Stroh) form, with
/// c11 = lambda + 2 mu, c66 = mu, c0 = c11 - c12^2 / c11.
pub fn secular_stroh_classical(sp: &ClassicalSpeeds, v: f64) -> f64 {
    let c11 = sp.lambda + 2.0 * sp.mu;
    let c66 = sp.mu;
    let c12 = sp.lambda;
    let c0 = c11 - c12 * c12 / c11;
    let rv2 = sp.rho * v * v;
    rv2 * (c11 - rv2).max(0.0).sqrt() * (c66 - rv2).max(0.0).sqrt() / (c11 * c66).sqrt()
        - (rv2 - c0) * (rv2 - c66) / c66
}

/// The classical Rayleigh speed: unique root of the secular function in
/// (0, c_t).
pub fn classical_rayleigh_speed(sp: &ClassicalSpeeds) -> Result<f64> {
    let mut a = 1e-3 * sp.c_t;
    let mut b = (1.0 - 1e-12) * sp.c_t;
    let mut fa = secular_classic(sp, a);
    let fb = secular_classic(sp, b);
    if fa <= 0.0 || fb >= 0.0 {
        return Err(CosseratError::NoRoot { margin: fa.min(-fb) });
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let fm = secular_classic(sp, mid);
        if fm > 0.0 {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
        if b - a <= 1e-14 * sp.c_t {
            break;
        }
    }
    let _ = fa;
    Ok(0.5 * (a + b))
}

/// Null vector of the 2x2 in-plane impedance block at a secular root; the
/// microrotation component is exactly zero in the classical limit.
pub fn classical_boundary_amplitude(
    sp: &ClassicalSpeeds,
    k: f64,
    v_r: f64,
) -> Result<[C64; 2]> {
    let limit = sp.c_l.min(sp.c_t);
    if !(0.0 < v_r && v_r < limit) {
        return Err(CosseratError::OutOfRange { v: v_r, limit });
    }
    let (_, w, f) = sp.svw(v_r);
    let k2 = k * k;
    let x = v_r * v_r / (sp.c_l * sp.c_l);
    let y = v_r * v_r / (sp.c_t * sp.c_t);
    let a11 = k2 * (1.0 - x).sqrt() * f;
    let a22 = k2 * (1.0 - y).sqrt() * f;
    let a12 = k2 * f * w; // entry is i*a12
    let det = a11 * a22 - a12 * a12;
    let scale = (a11 * a11 + a22 * a22 + 2.0 * a12 * a12).sqrt();
    if det.abs() > 1e-6 * scale * scale {
        return Err(CosseratError::SingularSystem { det: det.abs() });
    }
    // null vector of [[a11, i a12], [-i a12, a22]]
    let (mut y1, mut y2) = if a11.abs() >= a12.abs() {
        (c(-a12, 0.0) * c(0.0, 1.0), c(a11, 0.0))
    } else {
        (c(a22, 0.0), c(0.0, a12))
    };
    let n = (y1.norm_sqr() + y2.norm_sqr()).sqrt();
    y1 /= n;
    y2 /= n;
    // phase convention: first component real positive
    let phase = y1.conj() / y1.norm();
    Ok([y1 * phase, y2 * phase])
}
