//! The classical route to the surface-wave problem: depth-decay ansatz,
//! characteristic sextic with closed-form roots, partial-wave amplitudes,
//! boundary matrix, explicit secular function, and the analytic limiting
//! speed. Everything here serves as an independent cross-check of the
//! impedance/Riccati route.
//!
//! The depth ODE uses the density-normalized matrices T, R, Q0 (with
//! Q(v) = Q0 - k^2 v^2 I). T is diagonal; R carries the lambda_e and
//! mu_e - mu_c gradient couplings plus the microrotation coupling in its
//! (3,1) entry, which is what the traction boundary condition transposes
//! into row 1.

use crate::algebra::{c, solve_cubic, C64, Mat3C, Mat3R, Vec3C};
use crate::error::{CosseratError, Result};
use crate::material::{check_conditions, CosseratMaterial};

/// A material bound to a wavenumber, with the density-normalized depth-ODE
/// matrices assembled once.
#[derive(Debug, Clone)]
pub struct WaveContext {
    pub material: CosseratMaterial,
    pub k: f64,
    /// Diagonal second-derivative stiffness (normalized).
    pub t: Mat3R,
    /// First-derivative coupling (normalized); its transpose is the
    /// boundary-traction matrix.
    pub r: Mat3R,
    /// Speed-independent part of the zeroth-order stiffness (normalized).
    pub q0: Mat3R,
}

impl WaveContext {
    /// Assembles the context; the material must admit in-plane real waves.
    pub fn new(material: &CosseratMaterial, k: f64) -> Result<Self> {
        material.validate()?;
        if !(k > 0.0) {
            return Err(CosseratError::InvalidArgument(
                "wavenumber must be positive".into(),
            ));
        }
        let report = check_conditions(material);
        if !report.in_plane_real_waves.holds {
            return Err(CosseratError::InadmissibleMaterial(format!(
                "in-plane real-wave conditions violated (margin {})",
                report.in_plane_real_waves.margin
            )));
        }
        let m = material;
        let k2 = k * k;
        let rho_j = m.rho * m.rot_inertia_j;
        let rho_sj = m.rho * m.rot_inertia_j.sqrt();

        let t = Mat3R::diag([
            k2 * (m.mu_e + m.mu_c) / m.rho,
            k2 * (2.0 * m.mu_e + m.lambda_e) / m.rho,
            k2 * m.curvature_g / rho_j,
        ]);
        let mut r = Mat3R::zero();
        r.0[0][1] = k2 * m.lambda_e / m.rho;
        r.0[1][0] = k2 * (m.mu_e - m.mu_c) / m.rho;
        r.0[2][0] = 2.0 * k * m.mu_c / rho_sj;
        let mut q0 = Mat3R::zero();
        q0.0[0][0] = k2 * (2.0 * m.mu_e + m.lambda_e) / m.rho;
        q0.0[1][1] = k2 * (m.mu_e + m.mu_c) / m.rho;
        q0.0[1][2] = -2.0 * k * m.mu_c / rho_sj;
        q0.0[2][1] = q0.0[1][2];
        q0.0[2][2] = (k2 * m.curvature_g + 4.0 * m.mu_c) / rho_j;

        Ok(WaveContext {
            material: material.clone(),
            k,
            t,
            r,
            q0,
        })
    }

    /// Q(v) = Q0 - k^2 v^2 I.
    pub fn q_tilde(&self, v: f64) -> Mat3R {
        let shift = self.k * self.k * v * v;
        let mut q = self.q0;
        for i in 0..3 {
            q.0[i][i] -= shift;
        }
        q
    }

    /// Diagonal of the mass matrix square root, diag(sqrt(rho), sqrt(rho),
    /// sqrt(rho J)); maps physical amplitudes z to normalized amplitudes y.
    pub fn mass_sqrt(&self) -> [f64; 3] {
        let m = &self.material;
        [
            m.rho.sqrt(),
            m.rho.sqrt(),
            (m.rho * m.rot_inertia_j).sqrt(),
        ]
    }

    /// Un-normalized (physical) T and R, used by the partial-wave amplitudes.
    pub(crate) fn physical_t_r(&self) -> (Mat3R, Mat3R) {
        let m = &self.material;
        let k = self.k;
        let k2 = k * k;
        let t = Mat3R::diag([
            k2 * (m.mu_e + m.mu_c),
            k2 * (2.0 * m.mu_e + m.lambda_e),
            k2 * m.curvature_g,
        ]);
        let mut r = Mat3R::zero();
        r.0[0][1] = k2 * m.lambda_e;
        r.0[1][0] = k2 * (m.mu_e - m.mu_c);
        r.0[2][0] = 2.0 * k * m.mu_c;
        (t, r)
    }
}

/// Analytic limiting speed: the smallest of the compression speed and the
/// slow branch of the coupled shear-rotational quartic (both k-dependent).
pub fn limiting_speed_analytic(ctx: &WaveContext) -> f64 {
    let m = &ctx.material;
    let k2 = ctx.k * ctx.k;
    let a_s = (m.mu_e + m.mu_c) / m.rho;
    let a_p = (2.0 * m.mu_e + m.lambda_e) / m.rho;
    let a_m = m.curvature_g / (m.rho * m.rot_inertia_j);
    let cm1sq = a_m + 4.0 * m.mu_c * m.mu_e / (m.rho * m.rot_inertia_j * k2 * (m.mu_e + m.mu_c));
    let delta = 4.0 * m.mu_c * m.mu_c / (k2 * m.rho * m.rot_inertia_j * (m.mu_e + m.mu_c));
    let big = (a_s - cm1sq).powi(2) + 2.0 * (a_s + cm1sq) * delta + delta * delta;
    let cm2sq = 0.5 * (a_s + cm1sq + delta - big.sqrt());
    a_p.sqrt().min(cm2sq.sqrt())
}

/// Limiting speed by scanning the rotated stiffness over propagation angles.
///
/// For each angle the candidate speed is sqrt(lambda_min(Q_theta)) / (k cos
/// theta); a golden-section refinement (1e-8 in theta) sharpens the grid
/// minimum.
pub fn limiting_speed_scan(ctx: &WaveContext, n_theta: usize) -> Result<f64> {
    if n_theta < 64 {
        return Err(CosseratError::InvalidArgument(
            "limiting-speed scan needs at least 64 angles".into(),
        ));
    }
    let delta = 1e-3;
    let lo = -std::f64::consts::FRAC_PI_2 + delta;
    let hi = std::f64::consts::FRAC_PI_2 - delta;
    let v_at = |theta: f64| -> f64 {
        let (s, co) = theta.sin_cos();
        let rr = ctx.r.add(&ctx.r.transpose());
        let q = ctx
            .t
            .scale(s * s)
            .add(&rr.scale(s * co))
            .add(&ctx.q0.scale(co * co));
        let (vals, _) = crate::algebra::herm_eig(&q.to_complex(), None)
            .expect("rotated stiffness is symmetric");
        let lmin = vals[0].max(0.0);
        lmin.sqrt() / (ctx.k * co.abs())
    };

    let mut best_i = 0;
    let mut best = f64::INFINITY;
    let step = (hi - lo) / (n_theta - 1) as f64;
    for i in 0..n_theta {
        let v = v_at(lo + i as f64 * step);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    // golden-section refinement between the neighbors of the grid minimum
    let mut a = lo + (best_i.saturating_sub(1)) as f64 * step;
    let mut b = (lo + (best_i + 1) as f64 * step).min(hi);
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = v_at(x1);
    let mut f2 = v_at(x2);
    while b - a > 1e-8 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = v_at(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = v_at(x2);
        }
    }
    Ok(best.min(f1).min(f2))
}

/// Coefficients of the even characteristic sextic
/// r^6 + p1 r^4 + p2 r^2 + p3 together with the constants of its
/// factorization (r^2 + c_l)((r^2 + c_t)(r^2 + c_m) - g) after absorbing the
/// wavenumber corrections.
#[derive(Debug, Clone, Copy)]
pub struct SexticCoefficients {
    pub v: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub c_l: f64,
    pub c_t: f64,
    pub c_m: f64,
    /// Coupling term 4 rho mu_c^2 v^2 / (k^2 G (mu_e + mu_c)^2).
    pub coupling_g: f64,
}

fn polymul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Characteristic sextic of the pencil r^2 T + r (R + R^T) + Q(v), expanded
/// exactly as a polynomial determinant and normalized by det T; the
/// factorization constants are filled alongside.
pub fn sextic(ctx: &WaveContext, v: f64) -> SexticCoefficients {
    // quadratic entry polynomials of the pencil
    let rr = ctx.r.add(&ctx.r.transpose());
    let qt = ctx.q_tilde(v);
    let entry = |i: usize, j: usize| vec![qt.0[i][j], rr.0[i][j], ctx.t.0[i][j]];
    let mut det = vec![0.0; 7];
    // permutation expansion of the 3x3 determinant
    let perms: [([usize; 3], f64); 6] = [
        ([0, 1, 2], 1.0),
        ([1, 2, 0], 1.0),
        ([2, 0, 1], 1.0),
        ([2, 1, 0], -1.0),
        ([1, 0, 2], -1.0),
        ([0, 2, 1], -1.0),
    ];
    for (p, sign) in perms {
        let term = polymul(&polymul(&entry(0, p[0]), &entry(1, p[1])), &entry(2, p[2]));
        for (i, t) in term.iter().enumerate() {
            det[i] += sign * t;
        }
    }
    let lead = ctx.t.det();
    let p1 = det[4] / lead;
    let p2 = det[2] / lead;
    let p3 = det[0] / lead;
    debug_assert!(det[1].abs() + det[3].abs() + det[5].abs() <= 1e-8 * det.iter().map(|x| x.abs()).fold(0.0, f64::max));

    let m = &ctx.material;
    let k2 = ctx.k * ctx.k;
    let a_s = (m.mu_e + m.mu_c) / m.rho;
    let a_p = (2.0 * m.mu_e + m.lambda_e) / m.rho;
    let g_mod = m.curvature_g;
    let c_l = 1.0 - v * v / a_p;
    let c_t = 1.0 - v * v / a_s;
    let c_m = 1.0 + 4.0 * m.mu_c * m.mu_e / (g_mod * k2 * (m.mu_e + m.mu_c))
        - m.rho * m.rot_inertia_j * v * v / g_mod;
    let coupling_g =
        4.0 * m.rho * m.mu_c * m.mu_c * v * v / (k2 * g_mod * (m.mu_e + m.mu_c).powi(2));

    SexticCoefficients {
        v,
        p1,
        p2,
        p3,
        c_l,
        c_t,
        c_m,
        coupling_g,
    }
}

/// The three characteristic roots in the open upper half plane, from the
/// closed-form factorization, cross-checked against the cubic in r^2.
pub fn sextic_roots(coeffs: &SexticCoefficients) -> Result<[C64; 3]> {
    let disc = (coeffs.c_t - coeffs.c_m).powi(2) + 4.0 * coeffs.coupling_g;
    // stable quadratic roots: the larger-magnitude one from the additive
    // branch, the other from the product c_t c_m - g
    let sum = coeffs.c_t + coeffs.c_m;
    let prod = coeffs.c_t * coeffs.c_m - coeffs.coupling_g;
    let (r2, r3) = if sum >= 0.0 {
        let big = -0.5 * (sum + disc.sqrt());
        (if big != 0.0 { prod / big } else { 0.0 }, big)
    } else {
        let big = 0.5 * (-sum + disc.sqrt());
        (big, if big != 0.0 { prod / big } else { 0.0 })
    };
    let r_sq = [-coeffs.c_l, r2, r3];
    let scale = r_sq.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    for s in r_sq {
        if s >= -1e-12 * scale {
            return Err(CosseratError::RealRoot { v: coeffs.v });
        }
    }
    // independent route: generic cubic in s = r^2. Roots of the expanded
    // cubic are only determined to sqrt(eps) when two of them cluster, so
    // the matching tolerance carries the usual |P| / |P'| forward-error term.
    let cubic = solve_cubic(
        c(coeffs.p1, 0.0),
        c(coeffs.p2, 0.0),
        c(coeffs.p3, 0.0),
    );
    for (i, s) in r_sq.iter().enumerate() {
        let nearest = cubic
            .iter()
            .map(|z| (z - c(*s, 0.0)).norm())
            .fold(f64::INFINITY, f64::min);
        let separation: f64 = r_sq
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, o)| (s - o).abs())
            .product();
        let tol = 1e-9 * scale.max(1.0) + 1e-13 * scale.powi(3) / separation.max(1e-300);
        if nearest > tol {
            return Err(CosseratError::InvalidArgument(format!(
                "sextic factorization disagrees with the characteristic cubic (dev {nearest:.3e})"
            )));
        }
    }
    let mut out = [c(0.0, 0.0); 3];
    for (i, s) in r_sq.iter().enumerate() {
        out[i] = c(0.0, (-s).sqrt());
    }
    Ok(out)
}

/// Partial-wave amplitudes and the traction boundary matrix, in physical
/// (z-space) variables.
#[derive(Debug, Clone)]
pub struct StrohModes {
    /// Characteristic roots with Im r > 0.
    pub roots: [C64; 3],
    /// Unit displacement amplitudes d^(j).
    pub displacements: [Vec3C; 3],
    /// Traction amplitudes b^(j) = (r_j T + R^T) d^(j).
    pub tractions: [Vec3C; 3],
    /// B = (b^(1) | b^(2) | b^(3)); det B = 0 is the secular condition.
    pub boundary_matrix: Mat3C,
}

impl StrohModes {
    pub fn boundary_det(&self) -> C64 {
        self.boundary_matrix.det()
    }
}

fn normalize(v: &mut Vec3C) {
    let n = v.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        for e in v.iter_mut() {
            *e /= n;
        }
    }
}

/// Closed-form displacement/traction amplitudes for the three decaying
/// partial waves. Falls back to a numerical null space of the pencil when
/// two roots (nearly) coincide.
pub fn modes(ctx: &WaveContext, v: f64) -> Result<StrohModes> {
    let coeffs = sextic(ctx, v);
    let roots = sextic_roots(&coeffs)?;
    let m = &ctx.material;
    let k = ctx.k;
    let (tz, rz) = ctx.physical_t_r();

    let scale = roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let degenerate = (0..3).any(|i| {
        ((i + 1)..3).any(|j| (roots[i] - roots[j]).norm() <= 1e-6 * scale)
    });

    let mut displacements = [[c(0.0, 0.0); 3]; 3];
    if degenerate {
        // numerical null space of the physical pencil
        let qz = {
            // Q - k^2 v^2 diag(rho, rho, rho J)
            let k2 = k * k;
            let mut q = Mat3R::zero();
            q.0[0][0] = k2 * (2.0 * m.mu_e + m.lambda_e) - k2 * v * v * m.rho;
            q.0[1][1] = k2 * (m.mu_e + m.mu_c) - k2 * v * v * m.rho;
            q.0[1][2] = -2.0 * m.mu_c * k;
            q.0[2][1] = q.0[1][2];
            q.0[2][2] =
                k2 * m.curvature_g + 4.0 * m.mu_c - k2 * v * v * m.rho * m.rot_inertia_j;
            q
        };
        let rr = rz.add(&rz.transpose());
        for (i, r) in roots.iter().enumerate() {
            let pencil = tz
                .to_complex()
                .scale(*r * *r)
                .add(&rr.to_complex().scale(*r))
                .add(&qz.to_complex());
            let mut best = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
            let mut best_res = f64::INFINITY;
            // cheapest rank-2 null vector: cross products of row pairs
            for (a, b) in [(0usize, 1usize), (0, 2), (1, 2)] {
                let ra = pencil.0[a];
                let rb = pencil.0[b];
                let mut cand = [
                    ra[1] * rb[2] - ra[2] * rb[1],
                    ra[2] * rb[0] - ra[0] * rb[2],
                    ra[0] * rb[1] - ra[1] * rb[0],
                ];
                normalize(&mut cand);
                let res = {
                    let pv = pencil.matvec(&cand);
                    pv.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
                };
                if res < best_res {
                    best_res = res;
                    best = cand;
                }
            }
            displacements[i] = best;
        }
    } else {
        let a_s = (m.mu_e + m.mu_c) / m.rho;
        let c_t = 1.0 - v * v / a_s;
        let amp = 2.0 * m.mu_c / ((m.mu_e + m.mu_c) * k);
        displacements[0] = [c(1.0 / k, 0.0), roots[0] / k, c(0.0, 0.0)];
        for j in 1..3 {
            let r = roots[j];
            displacements[j] = [
                r * amp,
                c(-amp, 0.0),
                -(r * r + c(c_t, 0.0)),
            ];
        }
        for d in displacements.iter_mut() {
            normalize(d);
        }
    }

    let mut tractions = [[c(0.0, 0.0); 3]; 3];
    let rzt = rz.transpose().to_complex();
    for j in 0..3 {
        let mat = tz.to_complex().scale(roots[j]).add(&rzt);
        tractions[j] = mat.matvec(&displacements[j]);
    }
    let b = &tractions;
    let boundary_matrix = Mat3C([
        [b[0][0], b[1][0], b[2][0]],
        [b[0][1], b[1][1], b[2][1]],
        [b[0][2], b[1][2], b[2][2]],
    ]);

    Ok(StrohModes {
        roots,
        displacements,
        tractions,
        boundary_matrix,
    })
}

/// Explicit secular function of the Stroh route; shares its unique positive
/// root on (0, limiting speed) with det B = 0 and with det M = 0. Like the
/// classical Rayleigh function it also vanishes trivially at v = 0.
pub fn stroh_secular(ctx: &WaveContext, v: f64) -> Result<f64> {
    let vhat = limiting_speed_analytic(ctx);
    if !(0.0..vhat).contains(&v) {
        return Err(CosseratError::OutOfRange { v, limit: vhat });
    }
    let m = &ctx.material;
    let coeffs = sextic(ctx, v);
    let (c1, c2, c3, g) = (coeffs.c_l, coeffs.c_t, coeffs.c_m, coeffs.coupling_g);
    let p = (c2 * c3 - g).max(0.0);
    let p3 = c1 * p;
    let radicand = (p3 * (c2 + c3 + 2.0 * p.sqrt())).max(0.0);
    let lam = m.lambda_e;
    let two_mu_lam = 2.0 * m.mu_e + m.lambda_e;
    Ok(4.0 * m.mu_e * m.mu_e * radicand.sqrt()
        - (c3 + p.sqrt()) * (lam - two_mu_lam * c1).powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bench_ctx() -> WaveContext {
        WaveContext::new(&CosseratMaterial::aluminum_epoxy(), 1.0).unwrap()
    }

    #[test]
    fn context_matrices_match_hand_substitution() {
        let ctx = bench_ctx();
        let m = &ctx.material;
        // T diagonal entries from direct substitution
        let t00 = (m.mu_e + m.mu_c) / m.rho;
        let t11 = (2.0 * m.mu_e + m.lambda_e) / m.rho;
        let t22 = m.curvature_g / (m.rho * m.rot_inertia_j);
        assert!((ctx.t.0[0][0] - t00).abs() < 1e-12);
        assert!((ctx.t.0[1][1] - t11).abs() < 1e-12);
        assert!((ctx.t.0[2][2] - t22).abs() < 1e-12);
        assert!((t00 - 0.856953).abs() < 1e-4);
        assert!((t11 - 5.12172).abs() < 1e-4);
        assert!((t22 - 6.04530).abs() < 1e-4);
        // R sparsity: zero diagonal, exactly three nonzeros
        let nonzeros = ctx
            .r
            .0
            .iter()
            .flatten()
            .filter(|e| e.abs() > 0.0)
            .count();
        assert_eq!(nonzeros, 3);
        for i in 0..3 {
            assert_eq!(ctx.r.0[i][i], 0.0);
        }
        assert!(ctx.r.0[2][0] > 0.0, "microrotation coupling sits in R(3,1)");
        // Q0 coupling
        let q12 = -2.0 * ctx.k * m.mu_c / (m.rho * m.rot_inertia_j.sqrt());
        assert!((ctx.q0.0[1][2] - q12).abs() < 1e-14);
        // T diagonal, so its determinant is the product of the diagonal
        let prod = ctx.t.0[0][0] * ctx.t.0[1][1] * ctx.t.0[2][2];
        assert!((ctx.t.det() - prod).abs() <= 1e-14 * prod.abs());
    }

    #[test]
    fn context_rejects_inadmissible() {
        let mut m = CosseratMaterial::aluminum_epoxy();
        m.mu_c = 0.0;
        assert!(matches!(
            WaveContext::new(&m, 1.0),
            Err(CosseratError::InadmissibleMaterial(_))
        ));
    }

    #[test]
    fn t_and_q0_positive_definite() {
        let ctx = bench_ctx();
        for mat in [&ctx.t, &ctx.q0] {
            let (vals, _) = crate::algebra::herm_eig(&mat.to_complex(), None).unwrap();
            assert!(vals[0] > 0.0);
        }
    }

    #[test]
    fn limiting_speed_benchmark() {
        let ctx = bench_ctx();
        let v = limiting_speed_analytic(&ctx);
        assert!((v - 0.925507).abs() < 1e-5, "got {v}");
        let scan = limiting_speed_scan(&ctx, 512).unwrap();
        assert!((scan - v).abs() < 1e-4, "scan {scan} vs analytic {v}");
        assert!(scan >= v - 1e-6);
    }

    #[test]
    fn scan_upper_bounded_by_normal_incidence() {
        let ctx = bench_ctx();
        let (vals, _) = crate::algebra::herm_eig(&ctx.q0.to_complex(), None).unwrap();
        let v_normal = vals[0].sqrt() / ctx.k;
        let scan = limiting_speed_scan(&ctx, 256).unwrap();
        assert!(scan <= v_normal + 1e-12);
    }

    #[test]
    fn limiting_speed_classical_limit() {
        // mu_c -> 0+: the limiting speed tends to min(c_l, c_t, c_m)
        let mut m = CosseratMaterial::aluminum_epoxy();
        m.mu_c = 1e-9;
        let ctx = WaveContext::new(&m, 1.0).unwrap();
        let c_l = ((2.0 * m.mu_e + m.lambda_e) / m.rho).sqrt();
        let c_t = (m.mu_e / m.rho).sqrt();
        let c_m = (m.curvature_g / (m.rho * m.rot_inertia_j)).sqrt();
        let expect = c_l.min(c_t).min(c_m);
        let v = limiting_speed_analytic(&ctx);
        assert!((v - expect).abs() < 1e-6, "{v} vs {expect}");
        let scan = limiting_speed_scan(&ctx, 512).unwrap();
        assert!((scan - expect).abs() < 1e-4);
    }

    #[test]
    fn limiting_speed_stiff_curvature_tends_to_shear() {
        let mut m = CosseratMaterial::aluminum_epoxy();
        m.curvature_g = 1e6;
        let ctx = WaveContext::new(&m, 1.0).unwrap();
        let c_s = ((m.mu_e + m.mu_c) / m.rho).sqrt();
        let c_p = ((2.0 * m.mu_e + m.lambda_e) / m.rho).sqrt();
        let v = limiting_speed_analytic(&ctx);
        assert!((v - c_s.min(c_p)).abs() < 1e-4);
    }

    #[test]
    fn sextic_pencil_matches_factorization() {
        let ctx = bench_ctx();
        for v in [0.0, 0.3, 0.6, 0.87] {
            let s = sextic(&ctx, v);
            let p1 = s.c_l + s.c_t + s.c_m;
            let p2 = s.c_l * s.c_t + s.c_t * s.c_m + s.c_m * s.c_l - s.coupling_g;
            let p3 = s.c_l * (s.c_t * s.c_m - s.coupling_g);
            assert!((s.p1 - p1).abs() < 1e-10 * p1.abs().max(1.0));
            assert!((s.p2 - p2).abs() < 1e-10 * p2.abs().max(1.0));
            assert!((s.p3 - p3).abs() < 1e-10 * p3.abs().max(1.0));
        }
    }

    #[test]
    fn sextic_roots_subsonic_all_complex() {
        let ctx = bench_ctx();
        let roots = sextic_roots(&sextic(&ctx, 0.87)).unwrap();
        for r in roots {
            assert!(r.im > 0.0);
            // pencil determinant vanishes at each root
            let rr = ctx.r.add(&ctx.r.transpose()).to_complex();
            let pencil = ctx
                .t
                .to_complex()
                .scale(r * r)
                .add(&rr.scale(r))
                .add(&ctx.q_tilde(0.87).to_complex());
            assert!(pencil.det().norm() < 1e-9 * ctx.t.norm_fro().powi(3));
        }
    }

    #[test]
    fn sextic_real_root_past_limit() {
        let ctx = bench_ctx();
        let vhat = limiting_speed_analytic(&ctx);
        assert!(matches!(
            sextic_roots(&sextic(&ctx, 1.2 * vhat)),
            Err(CosseratError::RealRoot { .. })
        ));
        // and at v = 0.5 all six roots are non-real (closure under r -> -conj r)
        let roots = sextic_roots(&sextic(&ctx, 0.5)).unwrap();
        for r in roots {
            assert!(r.re.abs() < 1e-12 && r.im > 0.0);
        }
    }

    #[test]
    fn modes_structure() {
        let ctx = bench_ctx();
        let md = modes(&ctx, 0.87).unwrap();
        // d1 proportional to (1, r1, 0)
        let d1 = md.displacements[0];
        assert!((d1[1] / d1[0] - md.roots[0]).norm() < 1e-10);
        assert!(d1[2].norm() < 1e-14);
        // traction definition b = (r T + R^T) d holds by construction; check
        // the pencil residual of each displacement instead
        let (tz, rz) = ctx.physical_t_r();
        let m = &ctx.material;
        let k2 = ctx.k * ctx.k;
        let mut qz = Mat3R::zero();
        qz.0[0][0] = k2 * (2.0 * m.mu_e + m.lambda_e) - k2 * 0.87f64.powi(2) * m.rho;
        qz.0[1][1] = k2 * (m.mu_e + m.mu_c) - k2 * 0.87f64.powi(2) * m.rho;
        qz.0[1][2] = -2.0 * m.mu_c * ctx.k;
        qz.0[2][1] = qz.0[1][2];
        qz.0[2][2] = k2 * m.curvature_g + 4.0 * m.mu_c
            - k2 * 0.87f64.powi(2) * m.rho * m.rot_inertia_j;
        let rr = rz.add(&rz.transpose());
        let scale = tz.norm_fro() + rr.norm_fro() + qz.norm_fro();
        for j in 0..3 {
            let r = md.roots[j];
            let pencil = tz
                .to_complex()
                .scale(r * r)
                .add(&rr.to_complex().scale(r))
                .add(&qz.to_complex());
            let res = pencil.matvec(&md.displacements[j]);
            let n = res.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
            assert!(n < 1e-9 * scale, "pencil residual {n}");
        }
    }

    #[test]
    fn mode_coupling_scales_with_couple_modulus() {
        let base = CosseratMaterial::aluminum_epoxy();
        let mut small = base.clone();
        small.mu_c = base.mu_c * 1e-3;
        let ctx = WaveContext::new(&small, 1.0).unwrap();
        let coeffs = sextic(&ctx, 0.5);
        let roots = sextic_roots(&coeffs).unwrap();
        // un-normalized closed-form amplitude of the theta-dominated mode:
        // first two components carry the factor 2 mu_c
        let amp = 2.0 * small.mu_c / ((small.mu_e + small.mu_c) * ctx.k);
        let r3 = roots[2];
        let d_unnorm = [r3 * amp, c(-amp, 0.0), -(r3 * r3 + c(coeffs.c_t, 0.0))];
        assert!(d_unnorm[0].norm() < 1e-2 * d_unnorm[2].norm());
        assert!(d_unnorm[1].norm() < 1e-2 * d_unnorm[2].norm());
    }

    #[test]
    fn secular_sign_change_and_domain() {
        let ctx = bench_ctx();
        let vhat = limiting_speed_analytic(&ctx);
        // v = 0 is an exact (degenerate) zero of the secular function, so the
        // bracket starts just above it
        let s0 = stroh_secular(&ctx, 0.0).unwrap();
        assert!(s0.abs() < 1e-10);
        let s_lo = stroh_secular(&ctx, 0.05 * vhat).unwrap();
        let s_hi = stroh_secular(&ctx, vhat * (1.0 - 1e-6)).unwrap();
        assert!(s_lo * s_hi < 0.0, "no bracketing: s_lo={s_lo}, s_hi={s_hi}");
        assert!(matches!(
            stroh_secular(&ctx, vhat * 1.01),
            Err(CosseratError::OutOfRange { .. })
        ));
    }

    #[test]
    fn secular_root_matches_reference() {
        let ctx = bench_ctx();
        // bisection on the explicit secular function
        let (mut a, mut b) = (0.5, limiting_speed_analytic(&ctx) * (1.0 - 1e-6));
        let mut fa = stroh_secular(&ctx, a).unwrap();
        for _ in 0..80 {
            let mid = 0.5 * (a + b);
            let fm = stroh_secular(&ctx, mid).unwrap();
            if fa * fm <= 0.0 {
                b = mid;
            } else {
                a = mid;
                fa = fm;
            }
        }
        let root = 0.5 * (a + b);
        assert!((root - 0.87296).abs() < 2e-4, "got {root}");
        // det B vanishes at the same speed
        let det_at = |v: f64| modes(&ctx, v).unwrap().boundary_det().norm();
        let at_root = det_at(root);
        let away = det_at(root + 5e-3);
        assert!(at_root < 1e-6 * away, "detB {at_root} vs off-root {away}");
    }
}
