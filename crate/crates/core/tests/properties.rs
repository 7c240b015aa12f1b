//! Cross-module property checks: the algebraic identities that tie the
//! characteristic-sextic route, the impedance route, and the classical limit
//! together on random admissible materials.

mod common;

use common::{bisect, random_admissible, random_wavenumber};
use cosserat_waves::algebra::{c, Mat3C};
use cosserat_waves::classical::{analytic_impedance, classical_rayleigh_speed, ClassicalSpeeds};
use cosserat_waves::impedance::{dm_dv, impedance};
use cosserat_waves::material::CosseratMaterial;
use cosserat_waves::rayleigh::{solve, SolveOptions};
use cosserat_waves::stroh::{limiting_speed_analytic, modes, sextic, stroh_secular, WaveContext};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn pencil_determinant_matches_sextic() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let samples = [
        c(0.0, 0.0),
        c(1.0, 0.0),
        c(-1.0, 0.0),
        c(0.0, 1.0),
        c(0.0, -1.0),
        c(2.0, 0.0),
        c(0.0, 3.0),
    ];
    for _ in 0..200 {
        let m = random_admissible(&mut rng);
        let k = random_wavenumber(&mut rng);
        let ctx = WaveContext::new(&m, k).unwrap();
        let vhat = limiting_speed_analytic(&ctx);
        let v = rng.gen_range(0.0..1.3) * vhat; // both sides of the limit
        let coeffs = sextic(&ctx, v);
        let lead = ctx.t.det();
        let rr = ctx.r.add(&ctx.r.transpose()).to_complex();
        let qt = ctx.q_tilde(v).to_complex();
        for r in samples {
            let pencil = ctx
                .t
                .to_complex()
                .scale(r * r)
                .add(&rr.scale(r))
                .add(&qt);
            let lhs = pencil.det() / c(lead, 0.0);
            let s = r * r;
            let rhs = ((s + c(coeffs.p1, 0.0)) * s + c(coeffs.p2, 0.0)) * s + c(coeffs.p3, 0.0);
            let scale = 1.0
                + s.norm().powi(3)
                + coeffs.p1.abs() * s.norm().powi(2)
                + coeffs.p2.abs() * s.norm()
                + coeffs.p3.abs();
            assert!(
                (lhs - rhs).norm() <= 1e-9 * scale,
                "pencil/sextic mismatch {:.3e} at r = {r}",
                (lhs - rhs).norm()
            );
        }
    }
}

#[test]
fn riccati_stroh_and_boundary_roots_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let bench = WaveContext::new(&CosseratMaterial::aluminum_epoxy(), 1.0).unwrap();
    let bench_sol = solve(&bench, &SolveOptions::default()).unwrap();
    let mut cases = vec![(bench, bench_sol)];
    for _ in 0..20 {
        cases.push(common::random_with_wave(&mut rng));
    }
    for (i, (ctx, sol)) in cases.iter().enumerate() {
        let vhat = limiting_speed_analytic(ctx);
        let ctx = ctx.clone();
        let sol = sol.clone();

        let stroh_root = bisect(
            0.02 * vhat,
            (1.0 - 1e-6) * vhat,
            |v| stroh_secular(&ctx, v).unwrap(),
            1e-11 * vhat,
        );
        assert!(
            (sol.v_r - stroh_root).abs() <= 1e-3,
            "case {i}: riccati {} vs stroh secular {stroh_root}",
            sol.v_r
        );

        // det B is purely imaginary below the limiting speed; its imaginary
        // part changes sign at the secular root
        let det_b_im = |v: f64| modes(&ctx, v).unwrap().boundary_det().im;
        let lo = (sol.v_r - 0.05 * vhat).max(0.01 * vhat);
        let hi = (sol.v_r + 0.05 * vhat).min((1.0 - 1e-6) * vhat);
        let boundary_root = bisect(lo, hi, det_b_im, 1e-11 * vhat);
        assert!(
            (sol.v_r - boundary_root).abs() <= 1e-3,
            "case {i}: riccati {} vs boundary determinant {boundary_root}",
            sol.v_r
        );
        // subsonic with margin
        assert!(sol.v_r < vhat && vhat - sol.v_r > 1e-6 * vhat);
    }
}

#[test]
fn classical_limit_converges_monotonically() {
    let base = CosseratMaterial::aluminum_epoxy();
    let sp = ClassicalSpeeds::from_elastic(base.lambda_e, base.mu_e, base.rho).unwrap();
    let reference = classical_rayleigh_speed(&sp).unwrap();
    let mut gaps = Vec::new();
    for scale in [1e-3, 1e-5, 1e-7] {
        let mut m = base.clone();
        m.mu_c = base.mu_e * scale;
        let ctx = WaveContext::new(&m, 1.0).unwrap();
        let sol = solve(&ctx, &SolveOptions::default()).unwrap();
        gaps.push((sol.v_r - reference).abs());
    }
    assert!(
        gaps[0] >= gaps[1] && gaps[1] >= gaps[2],
        "gaps not monotone: {gaps:?}"
    );
    assert!(gaps[2] <= 1e-3, "limit gap {}", gaps[2]);
}

#[test]
fn analytic_classical_impedance_matches_quadrature() {
    let mut m = CosseratMaterial::aluminum_epoxy();
    m.mu_c = 1e-9;
    let ctx = WaveContext::new(&m, 1.0).unwrap();
    let sp = ClassicalSpeeds::from_material(&m).unwrap();
    for v in [0.0, 0.5] {
        let quad = impedance(&ctx, v, 512).unwrap().m;
        let closed = analytic_impedance(&sp, 1.0, v).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let dev = (quad.0[i][j] - closed.0[i][j]).norm();
                assert!(
                    dev <= 1e-5,
                    "entry ({i},{j}) at v={v}: quadrature {:?} vs closed {:?}",
                    quad.0[i][j],
                    closed.0[i][j]
                );
            }
        }
    }
}

#[test]
fn impedance_derivative_matches_classical_closed_form() {
    let mut m = CosseratMaterial::aluminum_epoxy();
    m.mu_c = 1e-9;
    let ctx = WaveContext::new(&m, 1.0).unwrap();
    let sp = ClassicalSpeeds::from_material(&m).unwrap();
    let v = 0.5;
    let numeric = dm_dv(&ctx, v, None, 256).unwrap();
    // Richardson-extrapolated central difference of the closed form
    let fd = |h: f64| -> Mat3C {
        let plus = analytic_impedance(&sp, 1.0, v + h).unwrap();
        let minus = analytic_impedance(&sp, 1.0, v - h).unwrap();
        plus.sub(&minus).scale(c(1.0 / (2.0 * h), 0.0))
    };
    let d1 = fd(1e-4);
    let d2 = fd(5e-5);
    let closed = d2.scale(c(4.0 / 3.0, 0.0)).sub(&d1.scale(c(1.0 / 3.0, 0.0)));
    let dev = numeric.sub(&closed).norm_fro();
    assert!(dev <= 1e-4 * closed.norm_fro().max(1.0), "derivative gap {dev}");
}

#[test]
fn boundary_determinant_vanishes_at_riccati_root() {
    let ctx = WaveContext::new(&CosseratMaterial::aluminum_epoxy(), 1.0).unwrap();
    let sol = solve(&ctx, &SolveOptions::default()).unwrap();
    let at_root = modes(&ctx, sol.v_r).unwrap().boundary_det().norm();
    let away = modes(&ctx, sol.v_r * 0.99).unwrap().boundary_det().norm();
    assert!(at_root <= 1e-6 * away, "det B at root {at_root} vs away {away}");
}
