//! Shared helpers for the integration suites.

use cosserat_waves::material::CosseratMaterial;
use rand::Rng;

/// Draws a material satisfying the in-plane real-wave conditions together
/// with mu_e + lambda_e - mu_c > 0 (compression faster than shear). The
/// latter keeps the static impedance positive definite, which is what the
/// existence of a subsonic surface wave actually requires: for
/// mu_e + lambda_e - mu_c <= 0 the impedance determinant starts negative and
/// never crosses zero, and the solver correctly reports that no wave exists.
pub fn random_admissible(rng: &mut impl Rng) -> CosseratMaterial {
    loop {
        let mu_e = rng.gen_range(0.2..5.0);
        let lambda_e = rng.gen_range(-0.9 * mu_e..10.0 * mu_e);
        let mu_c = mu_e * 10f64.powf(rng.gen_range(-4.0..0.0));
        if mu_e + lambda_e - mu_c < 0.05 * mu_e {
            continue;
        }
        let g = rng.gen_range(0.01..5.0);
        let j = rng.gen_range(0.005..1.0);
        let rho = rng.gen_range(0.4..5.0);
        if let Ok(m) = CosseratMaterial::new(lambda_e, mu_e, mu_c, g, j, rho) {
            return m;
        }
    }
}

/// Log-uniform wavenumber draw.
pub fn random_wavenumber(rng: &mut impl Rng) -> f64 {
    10f64.powf(rng.gen_range(-1.0..1.0))
}

/// Draws until the sampled material actually carries a subsonic surface wave
/// at the sampled wavenumber. Admissibility alone does not guarantee one:
/// when the rotational channel is slow the impedance determinant approaches
/// zero only at the limiting speed itself, without crossing, and `solve`
/// correctly reports `NoRoot`. Those draws are skipped here.
#[allow(dead_code)]
pub fn random_with_wave(
    rng: &mut impl Rng,
) -> (
    cosserat_waves::WaveContext,
    cosserat_waves::RayleighSolution,
) {
    use cosserat_waves::rayleigh::{solve, SolveOptions};
    for _ in 0..200 {
        let m = random_admissible(rng);
        let k = random_wavenumber(rng);
        let ctx = cosserat_waves::WaveContext::new(&m, k).unwrap();
        if let Ok(sol) = solve(&ctx, &SolveOptions::default()) {
            return (ctx, sol);
        }
    }
    panic!("no wave-carrying material found in 200 draws");
}

/// Bisection on a scalar function with a sign change on [a, b].
pub fn bisect(mut a: f64, mut b: f64, mut f: impl FnMut(f64) -> f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    assert!(
        fa * fb < 0.0,
        "no sign change on [{a}, {b}]: f(a)={fa}, f(b)={fb}"
    );
    let increasing = fa < 0.0;
    while b - a > tol {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if (fm < 0.0) == increasing {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}
