//! Rayleigh surface waves in isotropic linear Cosserat (micropolar) elastic
//! half-spaces.
//!
//! The solver decides existence, computes the unique subsonic wave speed,
//! and reconstructs the decaying field. The primary route is the surface
//! impedance matrix: the angular-average integral representation yields the
//! unique Hermitian solution of an algebraic Riccati equation, whose
//! determinant is a strictly decreasing function of the speed with exactly
//! one admissible zero. The Stroh-style route (characteristic sextic with
//! closed-form roots, partial-wave amplitudes, boundary determinant, and an
//! explicit secular function) and the classical-elasticity limit are kept as
//! independent cross-checks.
//!
//! # Quick start
//!
//! ```
//! use cosserat_waves::{material::CosseratMaterial, rayleigh, stroh::WaveContext};
//!
//! let m = CosseratMaterial::aluminum_epoxy();
//! let ctx = WaveContext::new(&m, 1.0).unwrap();
//! let sol = rayleigh::solve(&ctx, &rayleigh::SolveOptions::default()).unwrap();
//! assert!(sol.v_r > 0.0 && sol.v_r < sol.limiting_speed);
//! ```

pub mod algebra;
pub mod classical;
pub mod error;
pub mod impedance;
pub mod material;
pub mod planewave;
pub mod rayleigh;
pub mod stroh;

pub use error::{CosseratError, Result};
pub use material::{check_conditions, characteristic_speeds, CosseratMaterial};
pub use rayleigh::{dispersion_sweep, solve, solve_newton, RayleighSolution, SolveOptions};
pub use stroh::{limiting_speed_analytic, limiting_speed_scan, WaveContext};
