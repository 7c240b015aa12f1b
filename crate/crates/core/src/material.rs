//! Constitutive parameters, admissibility condition sets, and the
//! characteristic bulk-wave speeds of the isotropic linear Cosserat solid.
//!
//! The library is unit-agnostic; the reference data set (an aluminum-epoxy
//! composite) uses GPa for stresses, mm for lengths and g/mm^3 for the
//! density, so speeds come out in mm/us. Only the combined quantities
//! `curvature_g = mu_e Lc^2 (alpha1 + alpha2)` and
//! `rot_inertia_j = j mu_e tau_c^2` enter the wave problem; the individual
//! curvature weights are optional and only needed for the full 3-D
//! real-plane-wave checks.

use crate::error::{CosseratError, Result};
use serde::{Deserialize, Serialize};

/// Isotropic linear Cosserat material.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CosseratMaterial {
    /// Lame-type mesoscale modulus (stress).
    pub lambda_e: f64,
    /// Shear modulus (stress).
    pub mu_e: f64,
    /// Cosserat couple modulus (stress, >= 0; 0 selects the classical limit).
    pub mu_c: f64,
    /// Combined in-plane couple-stress coefficient mu_e Lc^2 (a1 + a2)
    /// (stress x length^2).
    #[serde(rename = "curvature_G")]
    pub curvature_g: f64,
    /// Combined rotational inertia j mu_e tau_c^2 (length^2); the inertial
    /// coefficient of the microrotation equation is rho times this.
    #[serde(rename = "rot_inertia_J")]
    pub rot_inertia_j: f64,
    /// Mass density.
    pub rho: f64,
    /// Curvature weight a1 (optional).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha1: Option<f64>,
    /// Curvature weight a2 (optional).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha2: Option<f64>,
    /// Curvature weight a3 (optional, needed only for 3-D checks).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha3: Option<f64>,
}

impl CosseratMaterial {
    /// Builds a material and validates the structural invariants
    /// (rho > 0, rotational inertia > 0, all values finite).
    pub fn new(
        lambda_e: f64,
        mu_e: f64,
        mu_c: f64,
        curvature_g: f64,
        rot_inertia_j: f64,
        rho: f64,
    ) -> Result<Self> {
        let m = CosseratMaterial {
            lambda_e,
            mu_e,
            mu_c,
            curvature_g,
            rot_inertia_j,
            rho,
            alpha1: None,
            alpha2: None,
            alpha3: None,
        };
        m.validate()?;
        Ok(m)
    }

    /// Accepts constants in Eringen's notation: `mu_c = kappa/2`,
    /// `mu_e = mu + kappa/2`, gyration modulus `gamma` maps to `curvature_g`
    /// and micro-inertia `j` to `rot_inertia_j`.
    pub fn from_eringen(
        lambda: f64,
        mu: f64,
        kappa: f64,
        gamma: f64,
        micro_inertia_j: f64,
        rho: f64,
    ) -> Result<Self> {
        Self::new(lambda, mu + kappa / 2.0, kappa / 2.0, gamma, micro_inertia_j, rho)
    }

    /// Aluminum-epoxy composite (Gauthier's constants), the benchmark data
    /// set used throughout the tests and the reference figures.
    pub fn aluminum_epoxy() -> Self {
        let kappa = 0.00788 * 1.89;
        CosseratMaterial {
            lambda_e: 7.59,
            mu_e: 1.89 + kappa / 2.0,
            mu_c: kappa / 2.0,
            curvature_g: 7.11 * 0.0196 * 1.89,
            rot_inertia_j: 0.0196,
            rho: kappa / 0.0067,
            alpha1: None,
            alpha2: None,
            alpha3: None,
        }
    }

    pub fn with_alphas(mut self, alpha1: f64, alpha2: f64, alpha3: f64) -> Self {
        self.alpha1 = Some(alpha1);
        self.alpha2 = Some(alpha2);
        self.alpha3 = Some(alpha3);
        self
    }

    /// Parses the flat key-value material file (JSON object). Unknown keys
    /// are rejected.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let m: CosseratMaterial = serde_json::from_str(s)?;
        m.validate()?;
        Ok(m)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [
            self.lambda_e,
            self.mu_e,
            self.mu_c,
            self.curvature_g,
            self.rot_inertia_j,
            self.rho,
            self.alpha1.unwrap_or(0.0),
            self.alpha2.unwrap_or(0.0),
            self.alpha3.unwrap_or(0.0),
        ];
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(CosseratError::InvalidMaterial(
                "all parameters must be finite".into(),
            ));
        }
        if self.rho <= 0.0 {
            return Err(CosseratError::InvalidMaterial("rho must be positive".into()));
        }
        if self.rot_inertia_j <= 0.0 {
            return Err(CosseratError::InvalidMaterial(
                "rot_inertia_J must be positive".into(),
            ));
        }
        Ok(())
    }

    /// gamma = alpha1 + alpha2 when the weights are stored.
    pub fn gamma(&self) -> Option<f64> {
        Some(self.alpha1? + self.alpha2?)
    }

    /// mu_e Lc^2, recoverable when the curvature weights are stored.
    pub fn mu_e_lc2(&self) -> Option<f64> {
        let g = self.gamma()?;
        if g == 0.0 {
            None
        } else {
            Some(self.curvature_g / g)
        }
    }

    /// Sign proxy for gamma = alpha1 + alpha2: uses the stored weights when
    /// present, otherwise `curvature_g / mu_e` (valid since Lc^2 > 0).
    fn gamma_margin(&self) -> f64 {
        match self.gamma() {
            Some(g) => g,
            None => {
                if self.mu_e == 0.0 {
                    f64::NEG_INFINITY
                } else {
                    self.curvature_g / self.mu_e
                }
            }
        }
    }
}

/// One set of constitutive inequalities: whether every member holds strictly,
/// plus the smallest left-hand-side slack.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionSet {
    pub holds: bool,
    pub margin: f64,
}

impl ConditionSet {
    fn from_slacks(slacks: &[f64]) -> Self {
        let margin = slacks.iter().copied().fold(f64::INFINITY, f64::min);
        ConditionSet {
            holds: margin > 0.0,
            margin,
        }
    }
}

/// Outcome of every admissibility condition set.
///
/// Sets that require the individual curvature weights are `None` when the
/// material only carries the combined quantities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    /// Real plane waves for in-plane directions (the working hypothesis of
    /// the surface-wave solver): 2 mu_e + lambda_e > 0, mu_e > 0, mu_c > 0,
    /// alpha1 + alpha2 > 0.
    pub in_plane_real_waves: ConditionSet,
    /// Real plane waves in every direction: the in-plane set plus
    /// 2 alpha1 + alpha3 > 0. Needs alpha1..3.
    pub real_plane_waves_3d: Option<ConditionSet>,
    /// Strong ellipticity (Legendre-Hadamard): 2 mu_e + lambda_e > 0,
    /// mu_e + mu_c > 0, alpha1 + alpha2 > 0, 2 alpha1 + alpha3 > 0; the last
    /// inequality is skipped when alpha3 is unknown.
    pub strong_ellipticity: ConditionSet,
    /// Strict positive definiteness of the potential energy. Needs alpha1..3.
    pub positive_definite_energy: Option<ConditionSet>,
    /// Legacy existence set: mu_e - mu_c + lambda_e > 0, mu_e + mu_c > 0,
    /// alpha1 + alpha2 > 0.
    pub legacy_existence: ConditionSet,
    /// Eringen's additional plane-wave restriction, G/J > mu_e + mu_c
    /// (the high-frequency shear-rotational acoustic branch is faster than
    /// the optical one).
    pub eringen_four_real_waves: ConditionSet,
    /// Diagnostic only: classical plane-wave speeds dominate the rotational
    /// ones, min{c_mp^2, c_ms^2} > max{c_p^2, c_t^2}. Needs alpha1..3.
    pub classical_speed_dominance: Option<ConditionSet>,
}

/// Evaluates every condition set; report-only, never fails.
pub fn check_conditions(m: &CosseratMaterial) -> ConditionReport {
    let p_wave = 2.0 * m.mu_e + m.lambda_e;
    let gamma_proxy = m.gamma_margin();

    let in_plane = ConditionSet::from_slacks(&[p_wave, m.mu_e, m.mu_c, gamma_proxy]);

    let real_3d = m.alpha1.zip(m.alpha3).map(|(a1, a3)| {
        ConditionSet::from_slacks(&[p_wave, m.mu_e, m.mu_c, gamma_proxy, 2.0 * a1 + a3])
    });

    let strong_ellipticity = {
        let mut slacks = vec![p_wave, m.mu_e + m.mu_c, gamma_proxy];
        if let Some((a1, a3)) = m.alpha1.zip(m.alpha3) {
            slacks.push(2.0 * a1 + a3);
        }
        ConditionSet::from_slacks(&slacks)
    };

    let energy = match (m.alpha1, m.alpha2, m.alpha3) {
        (Some(a1), Some(a2), Some(a3)) => Some(ConditionSet::from_slacks(&[
            m.mu_e,
            m.mu_c,
            2.0 * m.mu_e + 3.0 * m.lambda_e,
            a1,
            a2,
            2.0 * a1 + 3.0 * a3,
        ])),
        _ => None,
    };

    let legacy = ConditionSet::from_slacks(&[
        m.mu_e - m.mu_c + m.lambda_e,
        m.mu_e + m.mu_c,
        gamma_proxy,
    ]);

    let eringen = ConditionSet::from_slacks(&[
        m.curvature_g / m.rot_inertia_j - (m.mu_e + m.mu_c),
    ]);

    let dominance = characteristic_speeds(m, None).ok().and_then(|sp| {
        let (cp, ct, cms, cmp) = (sp.c_p?, sp.c_t?, sp.c_ms?, sp.c_mp?);
        Some(ConditionSet::from_slacks(&[
            cms * cms - cp * cp,
            cms * cms - ct * ct,
            cmp * cmp - cp * cp,
            cmp * cmp - ct * ct,
        ]))
    });

    ConditionReport {
        in_plane_real_waves: in_plane,
        real_plane_waves_3d: real_3d,
        strong_ellipticity,
        positive_definite_energy: energy,
        legacy_existence: legacy,
        eringen_four_real_waves: eringen,
        classical_speed_dominance: dominance,
    }
}

/// Characteristic bulk-wave group/phase velocities and the cut-off frequency.
///
/// A speed is `None` when its radicand is negative (the wave is not real) or
/// when the required parameters are missing (`c_mp` needs 2 alpha1 + alpha3).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CharacteristicSpeeds {
    /// Translational compression wave, sqrt((lambda_e + 2 mu_e)/rho).
    pub c_p: Option<f64>,
    /// Shear-rotational acoustic branch at low frequency, sqrt(mu_e/rho).
    pub c_t: Option<f64>,
    /// Shear-rotational acoustic branch at high frequency,
    /// sqrt((mu_e + mu_c)/rho).
    pub c_s: Option<f64>,
    /// Compressional-rotational wave at high frequency.
    pub c_mp: Option<f64>,
    /// Shear-rotational optical branch at high frequency, sqrt(G/(rho J)).
    pub c_ms: Option<f64>,
    /// Cut-off frequency of the optical branches, 2 sqrt(mu_c/(rho J)).
    pub cutoff_frequency: Option<f64>,
}

fn real_sqrt(radicand: f64) -> Option<f64> {
    (radicand > 0.0).then(|| radicand.sqrt())
}

/// Characteristic speeds from the combined quantities.
///
/// `mu_e_lc2` optionally supplies the split `mu_e Lc^2` so that `c_mp` can be
/// formed; when absent it is recovered from the stored curvature weights.
pub fn characteristic_speeds(
    m: &CosseratMaterial,
    mu_e_lc2: Option<f64>,
) -> Result<CharacteristicSpeeds> {
    m.validate()?;
    let rho_j = m.rho * m.rot_inertia_j;
    let c_mp = match (mu_e_lc2.or_else(|| m.mu_e_lc2()), m.alpha1.zip(m.alpha3)) {
        (Some(split), Some((a1, a3))) => real_sqrt(split * (2.0 * a1 + a3) / rho_j),
        _ => None,
    };
    Ok(CharacteristicSpeeds {
        c_p: real_sqrt((m.lambda_e + 2.0 * m.mu_e) / m.rho),
        c_t: real_sqrt(m.mu_e / m.rho),
        c_s: real_sqrt((m.mu_e + m.mu_c) / m.rho),
        c_mp,
        c_ms: real_sqrt(m.curvature_g / rho_j),
        cutoff_frequency: real_sqrt(m.mu_c / rho_j).map(|s| 2.0 * s),
    })
}
