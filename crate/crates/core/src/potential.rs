//! Quasi-1D Coulomb interaction of two ions whose transverse motion is frozen
//! in the ground state, and the collision barrier parameter alpha.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::erfcx;
use crate::trap::TrapConfig;

/// Below this barrier ratio the ions stay classical and never overlap.
pub const CLASSICAL_ALPHA: f64 = 0.1;
/// Width of the band around alpha = 1 reported as marginal.
pub const MARGINAL_BAND: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EffectivePotentialParams {
    /// `Q^2 / (4 pi eps0 z0)`, J.
    pub coulomb_prefactor: f64,
    pub omega_perp: f64,
    /// m
    pub z0: f64,
}

impl EffectivePotentialParams {
    pub fn new(coulomb_prefactor: f64, omega_perp: f64, z0: f64) -> Result<Self> {
        if !(coulomb_prefactor > 0.0 && coulomb_prefactor.is_finite()) {
            return Err(Error::invalid("coulomb_prefactor", "must be positive"));
        }
        if !(omega_perp >= 1.0 && omega_perp.is_finite()) {
            return Err(Error::invalid("omega_perp", "must be >= 1"));
        }
        if !(z0 > 0.0 && z0.is_finite()) {
            return Err(Error::invalid("z0", "must be positive"));
        }
        Ok(Self {
            coulomb_prefactor,
            omega_perp,
            z0,
        })
    }

    pub fn from_trap(cfg: &TrapConfig) -> Self {
        Self {
            coulomb_prefactor: cfg.coulomb_scale(),
            omega_perp: cfg.omega_perp(),
            z0: cfg.z0(),
        }
    }

    /// Interaction range `z0 sqrt(2 / omega_perp)`, m.
    pub fn range(&self) -> f64 {
        self.z0 * (2.0 / self.omega_perp).sqrt()
    }
}

/// Effective potential in units of `Q^2 / (4 pi eps0 z0)` at separation
/// `r` (in units of z0).
#[inline]
pub fn v_eff_reduced(r: f64, omega_perp: f64) -> f64 {
    (0.5 * PI * omega_perp).sqrt() * erfcx((0.5 * omega_perp).sqrt() * r.abs())
}

/// Barrier height `V_eff(0)` in units of `Q^2 / (4 pi eps0 z0)`.
pub fn barrier_reduced(omega_perp: f64) -> f64 {
    (0.5 * PI * omega_perp).sqrt()
}

/// Effective interaction energy (J) at longitudinal separation `r_z` (m).
///
/// Finite for any finite separation; falls off as `Q^2 / (4 pi eps0 r_z)`.
pub fn v_eff(params: &EffectivePotentialParams, r_z: f64) -> Result<f64> {
    if !(r_z >= 0.0) || !r_z.is_finite() {
        return Err(Error::invalid("r_z", "separation must be finite and >= 0"));
    }
    Ok(params.coulomb_prefactor * v_eff_reduced(r_z / params.z0, params.omega_perp))
}

/// Short-range linearization `V_eff(0) (1 - sqrt(2 omega_perp / pi) r_z / z0)`,
/// meaningful for `r_z < z0 sqrt(2 / omega_perp)`.
pub fn v_eff_linearized(params: &EffectivePotentialParams, r_z: f64) -> f64 {
    let w = params.omega_perp;
    params.coulomb_prefactor * barrier_reduced(w) * (1.0 - (2.0 * w / PI).sqrt() * r_z / params.z0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// alpha < 0.1: the barrier keeps the ions apart.
    ClassicalBlocked,
    /// 0.1 <= alpha < 1: neither limit applies.
    Intermediate,
    /// alpha within 1% of 1.
    Marginal,
    /// alpha > 1: wave packets overlap during the collision.
    Colliding,
}

impl Regime {
    pub fn classify(alpha: f64) -> Self {
        if (alpha - 1.0).abs() <= MARGINAL_BAND {
            Regime::Marginal
        } else if alpha > 1.0 {
            Regime::Colliding
        } else if alpha < CLASSICAL_ALPHA {
            Regime::ClassicalBlocked
        } else {
            Regime::Intermediate
        }
    }
}

/// Kinetic energy of one ion at the trap centre, `m omega_z^2 L^2 / 4`,
/// relative to the barrier `V_eff(0)`.
pub fn alpha(cfg: &TrapConfig) -> f64 {
    let kinetic = 0.25 * cfg.species.mass * cfg.omega_z.powi(2) * cfg.length.powi(2);
    kinetic / (cfg.coulomb_scale() * barrier_reduced(cfg.omega_perp()))
}

pub fn regime(cfg: &TrapConfig) -> Regime {
    Regime::classify(alpha(cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::species::IonSpecies;
    use approx::assert_relative_eq;

    fn yb_params() -> EffectivePotentialParams {
        let cfg =
            TrapConfig::from_omega_perp(IonSpecies::ytterbium_171(), 2.0 * PI * 10e6, 5.0, 100e-6)
                .unwrap();
        EffectivePotentialParams::from_trap(&cfg)
    }

    #[test]
    fn value_at_contact_is_barrier() {
        let p = yb_params();
        assert_relative_eq!(
            v_eff(&p, 0.0).unwrap(),
            p.coulomb_prefactor * (PI * 5.0 / 2.0).sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn recovers_coulomb_law() {
        let p = yb_params();
        let r = 100.0 * p.range();
        let coulomb = p.coulomb_prefactor * p.z0 / r;
        assert_relative_eq!(v_eff(&p, r).unwrap(), coulomb, max_relative = 1e-2);
        let r = 1e3 * p.range();
        let coulomb = p.coulomb_prefactor * p.z0 / r;
        assert_relative_eq!(v_eff(&p, r).unwrap(), coulomb, max_relative = 1e-3);
    }

    #[test]
    fn finite_far_away() {
        let p = yb_params();
        let v = v_eff(&p, 1e6 * p.z0).unwrap();
        assert!(v.is_finite() && v > 0.0);
        assert!(v_eff(&p, -1.0).is_err());
    }

    #[test]
    fn positive_decreasing_convex_on_log_grid() {
        let p = yb_params();
        let rs: Vec<f64> = (0..400)
            .map(|i| p.z0 * 1e-3 * 10f64.powf(i as f64 * 9.0 / 399.0))
            .collect();
        let vs: Vec<f64> = rs.iter().map(|&r| v_eff(&p, r).unwrap()).collect();
        for i in 0..vs.len() {
            assert!(vs[i] > 0.0);
            if i > 0 {
                assert!(vs[i] < vs[i - 1]);
            }
            if i > 0 && i + 1 < vs.len() {
                // Convexity on a non-uniform grid: slopes increase.
                let s1 = (vs[i] - vs[i - 1]) / (rs[i] - rs[i - 1]);
                let s2 = (vs[i + 1] - vs[i]) / (rs[i + 1] - rs[i]);
                assert!(s2 >= s1, "not convex at {}", rs[i]);
            }
        }
    }

    #[test]
    fn linearization_matches_slope_at_origin() {
        let p = yb_params();
        let h = 1e-6 * p.z0;
        let exact = v_eff(&p, h).unwrap();
        assert_relative_eq!(v_eff_linearized(&p, h), exact, max_relative = 1e-10);
    }

    #[test]
    fn alpha_scales_with_length_squared() {
        let cfg =
            TrapConfig::from_omega_perp(IonSpecies::beryllium_9(), 2.0 * PI * 10e6, 5.0, 50e-6)
                .unwrap();
        let doubled = cfg.with_length(100e-6).unwrap();
        assert_relative_eq!(alpha(&doubled), 4.0 * alpha(&cfg), max_relative = 1e-14);
    }

    #[test]
    fn regime_thresholds() {
        assert_eq!(Regime::classify(0.05), Regime::ClassicalBlocked);
        assert_eq!(Regime::classify(0.5), Regime::Intermediate);
        assert_eq!(Regime::classify(1.0), Regime::Marginal);
        assert_eq!(Regime::classify(3.0), Regime::Colliding);
    }
}
