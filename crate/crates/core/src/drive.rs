//! Parametric driving that keeps the ions on their bistable orbits, and the
//! accumulated position shift from repeated collisions.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::trap::TrapConfig;
use crate::units::{tagged, Dim, Quantity};

/// Relative detuning `|omega_f - 2 omega_z| / omega_z` accepted as resonant.
pub const RESONANCE_TOLERANCE: f64 = 1e-6;
/// Target for [`PositionShift::f_min`].
pub const SHIFT_TARGET: f64 = 0.01;

/// Quartic stiffness dimension, J / m^4.
const QUARTIC: Dim = Dim::new(1, -2, -2, 0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DrivingConfig {
    /// Dimensionless drive amplitude.
    pub f: f64,
    /// Drive frequency, rad/s.
    pub omega_f: f64,
    /// Quartic nonlinearity, J/m^4.
    pub zeta: f64,
    pub resonant: bool,
}

fn detuning(omega_f: f64, omega_z: f64) -> f64 {
    (omega_f - 2.0 * omega_z).abs() / omega_z
}

impl DrivingConfig {
    /// Validates the inputs and flags resonance against `omega_z`.
    pub fn new(f: f64, omega_f: f64, zeta: f64, omega_z: f64) -> Result<Self> {
        if !(f >= 0.0 && f.is_finite()) {
            return Err(Error::invalid("f", "must be >= 0"));
        }
        if !(zeta > 0.0 && zeta.is_finite()) {
            return Err(Error::invalid("zeta", "must be positive"));
        }
        if !(omega_f > 0.0 && omega_f.is_finite()) {
            return Err(Error::invalid("omega_f", "must be positive"));
        }
        Ok(Self {
            f,
            omega_f,
            zeta,
            resonant: detuning(omega_f, omega_z) < RESONANCE_TOLERANCE,
        })
    }
}

fn omega_z_sq(cfg: &TrapConfig) -> Quantity {
    let w = tagged::frequency(cfg.omega_z);
    w * w
}

/// Amplitude `sqrt(2 f m omega_z^2 / 3 zeta)` of the stable oscillation, m.
pub fn bistable_amplitude(cfg: &TrapConfig, drive: &DrivingConfig) -> Result<f64> {
    let det = detuning(drive.omega_f, cfg.omega_z);
    if !(det < RESONANCE_TOLERANCE) {
        return Err(Error::OffResonance { detuning: det });
    }
    if !(drive.f > 0.0) {
        return Err(Error::ZeroDrive);
    }
    let zeta = Quantity::new(drive.zeta, QUARTIC);
    let amp =
        (tagged::mass(cfg.species.mass) * omega_z_sq(cfg) * (2.0 * drive.f) / (zeta * 3.0)).sqrt();
    debug_assert_eq!(amp.dim, Dim::LENGTH);
    Ok(amp.value)
}

/// Resonant drive whose stable amplitude is half the trapping distance:
/// `f = (3/8) zeta L^2 / (m omega_z^2)`, `omega_f = 2 omega_z`.
pub fn match_drive_to_separation(cfg: &TrapConfig, zeta: f64) -> Result<DrivingConfig> {
    if !(zeta > 0.0 && zeta.is_finite()) {
        return Err(Error::invalid("zeta", "must be positive"));
    }
    let l = tagged::length(cfg.length);
    let f = Quantity::new(zeta, QUARTIC) * l * l * 0.375
        / (tagged::mass(cfg.species.mass) * omega_z_sq(cfg));
    debug_assert!(f.dim.is_dimensionless());
    Ok(DrivingConfig {
        f: f.value,
        omega_f: 2.0 * cfg.omega_z,
        zeta,
        resonant: true,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PositionShift {
    /// `Delta L / L = 4 U / (f m omega_z^2 L^2)`.
    pub relative_shift: f64,
    /// Drive amplitude giving `Delta L / L = 0.01`.
    pub f_min: f64,
}

/// Relative position shift accumulated over a gate given the direct shift
/// `u_direct` (J).
pub fn position_shift_bound(
    cfg: &TrapConfig,
    drive: &DrivingConfig,
    u_direct: f64,
) -> Result<PositionShift> {
    if !(drive.f > 0.0) {
        return Err(Error::ZeroDrive);
    }
    if !u_direct.is_finite() {
        return Err(Error::invalid("U", "must be finite"));
    }
    let l = tagged::length(cfg.length);
    // 4 U / (m omega_z^2 L^2), the shift at unit drive.
    let per_unit_f =
        tagged::energy(u_direct) * 4.0 / (tagged::mass(cfg.species.mass) * omega_z_sq(cfg) * l * l);
    assert!(
        per_unit_f.dim.is_dimensionless(),
        "position shift must be dimensionless"
    );
    Ok(PositionShift {
        relative_shift: per_unit_f.value / drive.f,
        f_min: per_unit_f.value / SHIFT_TARGET,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::{design_point_alpha1, direct_interaction_renormalized};
    use crate::species::IonSpecies;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn yb() -> TrapConfig {
        design_point_alpha1(&IonSpecies::ytterbium_171(), 2.0 * PI * 10e6, 5.0).unwrap()
    }

    /// zeta giving drive amplitude f at the config's trapping distance.
    fn zeta_for(cfg: &TrapConfig, f: f64) -> f64 {
        f * cfg.species.mass * cfg.omega_z.powi(2) / (0.375 * cfg.length.powi(2))
    }

    #[test]
    fn matched_drive_round_trip() {
        let cfg = yb();
        let drive = match_drive_to_separation(&cfg, zeta_for(&cfg, 1e-3)).unwrap();
        assert_relative_eq!(drive.f, 1e-3, max_relative = 1e-12);
        assert_eq!(drive.omega_f, 2.0 * cfg.omega_z);
        let amp = bistable_amplitude(&cfg, &drive).unwrap();
        assert_relative_eq!(amp, cfg.length / 2.0, max_relative = 1e-12);
        assert_relative_eq!(amp, 51.5e-6, max_relative = 1e-3);
    }

    #[test]
    fn amplitude_scaling() {
        let cfg = yb();
        let d = DrivingConfig::new(1e-3, 2.0 * cfg.omega_z, 1e3, cfg.omega_z).unwrap();
        let d4 = DrivingConfig { f: 4e-3, ..d };
        assert_relative_eq!(
            bistable_amplitude(&cfg, &d4).unwrap(),
            2.0 * bistable_amplitude(&cfg, &d).unwrap(),
            max_relative = 1e-14
        );
        let m1 = match_drive_to_separation(&cfg, 1.0).unwrap();
        let m2 = match_drive_to_separation(&cfg, 2.0).unwrap();
        assert_relative_eq!(m2.f, 2.0 * m1.f, max_relative = 1e-15);
    }

    #[test]
    fn off_resonance_and_zero_drive() {
        let cfg = yb();
        let d =
            DrivingConfig::new(1e-3, 2.0 * cfg.omega_z * (1.0 + 1e-5), 1e3, cfg.omega_z).unwrap();
        assert!(!d.resonant);
        assert!(matches!(
            bistable_amplitude(&cfg, &d),
            Err(Error::OffResonance { .. })
        ));
        let z = DrivingConfig::new(0.0, 2.0 * cfg.omega_z, 1e3, cfg.omega_z).unwrap();
        assert!(matches!(
            bistable_amplitude(&cfg, &z),
            Err(Error::ZeroDrive)
        ));
        assert!(matches!(
            position_shift_bound(&cfg, &z, 1.0),
            Err(Error::ZeroDrive)
        ));
    }

    #[test]
    fn ytterbium_shift_bound() {
        let cfg = yb();
        let u = direct_interaction_renormalized(&cfg).unwrap();
        let drive = match_drive_to_separation(&cfg, zeta_for(&cfg, 1e-2)).unwrap();
        let s = position_shift_bound(&cfg, &drive, u).unwrap();
        assert_relative_eq!(s.relative_shift * drive.f, 1.4368e-4, max_relative = 1e-3);
        assert_relative_eq!(s.f_min, 1.4368e-2, max_relative = 1e-3);
        let none = position_shift_bound(&cfg, &drive, 0.0).unwrap();
        assert_eq!(none.relative_shift, 0.0);
    }

    #[test]
    fn shift_monotonicity() {
        let cfg = yb();
        let base = DrivingConfig::new(1e-2, 2.0 * cfg.omega_z, 1.0, cfg.omega_z).unwrap();
        let mut prev = f64::INFINITY;
        for k in 1..20 {
            let d = DrivingConfig {
                f: 1e-3 * k as f64,
                ..base
            };
            let s = position_shift_bound(&cfg, &d, 1e-27)
                .unwrap()
                .relative_shift;
            assert!(s < prev);
            prev = s;
        }
        let lo = position_shift_bound(&cfg, &base, 1e-27)
            .unwrap()
            .relative_shift;
        let hi = position_shift_bound(&cfg, &base, 2e-27)
            .unwrap()
            .relative_shift;
        assert!(hi > lo);
    }
}
