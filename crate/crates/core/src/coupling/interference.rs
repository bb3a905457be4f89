//! Interference factor `A(L/z0, omega_perp)` relating the exchange coupling
//! to its `L^-3` envelope.
//!
//! The relative-momentum factor `cos(2 p(t) z / hbar)` is averaged over the
//! collision period together with the overlap envelope, and the prefactor is
//! normalised so that `A -> 2 / sqrt(pi)` at long distance:
//!
//! `A = l^3 sqrt(pi / omega_perp) (2/pi) int_0^(pi/2) exp(-l^2 sin^2 s / 2)
//!      I(l cos s) ds`,
//! `I(k) = int_0^inf exp((omega_perp - 1) z^2 / 2) erfc(sqrt(omega_perp / 2) z) cos(k z) dz`.

use std::f64::consts::PI;

use super::shifts::{exchange_mean, Kernel};
use super::QuadratureSettings;
use crate::error::{Error, Result};
use crate::potential::alpha;
use crate::special::erfcx;
use crate::trap::TrapConfig;

/// Integrand of `I(k)` at `z` (in z0); equals 1 at `z = 0`.
pub fn interference_integrand(z: f64, k: f64, omega_perp: f64) -> f64 {
    // exp((w - 1) z^2 / 2) erfc(a z) = exp(-z^2 / 2) erfcx(a z), a^2 = w / 2
    (-0.5 * z * z).exp() * erfcx((0.5 * omega_perp).sqrt() * z) * (k * z).cos()
}

/// `l^3 sqrt(pi / omega_perp)`.
pub fn interference_prefactor(l: f64, omega_perp: f64) -> f64 {
    l.powi(3) * (PI / omega_perp).sqrt()
}

/// `A` for reduced length `l = L / z0`, to relative tolerance `rel_tol`.
pub fn interference_term_reduced(l: f64, omega_perp: f64, rel_tol: f64) -> Result<f64> {
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::invalid("L/z0", "must be positive"));
    }
    if !(omega_perp.is_finite() && omega_perp >= 1.0) {
        return Err(Error::invalid("omega_perp", "must be >= 1"));
    }
    let settings = QuadratureSettings {
        rel_tol,
        ..QuadratureSettings::default()
    };
    settings.validate()?;
    let kernel = Kernel::new(omega_perp, settings.spatial_truncation, rel_tol);
    // The exchange kernel is 2 int g v cos = sqrt(omega_perp) I(k).
    let mean = exchange_mean(&kernel, l, &settings, 0.0)?;
    Ok(interference_prefactor(l, omega_perp) * mean / omega_perp.sqrt())
}

/// `A` for a trap; the collision must clear the barrier (alpha > 1).
pub fn interference_term(cfg: &TrapConfig) -> Result<f64> {
    let a = alpha(cfg);
    if a <= 1.0 {
        return Err(Error::InvalidRegime(format!(
            "alpha = {a:.4} <= 1: interference factor needs overlapping packets"
        )));
    }
    interference_term_reduced(cfg.reduced_length(), cfg.omega_perp(), 1e-10)
}
