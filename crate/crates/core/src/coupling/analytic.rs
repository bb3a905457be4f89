//! Closed-form couplings: long-distance exchange, the alpha = 1 design point,
//! renormalised-charge direct shifts and the interaction-time estimate.

use std::f64::consts::{E, PI};

use serde::Serialize;

use super::{CouplingResult, Method};
use crate::error::{Error, Result};
use crate::potential::{alpha, CLASSICAL_ALPHA};
use crate::species::IonSpecies;
use crate::trap::{TrapConfig, QUASI_1D_WARN_RATIO};
use crate::units::CODATA_2018;

/// Long-distance limit of the interference factor, `2 / sqrt(pi)`.
pub const ASYMPTOTIC_INTERFERENCE: f64 = std::f64::consts::FRAC_2_SQRT_PI;
/// `L / (z0 sqrt(omega_perp / 2))` below which the long-distance formulas
/// are flagged.
pub const ASYMPTOTIC_MIN_RATIO: f64 = 10.0;

/// `J = Q^2 hbar omega_xy / (2 pi^2 eps0 m omega_z^2 L^3)`.
pub fn exchange_long_distance(cfg: &TrapConfig) -> f64 {
    let c = CODATA_2018;
    let q2 = cfg.species.charge * cfg.species.charge;
    q2 * c.hbar * cfg.omega_xy
        / (2.0
            * PI
            * PI
            * c.vacuum_permittivity
            * cfg.species.mass
            * cfg.omega_z.powi(2)
            * cfg.length.powi(3))
}

/// Exchange coupling for a given interference factor,
/// `J = (Q^2 / 4 pi eps0 z0) (omega_perp / sqrt(pi)) (z0 / L)^3 A`.
pub fn exchange_from_interference(cfg: &TrapConfig, a: f64) -> f64 {
    cfg.coulomb_scale() * cfg.omega_perp() / PI.sqrt() * cfg.reduced_length().powi(-3) * a
}

/// Long-distance exchange and renormalised direct shift.
pub fn coupling_asymptotic(cfg: &TrapConfig) -> Result<CouplingResult> {
    let j = exchange_long_distance(cfg);
    let u = direct_interaction_renormalized(cfg)?;
    let mut out =
        CouplingResult::from_direct_exchange(u, j, ASYMPTOTIC_INTERFERENCE, Method::Asymptotic);
    let ratio = cfg.reduced_length() / (0.5 * cfg.omega_perp()).sqrt();
    if ratio <= ASYMPTOTIC_MIN_RATIO {
        out.warnings.push(format!(
            "L / (z0 sqrt(omega_perp/2)) = {ratio:.3} <= {ASYMPTOTIC_MIN_RATIO}: long-distance formula is unreliable"
        ));
    }
    out.warnings.extend(cfg.warnings());
    Ok(out)
}

/// `(mu hbar omega_xy^3 / 8 pi)^(1/4)`, the factor linking omega_perp and L
/// at alpha = 1.
fn design_factor(species: &IonSpecies, omega_xy: f64) -> f64 {
    (species.mass * CODATA_2018.hbar * omega_xy.powi(3) / (8.0 * PI)).powf(0.25)
}

fn check_omega_xy(omega_xy: f64) -> Result<()> {
    if !(omega_xy.is_finite() && omega_xy > 0.0) {
        return Err(Error::invalid("omega_xy", "must be positive"));
    }
    Ok(())
}

/// `omega_perp J` at the alpha = 1 design point,
/// `(Q^2 / 8 pi eps0)^(-1/2) (hbar / 2 pi)^(7/4) (omega_xy^5 / m)^(1/4)`.
/// Independent of L.
pub fn restriction_product(species: &IonSpecies, omega_xy: f64) -> Result<f64> {
    check_omega_xy(omega_xy)?;
    let c = CODATA_2018;
    let q2 = species.charge * species.charge;
    Ok((q2 / (8.0 * PI * c.vacuum_permittivity)).powf(-0.5)
        * (c.hbar / (2.0 * PI)).powf(1.75)
        * (omega_xy.powi(5) / species.mass).powf(0.25))
}

/// Trap with `alpha = 1` for a target confinement ratio:
/// `L = omega_perp sqrt(Q^2 / 4 pi eps0) / (m hbar omega_xy^3 / 8 pi)^(1/4)`.
pub fn design_point_alpha1(
    species: &IonSpecies,
    omega_xy: f64,
    omega_perp: f64,
) -> Result<TrapConfig> {
    check_omega_xy(omega_xy)?;
    if !(omega_perp.is_finite() && omega_perp >= QUASI_1D_WARN_RATIO) {
        return Err(Error::invalid("omega_perp", "design target must be >= 3"));
    }
    let length = omega_perp * species.coulomb_strength().sqrt() / design_factor(species, omega_xy);
    TrapConfig::from_omega_perp(species.clone(), omega_xy, omega_perp, length)
}

/// Trap with `alpha = 1` at a fixed trapping distance; omega_perp follows.
pub fn design_point_alpha1_at_length(
    species: &IonSpecies,
    omega_xy: f64,
    length: f64,
) -> Result<TrapConfig> {
    check_omega_xy(omega_xy)?;
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::invalid("L", "must be positive"));
    }
    let omega_perp = design_factor(species, omega_xy) * length / species.coulomb_strength().sqrt();
    if omega_perp < 1.0 {
        return Err(Error::InvalidRegime(format!(
            "alpha = 1 at L = {length:e} m needs omega_perp = {omega_perp:.4} < 1"
        )));
    }
    TrapConfig::from_omega_perp(species.clone(), omega_xy, omega_perp, length)
}

/// `J = (hbar / 2 pi)^(3/2) sqrt(omega_xy / m) (2 / alpha) / L`.
pub fn coupling_jld2(cfg: &TrapConfig) -> f64 {
    let c = CODATA_2018;
    (c.hbar / (2.0 * PI)).powf(1.5) * (cfg.omega_xy / cfg.species.mass).sqrt() * 2.0
        / (alpha(cfg) * cfg.length)
}

/// `Q~^2 / (4 pi eps0 L)` given the argument of the charge logarithm.
fn renormalized_energy(cfg: &TrapConfig, log_arg: f64) -> Result<f64> {
    if !(log_arg > 1.0) {
        return Err(Error::InvalidRegime(format!(
            "renormalised charge log argument {log_arg:.6} <= 1"
        )));
    }
    Ok(cfg.species.coulomb_strength() * (2.0 / PI) * log_arg.ln() / cfg.length)
}

/// Direct shift with the charge renormalised by the transverse spread,
/// `Q~^2 = Q^2 (2/pi) ln(2^(3/2) e^(gamma/2) sqrt(omega_perp) L / z0)`.
pub fn direct_interaction_renormalized(cfg: &TrapConfig) -> Result<f64> {
    let arg = 2f64.powf(1.5)
        * (0.5 * CODATA_2018.euler_mascheroni).exp()
        * cfg.omega_perp().sqrt()
        * cfg.reduced_length();
    renormalized_energy(cfg, arg)
}

/// Barrier-blocked ions: no exchange, direct shift from
/// `Q~^2 = Q^2 (2/pi) ln(2 pi e^2 eps0 m omega_z^2 L^3 / Q^2)`.
pub fn classical_direct_interaction(cfg: &TrapConfig) -> Result<CouplingResult> {
    let a = alpha(cfg);
    if a >= CLASSICAL_ALPHA {
        return Err(Error::InvalidRegime(format!(
            "alpha = {a:.4} >= {CLASSICAL_ALPHA}: ions are not barrier-blocked"
        )));
    }
    let c = CODATA_2018;
    let s = &cfg.species;
    let arg = 2.0
        * PI
        * E
        * E
        * c.vacuum_permittivity
        * s.mass
        * cfg.omega_z.powi(2)
        * cfg.length.powi(3)
        / (s.charge * s.charge);
    let u = renormalized_energy(cfg, arg)?;
    Ok(CouplingResult::from_direct_exchange(
        u,
        0.0,
        0.0,
        Method::Classical,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InteractionTime {
    /// s
    pub delta_tau: f64,
    /// `delta_tau omega_z / 2 pi`
    pub validity_ratio: f64,
    /// `pi^(-3/4) (2 / omega_perp)^(1/2) z0 / L`, equal to the ratio at alpha = 1.
    pub closed_form_ratio: f64,
    /// Perturbative treatment is trusted when the ratio is below 0.1.
    pub valid: bool,
}

/// Closed-form validity ratio for reduced length `L / z0`.
pub fn validity_ratio_closed_form(reduced_length: f64, omega_perp: f64) -> f64 {
    PI.powf(-0.75) * (2.0 / omega_perp).sqrt() / reduced_length
}

/// Time the ions spend within the interaction range,
/// `(Q^2 / 4 pi eps0)^(-1/2) m^(1/2) z0^(3/2) (2 / omega_perp)^(3/4)`.
pub fn interaction_time_estimate(cfg: &TrapConfig) -> InteractionTime {
    let wp = cfg.omega_perp();
    let delta_tau = cfg.species.coulomb_strength().powf(-0.5)
        * cfg.species.mass.sqrt()
        * cfg.z0().powf(1.5)
        * (2.0 / wp).powf(0.75);
    let validity_ratio = delta_tau * cfg.omega_z / (2.0 * PI);
    InteractionTime {
        delta_tau,
        validity_ratio,
        closed_form_ratio: validity_ratio_closed_form(cfg.reduced_length(), wp),
        valid: validity_ratio < 0.1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const TWO_PI_10MHZ: f64 = 2.0 * PI * 10e6;

    fn hbar() -> f64 {
        CODATA_2018.hbar
    }

    fn yb_design() -> TrapConfig {
        design_point_alpha1(&IonSpecies::ytterbium_171(), TWO_PI_10MHZ, 5.0).unwrap()
    }

    #[test]
    fn ytterbium_design_point() {
        let cfg = yb_design();
        assert_relative_eq!(cfg.length, 103.01e-6, max_relative = 1e-3);
        assert_relative_eq!(alpha(&cfg), 1.0, max_relative = 1e-8);
        let j = coupling_asymptotic(&cfg).unwrap().exchange_j / hbar();
        assert_relative_eq!(j, 188.348, max_relative = 1e-4);
    }

    #[test]
    fn beryllium_design_point() {
        let cfg = design_point_alpha1(&IonSpecies::beryllium_9(), TWO_PI_10MHZ, 5.0).unwrap();
        assert_relative_eq!(cfg.length, 214.97e-6, max_relative = 1e-3);
        assert_relative_eq!(
            exchange_long_distance(&cfg) / hbar(),
            393.06,
            max_relative = 1e-4
        );
    }

    #[test]
    fn electron_design_point() {
        let cfg = design_point_alpha1_at_length(&IonSpecies::electron(), 2.0 * PI * 100e9, 10e-3)
            .unwrap();
        assert_relative_eq!(cfg.omega_perp(), 20544.0, max_relative = 1e-4);
        assert_relative_eq!(alpha(&cfg), 1.0, max_relative = 1e-8);
        assert_relative_eq!(coupling_jld2(&cfg) / hbar(), 108_303.8, max_relative = 1e-4);
    }

    #[test]
    fn jld2_equals_long_distance_formula() {
        let cfg = yb_design();
        for l in [50e-6, 103e-6, 400e-6] {
            let c = cfg.with_length(l).unwrap();
            assert_relative_eq!(
                coupling_jld2(&c),
                exchange_long_distance(&c),
                max_relative = 1e-10
            );
        }
        let doubled = cfg.with_length(cfg.length * 2f64.sqrt()).unwrap();
        // alpha doubles; at fixed alpha J ~ 1/L, so compare through the formula.
        assert_relative_eq!(alpha(&doubled), 2.0, max_relative = 1e-12);
    }

    #[test]
    fn interference_form_reduces_to_long_distance() {
        let cfg = yb_design();
        assert_relative_eq!(
            exchange_from_interference(&cfg, ASYMPTOTIC_INTERFERENCE),
            exchange_long_distance(&cfg),
            max_relative = 1e-12
        );
    }

    #[test]
    fn restriction_product_values_and_scaling() {
        let yb = IonSpecies::ytterbium_171();
        let be = IonSpecies::beryllium_9();
        assert_relative_eq!(
            restriction_product(&yb, TWO_PI_10MHZ).unwrap() / hbar(),
            941.74,
            max_relative = 1e-4
        );
        assert_relative_eq!(
            restriction_product(&be, TWO_PI_10MHZ).unwrap() / hbar(),
            1965.3,
            max_relative = 1e-4
        );
        let base = restriction_product(&yb, 1e6).unwrap();
        assert_relative_eq!(
            restriction_product(&yb, 16e6).unwrap(),
            32.0 * base,
            max_relative = 1e-12
        );
        let cfg = yb_design();
        assert_relative_eq!(
            cfg.omega_perp() * exchange_long_distance(&cfg),
            restriction_product(&yb, TWO_PI_10MHZ).unwrap(),
            max_relative = 1e-8
        );
    }

    #[test]
    fn renormalized_direct_shift() {
        let cfg = yb_design();
        let u = direct_interaction_renormalized(&cfg).unwrap();
        let arg = 2f64.powf(1.5)
            * (0.5 * CODATA_2018.euler_mascheroni).exp()
            * 5f64.sqrt()
            * cfg.reduced_length();
        assert_relative_eq!(arg, 159_906.0, max_relative = 1e-4);
        let doubled =
            direct_interaction_renormalized(&cfg.with_length(2.0 * cfg.length).unwrap()).unwrap();
        // U(2L) / U(L) = (1 + ln 2 / ln arg) / 2: a little above one half.
        let ratio = doubled / u;
        assert_relative_eq!(
            ratio,
            0.5 * (1.0 + 2f64.ln() / arg.ln()),
            max_relative = 1e-12
        );
        assert!(ratio > 0.5 && ratio < 0.55);
        // Log argument of one: L / z0 = 1 / (2^(3/2) e^(gamma/2) sqrt(omega_perp)).
        let l1 = 1.0 / (2f64.powf(1.5) * (0.5 * CODATA_2018.euler_mascheroni).exp() * 5f64.sqrt());
        let tiny = cfg.with_length(0.999 * l1 * cfg.z0()).unwrap();
        assert!(matches!(
            direct_interaction_renormalized(&tiny),
            Err(Error::InvalidRegime(_))
        ));
    }

    #[test]
    fn classical_shift_has_no_exchange() {
        let cfg = yb_design();
        // alpha ~ L^2: alpha = 0.05 at L = sqrt(0.05) L_design.
        let blocked = cfg.with_length(cfg.length * 0.05f64.sqrt()).unwrap();
        let r = classical_direct_interaction(&blocked).unwrap();
        assert_eq!(r.exchange_j, 0.0);
        assert_eq!(r.method, Method::Classical);
        let c = CODATA_2018;
        let s = &blocked.species;
        let arg = 2.0
            * PI
            * E
            * E
            * c.vacuum_permittivity
            * s.mass
            * blocked.omega_z.powi(2)
            * blocked.length.powi(3)
            / (s.charge * s.charge);
        let expected = s.charge.powi(2) * (2.0 / PI) * arg.ln()
            / (4.0 * PI * c.vacuum_permittivity * blocked.length);
        assert_relative_eq!(r.direct_u, expected, max_relative = 1e-12);
        assert!(classical_direct_interaction(&cfg).is_err());
    }

    #[test]
    fn interaction_time_ratio() {
        assert_relative_eq!(
            validity_ratio_closed_form(100.0, 5.0),
            2.68e-3,
            max_relative = 2e-3
        );
        let cfg = yb_design();
        let t = interaction_time_estimate(&cfg);
        assert!(t.valid);
        assert_relative_eq!(t.validity_ratio, t.closed_form_ratio, max_relative = 1e-8);
        let far = interaction_time_estimate(&cfg.with_length(2.0 * cfg.length).unwrap());
        assert_relative_eq!(
            far.closed_form_ratio,
            0.5 * t.closed_form_ratio,
            max_relative = 1e-12
        );
    }
}
