//! Merged-trap geometry and the oscillating coherent-state pair.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::species::IonSpecies;
use crate::units::{ReducedUnits, CODATA_2018};

/// Confinement ratio below which the quasi-1D picture is questionable.
pub const QUASI_1D_WARN_RATIO: f64 = 3.0;

/// Two ions of one species in a merged trap.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrapConfig {
    pub species: IonSpecies,
    /// Longitudinal trap frequency, rad/s.
    pub omega_z: f64,
    /// Transverse trap frequency, rad/s.
    pub omega_xy: f64,
    /// Trapping distance: initial separation of the two ions, m.
    pub length: f64,
}

impl TrapConfig {
    pub fn new(species: IonSpecies, omega_z: f64, omega_xy: f64, length: f64) -> Result<Self> {
        if !(omega_z.is_finite() && omega_z > 0.0) {
            return Err(Error::invalid("omega_z", "must be positive"));
        }
        if !(omega_xy.is_finite() && omega_xy >= omega_z) {
            return Err(Error::invalid(
                "omega_xy",
                format!("must be >= omega_z ({omega_xy:e} < {omega_z:e})"),
            ));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::invalid("L", "trapping distance must be positive"));
        }
        Ok(Self {
            species,
            omega_z,
            omega_xy,
            length,
        })
    }

    /// Builds a config from the confinement ratio instead of omega_z.
    pub fn from_omega_perp(
        species: IonSpecies,
        omega_xy: f64,
        omega_perp: f64,
        length: f64,
    ) -> Result<Self> {
        if !(omega_perp.is_finite() && omega_perp >= 1.0) {
            return Err(Error::invalid("omega_perp", "must be >= 1"));
        }
        Self::new(species, omega_xy / omega_perp, omega_xy, length)
    }

    /// Same trap, different trapping distance.
    pub fn with_length(&self, length: f64) -> Result<Self> {
        Self::new(self.species.clone(), self.omega_z, self.omega_xy, length)
    }

    pub fn omega_perp(&self) -> f64 {
        self.omega_xy / self.omega_z
    }

    /// Coherent-state length `sqrt(hbar / m omega_z)`, m.
    pub fn z0(&self) -> f64 {
        (CODATA_2018.hbar / (self.species.mass * self.omega_z)).sqrt()
    }

    pub fn reduced_units(&self) -> ReducedUnits {
        ReducedUnits::new(self.species.mass, self.omega_z)
    }

    /// `L / z0`.
    pub fn reduced_length(&self) -> f64 {
        self.length / self.z0()
    }

    /// Coulomb energy at one coherent-state length, `Q^2 / (4 pi eps0 z0)`, J.
    pub fn coulomb_scale(&self) -> f64 {
        self.species.coulomb_strength() / self.z0()
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.omega_perp() < QUASI_1D_WARN_RATIO {
            out.push(format!(
                "omega_perp = {:.3} < {QUASI_1D_WARN_RATIO}: transverse motion is not well frozen",
                self.omega_perp()
            ));
        }
        out
    }
}

/// `(z0, omega_perp)` for a trap.
pub fn derived_scales(cfg: &TrapConfig) -> (f64, f64) {
    (cfg.z0(), cfg.omega_perp())
}

/// Position/momentum parameters of the two counter-oscillating coherent
/// states at time t. The ions sit at `-x_t` and `+x_t` with momenta `+p_t`
/// and `-p_t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherentPairState {
    /// m
    pub x_t: f64,
    /// kg m / s
    pub p_t: f64,
    /// `|<phi|varphi>|`, independent of t.
    pub overlap_magnitude: f64,
}

/// Single-ion overlap `S = exp(-L^2 / (4 z0^2))` for a reduced length `L / z0`.
pub fn overlap_from_reduced_length(reduced_length: f64) -> f64 {
    (-0.25 * reduced_length * reduced_length).exp()
}

pub fn coherent_pair_at(cfg: &TrapConfig, t: f64) -> Result<CoherentPairState> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::invalid("t", "must be a non-negative time"));
    }
    let phase = cfg.omega_z * t;
    let half = 0.5 * cfg.length;
    Ok(CoherentPairState {
        x_t: half * phase.cos(),
        p_t: cfg.species.mass * cfg.omega_z * half * phase.sin(),
        overlap_magnitude: overlap_from_reduced_length(cfg.reduced_length()),
    })
}

/// Normalization factors of the symmetric and antisymmetric two-ion states,
/// `n_pm = 1 / sqrt(2 (1 +- S^2))`.
pub fn symmetrization_norms(cfg: &TrapConfig) -> Result<(f64, f64)> {
    symmetrization_norms_reduced(cfg.reduced_length())
}

pub fn symmetrization_norms_reduced(reduced_length: f64) -> Result<(f64, f64)> {
    // S^2 = exp(-L^2 / 2 z0^2); 1 - S^2 via exp_m1 keeps digits when S -> 1.
    let exponent = -0.5 * reduced_length * reduced_length;
    let s2 = exponent.exp();
    let one_minus = -exponent.exp_m1();
    if one_minus < 1e-15 {
        return Err(Error::DegenerateOverlap {
            one_minus_s2: one_minus,
        });
    }
    Ok((
        1.0 / (2.0 * (1.0 + s2)).sqrt(),
        1.0 / (2.0 * one_minus).sqrt(),
    ))
}
