//! Collision-induced level shifts of the symmetric and antisymmetric two-ion
//! states, the exchange coupling `J = (V+ - V-) / 2` and the direct shift
//! `U = (V+ + V-) / 2`.
//!
//! Three routes are provided:
//! * [`level_shifts_quadrature`]: time-averaged expectation values reduced to
//!   one-dimensional integrals over the relative coordinate;
//! * [`level_shifts_bruteforce_oracle`]: the same averages on a raw
//!   `(z1, z2, t)` tensor grid, kept as an independent check;
//! * closed-form long-distance and classical expressions in [`analytic`].

pub mod analytic;
pub mod interference;
pub mod oracle;
pub mod shifts;

use serde::Serialize;

use crate::error::{Error, Result};

pub use analytic::{
    classical_direct_interaction, coupling_asymptotic, coupling_jld2, design_point_alpha1,
    design_point_alpha1_at_length, direct_interaction_renormalized, exchange_from_interference,
    exchange_long_distance, interaction_time_estimate, restriction_product,
    validity_ratio_closed_form, InteractionTime, ASYMPTOTIC_INTERFERENCE,
};
pub use interference::{interference_term, interference_term_reduced};
pub use oracle::{level_shifts_bruteforce_oracle, BruteForceGrid};
pub use shifts::{level_shifts_quadrature, level_shifts_reduced, ReducedShifts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Quadrature,
    Asymptotic,
    Classical,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::Asymptotic => "asymptotic",
            Method::Classical => "classical",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "quadrature" => Ok(Method::Quadrature),
            "asymptotic" => Ok(Method::Asymptotic),
            "classical" => Ok(Method::Classical),
            other => Err(Error::invalid(
                "method",
                format!("`{other}` is not one of quadrature, asymptotic, classical"),
            )),
        }
    }
}

/// Level shifts and couplings, all energies in J.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouplingResult {
    pub v_plus: f64,
    pub v_minus: f64,
    pub exchange_j: f64,
    pub direct_u: f64,
    /// Dimensionless interference factor relating J to its `L^-3` envelope.
    pub interference_a: f64,
    pub method: Method,
    pub warnings: Vec<String>,
}

impl CouplingResult {
    /// Builds the result from `U` and `J`; `V+-` follow as `U +- J`.
    pub fn from_direct_exchange(
        direct_u: f64,
        exchange_j: f64,
        interference_a: f64,
        method: Method,
    ) -> Self {
        Self {
            v_plus: direct_u + exchange_j,
            v_minus: direct_u - exchange_j,
            exchange_j,
            direct_u,
            interference_a,
            method,
            warnings: Vec::new(),
        }
    }
}

/// Accuracy controls for [`level_shifts_quadrature`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSettings {
    /// Relative tolerance of the time averages, in (0, 1e-3].
    pub rel_tol: f64,
    /// Absolute tolerance, J.
    pub abs_tol: f64,
    /// Number of initial panels the quarter period is cut into before
    /// adaptive refinement; even and at least 16.
    pub time_nodes: usize,
    /// Gaussian envelopes are cut off this many z0 from their centre.
    pub spatial_truncation: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 0.0,
            time_nodes: 16,
            spatial_truncation: 9.0,
        }
    }
}

impl QuadratureSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-3) {
            return Err(Error::invalid("rel_tol", "must lie in (0, 1e-3]"));
        }
        if !(self.abs_tol >= 0.0) {
            return Err(Error::invalid("abs_tol", "must be >= 0"));
        }
        if self.time_nodes < 16 || !self.time_nodes.is_multiple_of(2) {
            return Err(Error::invalid("time_nodes", "must be even and >= 16"));
        }
        // exp(-T^2 / 2) must be below 1e-16 for the truncation to be harmless.
        if !(self.spatial_truncation >= 8.6 && self.spatial_truncation.is_finite()) {
            return Err(Error::invalid("spatial_truncation", "must be >= 8.6 z0"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn settings_validation() {
        assert!(QuadratureSettings::default().validate().is_ok());
        let bad = QuadratureSettings {
            time_nodes: 17,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = QuadratureSettings {
            rel_tol: 1e-2,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn result_identities_hold_exactly() {
        let r = CouplingResult::from_direct_exchange(3.5e-30, 1.25e-32, 1.1, Method::Quadrature);
        assert!((r.v_plus - r.v_minus - 2.0 * r.exchange_j).abs() <= 1e-15 * r.v_plus);
        assert_eq!(r.v_plus, r.direct_u + r.exchange_j);
        assert_eq!(r.v_minus, r.direct_u - r.exchange_j);
        assert_eq!("Asymptotic".parse::<Method>().unwrap(), Method::Asymptotic);
        assert!("fast".parse::<Method>().is_err());
    }
}
