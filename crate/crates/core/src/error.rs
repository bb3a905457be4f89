use thiserror::Error;

/// Errors raised by the numerical engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown species `{name}`; registered species: {}", registered.join(", "))]
    UnknownSpecies {
        name: String,
        registered: Vec<String>,
    },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("degenerate overlap: 1 - S^2 = {one_minus_s2:e} (ions indistinguishable in position)")]
    DegenerateOverlap { one_minus_s2: f64 },

    #[error("invalid regime: {0}")]
    InvalidRegime(String),

    #[error("quadrature did not converge: achieved relative error {achieved_rel:e} after {intervals} intervals")]
    NonConvergence { achieved_rel: f64, intervals: usize },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("exchange coupling must be positive, got {0:e} J")]
    ZeroCoupling(f64),

    #[error("gate does not have the collision-gate structure (residual {residual:e})")]
    GateStructure { residual: f64 },

    #[error("parametric drive is off resonance: |omega_f - 2 omega_z| / omega_z = {detuning:e}")]
    OffResonance { detuning: f64 },

    #[error("drive amplitude f must be positive")]
    ZeroDrive,

    #[error("qubit `{0}` is not present in the trap array")]
    UnknownQubit(String),

    #[error("qubits `{0}` and `{1}` share a trap; a remote gate needs two distinct traps")]
    SameTrap(String, String),

    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
