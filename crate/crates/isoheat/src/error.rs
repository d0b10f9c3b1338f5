use thiserror::Error;

/// Errors produced by the domain, spectral and Sturm-Liouville machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    /// Boundary-condition pattern outside the closed-form families.
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    /// A formula was requested for a configuration it is not stated for.
    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    #[error("invalid corner angle {gamma}: must satisfy 0 < gamma <= pi")]
    InvalidAngle { gamma: f64 },

    #[error("invalid scale ratio {alpha}")]
    InvalidRatio { alpha: f64 },

    #[error("time must be positive, got {t}")]
    NonpositiveTime { t: f64 },

    #[error("ill-conditioned fit: {0}")]
    IllConditionedFit(String),

    #[error("degenerate ground state: lambda_1 = {lambda1} has multiplicity {multiplicity}")]
    DegenerateGroundState { lambda1: f64, multiplicity: usize },

    #[error("window out of range: {0}")]
    WindowOutOfRange(String),

    #[error("invalid potential: {0}")]
    InvalidPotential(String),

    #[error("solver failure: {0}")]
    SolverFailure(String),

    #[error("eigenvalue bracket failure for index {index}: {detail}")]
    BracketFailure { index: usize, detail: String },

    #[error("tolerance not met: {0}")]
    ToleranceNotMet(String),

    #[error("unknown claim: {0}")]
    UnknownClaim(String),
}

pub type Result<T> = std::result::Result<T, Error>;
