use thiserror::Error;

/// Errors produced by the kinematics, state, and resource layers.
#[derive(Debug, Error)]
pub enum Error {
    /// An input lies outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical precondition (on-shell, unit norm, ...) is violated by more
    /// than its tolerance. Carries the measured violation.
    #[error("precision error: {context} (violation {violation:.3e}, tolerance {tolerance:.1e})")]
    Precision {
        context: String,
        violation: f64,
        tolerance: f64,
    },

    /// A Wigner transform does not have the expected y-rotation block layout.
    #[error("structure error: {0}")]
    Structure(String),

    /// The requested scenario collapses (e.g. the two momentum branches merge).
    #[error("degenerate scenario: {0}")]
    DegenerateScenario(String),

    /// A computed quantity disagrees with its closed form or invariant beyond
    /// the hard failure threshold.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// A party name does not occur in the state.
    #[error("unknown party label `{0}`")]
    UnknownParty(String),

    /// State construction received inconsistent or unusable branch data.
    #[error("invalid state construction: {0}")]
    InvalidState(String),
}

pub type Result<T> = std::result::Result<T, Error>;
