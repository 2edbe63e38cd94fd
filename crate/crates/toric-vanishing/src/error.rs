//! Error and result types shared across the crate.

use thiserror::Error;

/// Errors produced by the geometry, arithmetic and verification layers.
#[derive(Debug, Error)]
pub enum Error {
    /// Input data is malformed or violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The request is valid but outside the supported problem sizes.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A fan failed structural validation.
    #[error("invalid fan: {0}")]
    InvalidFan(String),

    /// A polyhedron that was required to be bounded is not.
    #[error("polyhedron is unbounded: {0}")]
    Unbounded(String),

    /// A divisor is not Q-Cartier, so no Cartier data exists at any multiple.
    #[error("divisor is not Q-Cartier: {0}")]
    NotQCartier(String),

    /// A verification routine refused to run because a theorem hypothesis
    /// fails; the message names the violated hypothesis.
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    /// An internal cross-check failed.  This always indicates a bug in this
    /// crate, never a counterexample to a theorem.
    #[error("internal self-check failed (implementation bug): {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
