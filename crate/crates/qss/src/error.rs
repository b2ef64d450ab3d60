//! Crate-wide error type.

use thiserror::Error;

use crate::quantum::Amplitude;

/// Errors produced by the simulator.
#[derive(Debug, Error)]
pub enum Error {
    /// Qubit count outside the dense state-vector range (2..=16).
    #[error("qubit count {0} is outside the supported dense range 2..=16")]
    QubitCount(usize),

    /// Party index past the end of the register.
    #[error("party index {index} is out of range for {n} parties")]
    PartyIndex { index: usize, n: usize },

    /// Basis vector length does not match the party count.
    #[error("basis vector has {got} entries, expected {expected}")]
    BasisLength { got: usize, expected: usize },

    /// Outcome list length does not match the party count.
    #[error("outcome list has {got} entries, expected {expected}")]
    OutcomeLength { got: usize, expected: usize },

    /// Amplitude vector of the wrong length for the qubit count.
    #[error("amplitude vector has {got} entries, expected {expected}")]
    AmplitudeLength { got: usize, expected: usize },

    /// State vector norm is not 1 within tolerance.
    #[error("state vector norm squared is {0}, not 1 within tolerance")]
    NotNormalized(f64),

    /// NaN or infinity in an amplitude.
    #[error("state vector contains a non-finite amplitude")]
    NonFiniteAmplitude,

    /// An odd-σy round carries no parity information and cannot be used.
    #[error("round with an odd number of σy choices is invalid for reconstruction")]
    OddRound,

    /// Invalid configuration value.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Malformed or inconsistent control key material.
    #[error("malformed control key set: {0}")]
    ControlKey(String),

    /// Secret reconstruction refused because participant shares are missing.
    #[error("secret reconstruction requires every participant share; missing parties {missing:?}")]
    IncompleteCoalition { missing: Vec<usize> },

    /// Participant share set is present but inconsistent.
    #[error("participant share set is malformed: {0}")]
    InvalidShare(String),

    /// Dense expansion and closed-form amplitude disagree.
    #[error(
        "amplitude mismatch at n={n} bases={bases} outcomes={outcomes}: \
         dense expansion {dense}, closed form {oracle}"
    )]
    OracleMismatch {
        n: usize,
        bases: String,
        outcomes: String,
        dense: Amplitude,
        oracle: Amplitude,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
