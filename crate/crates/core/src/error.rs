//! Crate-wide error type.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong when building states, operators or sweeps.
#[derive(Debug, Error)]
pub enum Error {
    /// Vector/matrix dimensions do not line up (wrong qubit count, wrong arity).
    #[error("size mismatch: {0}")]
    Size(String),

    /// An argument is outside its documented domain.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A superposition collapsed to (numerically) the zero vector.
    #[error("degenerate superposition: norm {norm:.3e} is below 1e-12")]
    DegenerateSuperposition { norm: f64 },

    /// A measurement direction is too far from unit length.
    #[error("direction not normalized: |v| = {norm} deviates from 1 by more than 1e-8")]
    Normalization { norm: f64 },

    /// A numeric self-check failed (imaginary residue, Hermiticity, positivity).
    #[error("numeric consistency: {0}")]
    NumericConsistency(String),

    /// A closed-form expression is singular at the requested parameters;
    /// callers should fall back to the numeric path.
    #[error("closed-form singularity: {0}")]
    ClosedFormSingularity(String),

    /// The requested parameters are outside a closed form's validity range.
    #[error("outside closed-form validity range: {0}")]
    ValidityRange(String),

    /// A transition bracket does not straddle the threshold.
    #[error("bracket error: {0}")]
    Bracket(String),

    /// The fit basis is degenerate on the supplied grid.
    #[error("fit error: {0}")]
    Fit(String),

    /// File I/O failure, with the offending path.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NumericConsistency(_) => 3,
            Error::Io { .. } => 4,
            _ => 2,
        }
    }
}
