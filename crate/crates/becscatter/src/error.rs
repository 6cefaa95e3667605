//! Error type shared by every module of the crate.

use std::path::PathBuf;

use crate::gpe::GroundState;

/// Everything that can go wrong across grid construction, relaxation,
/// scattering integrals, diagnostics, and dataset I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Grid, solver, or sweep parameters outside their documented ranges.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A profile operation received an all-zero or non-normalizable input.
    #[error("degenerate profile: {0}")]
    DegenerateProfile(String),

    /// Parameter region the model does not cover.
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    /// Scalar argument outside the operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The requested profile support extends past the end of the grid.
    #[error("grid ends at r_max = {available} but the profile support reaches {required}")]
    TruncatedSupport { required: f64, available: f64 },

    /// Lookup or integration outside the tabulated range.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// The imaginary-time iteration hit its step cap; carries the best iterate.
    #[error(
        "no convergence after {} steps (gamma = {}, residual = {:.3e})",
        best.steps_taken,
        best.gamma,
        best.residual
    )]
    NonConvergence { best: Box<GroundState> },

    /// Too few samples or detected features for the requested diagnostic.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Filesystem failure, with the offending path.
    #[error("file error at {}: {source}", path.display())]
    FileError {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
