use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied parameter violates a documented constraint.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested integral does not converge (non-positive decay rate).
    #[error("divergent integral: {0}")]
    Divergent(String),

    /// The panel budget ran out before the tolerance was met. Carries the
    /// best value found and its error estimate.
    #[error("accuracy not reached after {panels} panels: value {value:e}, error estimate {err_estimate:e}, target {target:e}")]
    AccuracyNotReached {
        value: f64,
        err_estimate: f64,
        target: f64,
        panels: usize,
    },

    /// The integrand returned a non-finite sample.
    #[error("non-finite integrand sample at x = {x:e}")]
    Evaluation { x: f64 },

    /// A self-consistency check on exact data failed.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("unsupported argument: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
