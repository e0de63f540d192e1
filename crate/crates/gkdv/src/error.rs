//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is singular to working precision (pivot {pivot:.3e}, threshold {threshold:.3e})")]
    SingularMatrix { pivot: f64, threshold: f64 },

    #[error("Newton iteration did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("iterate blew up (max |f| = {norm:.3e}); try a smaller step or a different guess")]
    Blowup { norm: f64 },

    #[error("eigenvalue must stay positive for the decaying-tail closure (got {lambda:.6e})")]
    EigenvalueSign { lambda: f64 },

    #[error("time step failed at t = {t}: {source}")]
    StepFailed {
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("field magnitude {norm:.3e} exceeds the overflow guard")]
    Overflow { norm: f64 },

    #[error("embedded waves overlap above {threshold:.1e} near x = {x:.6}")]
    WaveOverlap { x: f64, threshold: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("runs are not comparable: {0}")]
    MismatchedRuns(String),

    #[error("peak windows cover the whole domain; nothing left to measure")]
    WindowsCoverDomain,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed file {path}: {reason}")]
    Format { path: String, reason: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
