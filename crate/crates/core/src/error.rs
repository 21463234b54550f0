use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures raised by the numerical routines and the catalog I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// Input lies on a pole of the gamma function.
    #[error("log_gamma has a pole at z = {0}")]
    Pole(f64),

    /// Argument outside the domain where the operation is defined or validated.
    #[error("{what}: {value} is outside the valid domain ({bound})")]
    Domain {
        what: &'static str,
        value: f64,
        bound: String,
    },

    /// Hardy Z was requested above the height where its accuracy is validated.
    #[error("height t = {0} is outside the validated regime of the critical-line evaluator (t <= 1e6)")]
    Regime(f64),

    /// Invalid configuration value.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// An iterative solver ran out of iterations.
    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    /// Bracketing failed to enclose a root.
    #[error("no root bracket for {what}")]
    NoBracket { what: String },

    /// Evaluation too close to a pole of a determinant.
    #[error("{what}: evaluation within {distance:e} of a pole")]
    NearPole { what: &'static str, distance: f64 },

    /// Count requested beyond the range covered by a zero catalog.
    #[error("height {requested} exceeds the scanned range of the catalog (up to {scanned})")]
    OutOfRange { requested: f64, scanned: f64 },

    /// The catalog holds fewer zeros than required.
    #[error("catalog holds {available} zeros but {required} are required")]
    InsufficientCatalog { available: usize, required: usize },

    /// Least-squares problem too ill-conditioned to trust.
    #[error("asymptotic fit is ill-conditioned (Gram condition number {0:e})")]
    IllConditioned(f64),

    /// Adaptive integrator step size collapsed.
    #[error("integrator step size underflow at xi = {0}")]
    StepUnderflow(f64),

    /// A computation produced NaN or infinity.
    #[error("{0} produced a non-finite value")]
    NonFinite(&'static str),

    #[error("line {line}: cannot parse `{text}` as a height")]
    Parse { line: usize, text: String },

    #[error("line {line}: height {value} does not exceed the previous height {previous}")]
    Ordering { line: usize, value: f64, previous: f64 },

    #[error("line {line}: height {value} lies below the first nontrivial zero")]
    BelowFirstZero { line: usize, value: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, bound: impl Into<String>) -> Self {
        Error::Domain {
            what,
            value,
            bound: bound.into(),
        }
    }

    /// True for failures of an iterative numerical method, as opposed to bad input or I/O.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::NoBracket { .. }
                | Error::IllConditioned(_)
                | Error::StepUnderflow(_)
                | Error::NonFinite(_)
                | Error::NearPole { .. }
        )
    }

    pub fn is_io(&self) -> bool {
        matches!(
            self,
            Error::Io { .. } | Error::Parse { .. } | Error::Ordering { .. } | Error::BelowFirstZero { .. }
        )
    }
}
