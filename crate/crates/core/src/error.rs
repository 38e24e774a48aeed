use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature did not reach its tolerance.
    #[error("quadrature failed on [{lo}, {hi}]: {reason}")]
    Quadrature { lo: f64, hi: f64, reason: String },

    /// An iterative solver exhausted its iteration cap.
    #[error("no convergence after {iterations} iterations: {reason}")]
    Convergence { iterations: usize, reason: String },

    /// A series or fixed-point iteration diverged.
    #[error("divergence: {0}")]
    Divergence(String),

    /// A computed discrepancy exceeds the requested tolerance.
    #[error("tolerance exceeded: {0}")]
    Tolerance(String),

    /// Two objects that must agree (for example on `n`) do not.
    #[error("mismatch: {0}")]
    Mismatch(String),

    /// Not enough usable data for a fit.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A distribution-spec string or grid could not be parsed.
    #[error("parse error in {field}: {message}")]
    Parse { field: String, message: String },

    /// An evaluation failed at a specific `(n, x)`.
    #[error("at n={n}, x={x}: {source}")]
    At {
        n: u64,
        x: f64,
        #[source]
        source: Box<Error>,
    },
}

/// Coarse error class, used by the command line for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Domain,
    Numerical,
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Annotates the error with the `(n, x)` at which it occurred.
    pub fn at(self, n: u64, x: f64) -> Self {
        match self {
            e @ Error::At { .. } => e,
            e => Error::At {
                n,
                x,
                source: Box::new(e),
            },
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse { .. } => ErrorClass::Parse,
            Error::Domain(_) | Error::Mismatch(_) | Error::Degenerate(_) => ErrorClass::Domain,
            Error::Quadrature { .. }
            | Error::Convergence { .. }
            | Error::Divergence(_)
            | Error::Tolerance(_) => {
                ErrorClass::Numerical
            }
            Error::At { source, .. } => source.class(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
