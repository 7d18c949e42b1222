use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid caller input (bad parameters, malformed files, broken preconditions).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Geometric precondition violated (point outside domain, non-simple chain, ...).
    #[error("geometry error: {0}")]
    Geometry(String),

    /// A numerical scheme failed to converge or produced a non-finite value.
    #[error("numeric error: {context} (residual {residual:.3e})")]
    Numeric { context: String, residual: f64 },

    /// The extension construction broke down at a specific dyadic cell.
    #[error("construction error at (n={n}, k={k}): {what}")]
    Construction { n: u32, k: u32, what: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn geometry(msg: impl Into<String>) -> Self {
        Error::Geometry(msg.into())
    }

    pub fn numeric(context: impl Into<String>, residual: f64) -> Self {
        Error::Numeric {
            context: context.into(),
            residual,
        }
    }

    pub fn construction(n: u32, k: u32, what: impl Into<String>) -> Self {
        Error::Construction {
            n,
            k,
            what: what.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
