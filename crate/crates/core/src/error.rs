use thiserror::Error;

/// Errors raised by the exact-arithmetic and certification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("interval endpoint {0} is a root; perturb it by an exact rational")]
    RootAtEndpoint(String),
    #[error("root on the unit circle: Schur-Cohn reduction degenerated at step {0}")]
    UnitCircle(usize),
    #[error("polynomial is not reciprocal")]
    NotReciprocal,
    #[error("plane x{0} = 0 is not invariant under the map")]
    NotInvariant(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
