//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: n={left} vs n={right}")]
    DimensionMismatch { left: u32, right: u32 },

    /// No noise level is high enough to push the fidelity at or below
    /// its dimension-dependent floor 1/sqrt(2N).
    #[error("fidelity {fidelity} is unreachable: must exceed the floor {floor} for this dimension")]
    UnreachableFidelity { fidelity: f64, floor: f64 },

    #[error("cannot measure a zero-norm state")]
    UnmeasurableState,

    #[error("out of domain: {0}")]
    OutOfDomain(String),
}
