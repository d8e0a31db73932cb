use thiserror::Error;

/// Errors shared across the moment-space, polynomial, and spectral kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("canonical moment p[{index}] = {value} is at or beyond the interior boundary")]
    BoundaryPoint { index: usize, value: f64 },

    #[error("input is not strictly interior to the moment space (first failure at index {index})")]
    NonInterior { index: usize },

    #[error("need at least {needed} coefficients, got {got}")]
    InsufficientLength { needed: usize, got: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("{what} = {got} out of range (max {max})")]
    OutOfRange {
        what: &'static str,
        got: usize,
        max: usize,
    },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("argument {value} outside the unit interval")]
    Domain { value: f64 },

    #[error("eigenvalue iteration failed to converge at index {index} after {sweeps} sweeps")]
    NonConvergence { index: usize, sweeps: usize },

    #[error("off-diagonal entry {index} is not strictly positive")]
    DegenerateOffdiagonal { index: usize },

    #[error("singular Hankel determinant (moment data on the boundary)")]
    SingularHankel,

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("empty input")]
    Empty,
}

pub type Result<T> = std::result::Result<T, Error>;
