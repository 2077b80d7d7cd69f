use thiserror::Error;

/// Errors produced by basis construction, evaluation and the spectral operators.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("argument x = {x} lies outside the open domain ({lo}, {hi})")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },

    #[error("x = 0 is excluded from the symmetrized interval")]
    OriginExcluded,

    #[error("type parameter {name} = {value} must be finite and > -1 (values within 1e-12 of -1 are rejected)")]
    InvalidTypeParameter { name: &'static str, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("coefficient boxes differ: {left} vs {right}")]
    BoxMismatch { left: usize, right: usize },

    #[error("spectral level {level} out of range ({count} levels)")]
    LevelOutOfRange { level: usize, count: usize },

    #[error("Riesz order must be a nonzero multi-index")]
    ZeroRieszOrder,

    #[error("Poisson time t = {0} must be nonnegative")]
    NegativeTime(f64),

    #[error("quadrature rule of size {size} is too small for truncation {n_max} (need at least {required})")]
    InsufficientRule {
        size: usize,
        n_max: usize,
        required: usize,
    },

    #[error("grid functions belong to different quadrature rules")]
    RuleMismatch,

    #[error("grid function has {got} values, rule supplies {expected} nodes")]
    GridLengthMismatch { expected: usize, got: usize },

    #[error("coefficients must be supported on the fully even sub-basis, found mass {mass} on index {index:?}")]
    NotEvenSupported { index: Vec<usize>, mass: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
