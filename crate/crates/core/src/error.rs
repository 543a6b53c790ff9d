use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A diagonal entry is exactly zero, so `D` (or `L + D`) is singular.
    #[error("diagonal entry a[{0}][{0}] is zero; the iteration is undefined")]
    ZeroDiagonal(usize),

    #[error("matrix order {0} is outside the supported range 1..={max}", max = crate::linalg::Matrix::MAX_ORDER)]
    UnsupportedOrder(usize),

    #[error("order {got} exceeds the limit {limit} for this operation")]
    OrderTooLarge { got: usize, limit: usize },

    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite value at position {0}")]
    NonFinite(usize),

    #[error("operation requires order {expected}, got {got}")]
    WrongOrder { expected: usize, got: usize },

    #[error("polynomial must have degree at least 1")]
    DegreeTooLow,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial has a zero leading coefficient")]
    ZeroLeading,

    #[error("root iteration stopped after {sweeps} sweeps with backward error {backward_error:e}")]
    NoConvergence { sweeps: usize, backward_error: f64 },

    #[error("parity adjustment produced leading coefficient {0}, expected a positive value")]
    ParityViolation(f64),

    #[error("parameters must be real (imaginary parts exactly zero)")]
    NotReal,

    #[error("diagonal product a is zero")]
    ZeroA,

    #[error("|b/a| = {0} is not below 1")]
    RatioOutOfRange(f64),

    #[error("tolerance must be positive and finite")]
    InvalidTolerance,

    #[error("root oracle and Hurwitz criterion disagree: {0}")]
    Unresolvable(String),

    #[error("missing parameter: {0}")]
    MissingParameter(&'static str),

    #[error("at least one trial is required")]
    NoTrials,

    #[error("worker pool: {0}")]
    WorkerPool(String),
}
