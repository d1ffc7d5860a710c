use thiserror::Error;

/// Errors reported by scenario validation, transform evaluation, and the
/// simulation drivers.
#[derive(Debug, Error)]
pub enum Error {
    /// A constructor was handed a value outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two nodes coincide, so a path loss (and everything downstream of it)
    /// is undefined.
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    /// Laplace transforms are only defined for nonnegative arguments.
    #[error("transform argument must be nonnegative, got s = {0}")]
    NegativeTransformArg(f64),

    /// The aggregate-interference integral over a line diverges unless the
    /// path-loss exponent exceeds one.
    #[error("path-loss exponent {0} <= 1: line interference integral diverges")]
    DivergentModel(f64),

    /// Adaptive quadrature exhausted its subdivision budget.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    /// Tail probabilities are only defined for nonnegative thresholds.
    #[error("tail argument must be nonnegative, got z = {0}")]
    NegativeTailArg(f64),

    /// A configuration file could not be parsed into a scenario or sweep.
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
