use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("zero quaternion has no inverse")]
    ZeroInverse,

    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,

    #[error("polynomial must have degree at least 1, got {0}")]
    DegreeTooLow(usize),

    #[error("polynomial degree {0} exceeds the supported maximum of {max}", max = crate::poly::MAX_DEGREE)]
    DegreeTooHigh(usize),

    #[error("companion coefficient {index} has non-scalar part {deviation:e} (relative), above tolerance")]
    CompanionNotReal { index: usize, deviation: f64 },

    #[error("root iteration did not converge for {} of {total} roots after {iterations} iterations", failed.len())]
    NoConvergence {
        failed: Vec<usize>,
        total: usize,
        iterations: usize,
    },

    #[error("invalid Hölder pair ({r}, {s}): need r > 1, s > 1, 1/r + 1/s = 1")]
    InvalidHolderPair { r: f64, s: f64 },

    #[error("coefficient ordering for the two-ball region fails for r = {0}")]
    OrderingViolated(f64),

    #[error("this bound needs degree at least 2")]
    NeedsDegreeTwo,

    #[error("r must be positive, got {0}")]
    NonPositiveR(f64),

    #[error("|q| = {0} must exceed 1")]
    NormNotAboveOne(f64),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}
