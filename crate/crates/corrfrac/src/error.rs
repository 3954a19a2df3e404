//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    #[error("leading coefficient must be positive, got {0}")]
    NonPositiveLeading(String),

    #[error("zero denominator in rational function")]
    ZeroDenominator,

    #[error("series has a constant term; logarithm would diverge")]
    SeriesConstantTerm,

    #[error("function spec `{label}` rejected: {reason}")]
    SpecRejected { label: String, reason: String },

    #[error("initial correction unsolvable: {0}")]
    InitialCorrectionUnsolvable(String),

    #[error("non-affine dependence on unknown `{unknown}` at order {order}")]
    NonAffine { unknown: String, order: usize },

    #[error("MT series vanished up to truncation order {0} after retries")]
    BeyondTruncation(usize),

    #[error("correction state already stopped: {0}")]
    AlreadyStopped(String),

    #[error("MC-point required but absent")]
    MissingMcPoint,

    #[error("singular evaluation: intermediate denominator below 2^{threshold} at depth {depth}")]
    SingularEvaluation { depth: usize, threshold: i64 },

    #[error("evaluation produced a non-finite value")]
    NonFinite,

    #[error("oracle requires a positive argument, got {0}")]
    NonPositiveArgument(String),

    #[error("non-integer input to modular decomposition at index {0}")]
    NonIntegerInput(usize),

    #[error("closed form divides by zero at m = {0}")]
    ClosedFormZeroDivision(i64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown check name `{0}`")]
    UnknownCheck(String),

    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
