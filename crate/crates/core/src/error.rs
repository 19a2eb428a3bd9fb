use thiserror::Error;

use crate::arith::ArithError;

/// Errors raised by configuration and construction. Mathematical check
/// failures are reported through [`crate::report::CheckReport`] instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("ideal generators must be nonzero")]
    InvalidGenerator,
    #[error("truncation at D = {degree} did not stabilize up to slack {slack_cap}")]
    NoStabilization { degree: u32, slack_cap: u32 },
    #[error("weight {needed} exceeds the truncation cap {cap}")]
    WeightBudgetExceeded { needed: u32, cap: u32 },
    #[error("mu = 0: kappa coincides with epsilon")]
    MuZero,
    #[error("leading coefficient A_{n} of the weight recurrence vanishes")]
    DegenerateLinearCoefficient { n: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("report sink unwritable: {0}")]
    SinkUnwritable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
