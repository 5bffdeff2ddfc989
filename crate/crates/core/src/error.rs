use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SgpvError {
    #[error("invalid interval [{lo}, {hi}]: {reason}")]
    InvalidInterval { lo: f64, hi: f64, reason: &'static str },

    #[error("NaN is not a valid extended real")]
    NotANumber,

    #[error("truncation bounds do not intersect the interval")]
    TruncationEmpty,

    #[error("scale must be positive and finite, got {0}")]
    InvalidScale(f64),

    #[error("probability must lie in (0, 1), got {0}")]
    InvalidProbability(f64),

    #[error("proportion must lie in [0, 1], got {0}")]
    InvalidProportion(f64),

    #[error("invalid null specification: {0}")]
    InvalidNull(&'static str),

    #[error("interval estimate covers the whole real line; truncate it to the plausible effect range first")]
    UnboundedEstimate,

    #[error("invalid design: {0}")]
    InvalidDesign(&'static str),

    #[error("degenerate design: {0}")]
    DegenerateDesign(&'static str),

    #[error("prior odds must be positive and finite, got {0}")]
    InvalidOdds(f64),

    #[error("invalid group summary: {0}")]
    InvalidSummary(&'static str),

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("row {0} has no p-value to compare against")]
    MissingComparator(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),
}

pub type Result<T> = std::result::Result<T, SgpvError>;
