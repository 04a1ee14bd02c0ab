use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative radicand {0}: only positive real roots are supported")]
    NegativeRadicand(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("ambiguous root selector: {0}")]
    AmbiguousSelector(String),
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("inconsistent instance: {0}")]
    InconsistentInstance(String),
    #[error("undecided: budget of {0} exhausted")]
    BudgetExhausted(u64),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("runtime error at label {label}: {message}")]
    Runtime { label: usize, message: String },
    #[error("degenerate shadow, perturb: {0}")]
    DegenerateShadow(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown identifier: {0}")]
    UnknownId(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(message: impl Into<String>) -> Self {
        Error::Parse { line: 1, column: 1, message: message.into() }
    }
}
