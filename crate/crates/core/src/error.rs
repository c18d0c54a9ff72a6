use thiserror::Error;

/// Errors raised by the estimators and their supporting machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The requested working precision cannot guarantee a correct fractional part.
    #[error("precision error: {0}")]
    Precision(String),

    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The estimator formula has no finite value on this sample (e.g. the
    /// quantile of 0 or 1 would be required).
    #[error("estimate undefined: {0}")]
    EstimateUndefined(String),

    /// A denominator in the estimator formula is exactly zero.
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    /// An experiment configuration field is invalid.
    #[error("config error in `{field}`: {reason}")]
    Config { field: String, reason: String },
}

impl Error {
    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
