use thiserror::Error;

/// Everything that can go wrong inside the toolkit.
///
/// The CLI maps [`Error::is_input_error`] to exit status 2 and every other
/// variant to exit status 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pole at {point}")]
    Pole { point: String },

    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("bound too small: {0}")]
    BoundTooSmall(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable name used in CLI reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Pole { .. } => "pole",
            Error::NotDivisible(_) => "not-divisible",
            Error::Unsupported(_) => "unsupported-input",
            Error::BoundTooSmall(_) => "bound-too-small",
            Error::HypothesisViolation(_) => "hypothesis-violation",
            Error::InvariantViolation(_) => "invariant-violation",
            Error::Input(_) => "input",
            Error::Parse(_) => "parse",
        }
    }

    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Input(_) | Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
