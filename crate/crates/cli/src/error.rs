use parity_lab::curve::CurveError;
use parity_lab::descent2::DescentError;
use parity_lab::fields::FieldError;
use parity_lab::larsen::LarsenError;
use parity_lab::rootnumber::RootNumberError;
use thiserror::Error;

/// Failure of a command, carrying its process exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("identity violation: {0}")]
    IdentityViolation(String),
    #[error("search exhausted: {0}")]
    Exhausted(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::IdentityViolation(_) => 4,
            CliError::Exhausted(_) => 5,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Usage(_) => "usage",
            CliError::Unsupported(_) => "unsupported",
            CliError::IdentityViolation(_) => "identity-violation",
            CliError::Exhausted(_) => "search-exhausted",
        }
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::Parse(_) => CliError::Parse(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<RootNumberError> for CliError {
    fn from(e: RootNumberError) -> Self {
        match e {
            RootNumberError::Unsupported { .. } => CliError::Unsupported(e.to_string()),
            RootNumberError::Curve(c) => c.into(),
            RootNumberError::Field(f) => f.into(),
        }
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::Exhausted { .. } => CliError::Exhausted(e.to_string()),
            FieldError::Curve(c) => c.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<DescentError> for CliError {
    fn from(e: DescentError) -> Self {
        match e {
            DescentError::RootNumber(r) => r.into(),
            DescentError::Curve(c) => c.into(),
            DescentError::Arith(a) => CliError::Usage(a.to_string()),
        }
    }
}

impl From<LarsenError> for CliError {
    fn from(e: LarsenError) -> Self {
        match e {
            LarsenError::Field(f) => f.into(),
            LarsenError::RootNumber(r) => r.into(),
            LarsenError::Unverified(_) => CliError::IdentityViolation(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}
