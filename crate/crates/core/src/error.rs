use thiserror::Error;

/// Errors raised by polynomial construction, operators, circle analysis and the harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial needs at least one coefficient")]
    EmptyPolynomial,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("effective degree {degree} exceeds the allowed degree {limit}")]
    DegreeOverflow { degree: usize, limit: usize },

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("denominator polynomial nearly vanishes on the circle |z| = {radius}")]
    VanishesOnCircle { radius: f64 },

    #[error("generator family mismatch: expected {expected}, got {got}")]
    FamilyMismatch { expected: &'static str, got: String },

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("unknown polynomial family `{0}`")]
    UnknownFamily(String),

    #[error("check `{check}` cannot be scanned over family `{family}`")]
    UnsupportedScan { check: String, family: String },

    #[error("failed to generate a valid instance after {0} attempts")]
    GenerationFailed(usize),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
