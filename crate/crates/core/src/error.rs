use thiserror::Error;

/// Every failure mode of the toolkit.
///
/// `CheckFailed` is special: it means an inequality that the construction is
/// supposed to guarantee was observed to fail. The CLI maps it to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("value at index {0} is not finite")]
    NonFinite(usize),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("spectrum is not Hermitian: deviation {deviation:e} exceeds {tolerance:e}")]
    NonHermitian { deviation: f64, tolerance: f64 },
    #[error("invalid radius: {0}")]
    InvalidRadius(String),
    #[error("no regular value found in [{delta}, 2*{delta}) after {tried} candidates")]
    NoRegularValueFound { delta: String, tried: usize },
    #[error("radius {0} is not regular for the character set")]
    NotRegular(String),
    #[error("intervals do not cover [0,1]: {0}")]
    NotACover(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("iteration cap exceeded: {0}")]
    IterationCapExceeded(String),
    #[error("Bohr set has fewer than two elements (size {0}); no nonzero step exists")]
    EmptyBohr(usize),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("set has cardinality {actual}, expected {expected}")]
    WrongCardinality { expected: usize, actual: usize },
    #[error("check `{name}` failed: {detail}")]
    CheckFailed { name: String, detail: String },
    #[error("negative spectral mass {0:e} exceeds clip tolerance")]
    NegativeSpectrum(f64),
    #[error("no sign vector met the moment threshold after {0} draws")]
    ResampleCapExceeded(usize),
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("no rounding trial accepted after {0} retries")]
    RetryCapExceeded(usize),
    #[error("p = {0} is too large for exhaustive search (max {1})")]
    TooLarge(u64, u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn check(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::CheckFailed {
            name: name.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
