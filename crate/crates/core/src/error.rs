use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Everything except [`Error::Io`] is a domain or range failure of the
/// numerical request itself; the CLI maps those to exit code 1 and I/O
/// failures to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("out of range: {0}")]
    Range(String),

    #[error("|zeta(s)| = {modulus:e} is below the near-zero threshold {threshold:e}")]
    NearZero { modulus: f64, threshold: f64 },

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("tail bound {bound:e} exceeds the requested tolerance {tolerance:e}")]
    Tail { bound: f64, tolerance: f64 },

    #[error("prime sum needs n up to {needed:.3e}, budget is {budget:e}")]
    PrimeBudget { needed: f64, budget: f64 },

    #[error("insufficient zero coverage: {0}")]
    Coverage(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }

    /// Short machine-readable tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Pole(_) => "pole",
            Error::Range(_) => "range",
            Error::NearZero { .. } => "near_zero",
            Error::Quadrature(_) => "quadrature",
            Error::RootFinding(_) => "root_finding",
            Error::Tail { .. } => "tail",
            Error::PrimeBudget { .. } => "prime_budget",
            Error::Coverage(_) => "coverage",
            Error::Parse { .. } => "parse",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
