use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("invalid convex body: {0}")]
    InvalidBody(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid point set: {0}")]
    InvalidPointSet(String),

    #[error("invalid column offsets: {0}")]
    InvalidOffsets(String),

    #[error("separation is undefined for a window holding {0} point(s)")]
    UndefinedSeparation(usize),

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("tail certificate unavailable: {0}")]
    CertificateUnavailable(String),

    #[error("error-exponent fit unavailable: {0}")]
    FitUnavailable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag used in error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidDomain(_) => "invalid-domain",
            Error::InvalidBody(_) => "invalid-body",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::InvalidPointSet(_) => "invalid-pointset",
            Error::InvalidOffsets(_) => "invalid-offsets",
            Error::UndefinedSeparation(_) => "undefined-separation",
            Error::UnsupportedDomain(_) => "unsupported-domain",
            Error::CertificateUnavailable(_) => "certificate-unavailable",
            Error::FitUnavailable(_) => "fit-unavailable",
            Error::Parse(_) => "parse",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
