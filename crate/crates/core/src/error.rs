use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("out of range: {0}")]
    Range(String),

    #[error("exact arithmetic overflow: {0}")]
    Overflow(String),

    #[error("series does not converge: {0}")]
    Convergence(String),

    #[error("pole at {0}")]
    Pole(String),

    #[error("singular point: {0}")]
    Singularity(String),

    #[error("precision target not reachable: {0}")]
    Precision(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("zero location: {0}")]
    ZeroLocation(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

impl Error {
    /// Short machine-readable tag used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Resource(_) => "resource",
            Error::Range(_) => "range",
            Error::Overflow(_) => "overflow",
            Error::Convergence(_) => "convergence",
            Error::Pole(_) => "pole",
            Error::Singularity(_) => "singularity",
            Error::Precision(_) => "precision",
            Error::Domain(_) => "domain",
            Error::ZeroLocation(_) => "zero_location",
            Error::DegenerateFit(_) => "degenerate_fit",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
