use thiserror::Error;

/// Domain errors. Every variant maps to a stable machine-readable code via
/// [`Error::code`], which the CLI prints as the prefix of its error line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown catalog space `{0}`")]
    NotInCatalog(String),
    #[error("direction H must be nonzero")]
    ZeroDirection,
    #[error("{0} is not a point of the unit lattice")]
    NotClosed(String),
    #[error("{0} is not a primitive lattice point")]
    NotPrimitive(String),
    #[error("Weyl group closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("root index {0} out of range")]
    InvalidRootIndex(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed space data: {0}")]
    Malformed(String),
    #[error("invalid intersection ring: {0}")]
    InvalidRing(String),
    #[error("ring dimension {ring} does not match dim Sigma = {sigma}")]
    RingMismatch { ring: u32, sigma: u32 },
    #[error("the zero class does not define a completing class")]
    ZeroClass,
    #[error("class is not homogeneous")]
    Inhomogeneous,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("energy bound must be positive, got {0}")]
    InvalidBound(String),
    #[error("invalid plot specification: {0}")]
    InvalidPlot(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotInCatalog(_) => "NotInCatalog",
            Error::ZeroDirection => "ZeroDirection",
            Error::NotClosed(_) => "NotClosed",
            Error::NotPrimitive(_) => "NotPrimitive",
            Error::CapExceeded(_) => "CapExceeded",
            Error::InvalidRootIndex(_) => "InvalidRootIndex",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::Malformed(_) => "Malformed",
            Error::InvalidRing(_) => "InvalidRing",
            Error::RingMismatch { .. } => "RingMismatch",
            Error::ZeroClass => "ZeroClass",
            Error::Inhomogeneous => "Inhomogeneous",
            Error::Unsupported(_) => "Unsupported",
            Error::NotApplicable(_) => "NotApplicable",
            Error::InvalidBound(_) => "InvalidBound",
            Error::InvalidPlot(_) => "InvalidPlot",
            Error::Parse(_) => "Parse",
            Error::ValidationFailed(_) => "ValidationFailed",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
