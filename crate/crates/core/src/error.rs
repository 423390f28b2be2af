use thiserror::Error;

/// Errors raised by the toolkit. Variant names double as the stable
/// identifiers printed by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("InvalidLattice: {0}")]
    InvalidLattice(String),
    #[error("NotAnExtraShift: (r, s) = (0, 0) is a lattice point")]
    NotAnExtraShift,
    #[error("InvalidOrder: m = {0} must be at least 2")]
    InvalidOrder(i64),
    #[error("InvalidIndex: {0}")]
    InvalidIndex(String),
    #[error("InvalidModulus: nu = {0} must be at least 2")]
    InvalidModulus(i64),
    #[error("InvalidMatrix: {0}")]
    InvalidMatrix(String),
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
    #[error("ZeroWindow: the window (or its frame operator) vanishes")]
    ZeroWindow,
    #[error("ZeroInput: cannot measure membership of the zero vector")]
    ZeroInput,
    #[error("InvalidRefinement: {0}")]
    InvalidRefinement(String),
    #[error("InvalidNu: {0}")]
    InvalidNu(String),
    #[error("NotFrameSequence: {0}")]
    NotFrameSequence(String),
    #[error("DegenerateInput: {0}")]
    DegenerateInput(String),
    #[error("NotUndersampled: ab = {ab} must exceed L = {l}")]
    NotUndersampled { ab: usize, l: usize },
    #[error("NotSymplectic: det = {0}, expected 1")]
    NotSymplectic(i64),
    #[error("UnsupportedLength: {0}")]
    UnsupportedLength(String),
    #[error("UnsupportedTransport: {0}")]
    UnsupportedTransport(String),
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("IoError: {0}")]
    Io(String),
}

impl Error {
    /// The bare variant name, e.g. `"InvalidOrder"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidLattice(_) => "InvalidLattice",
            Error::NotAnExtraShift => "NotAnExtraShift",
            Error::InvalidOrder(_) => "InvalidOrder",
            Error::InvalidIndex(_) => "InvalidIndex",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::InvalidMatrix(_) => "InvalidMatrix",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::ZeroWindow => "ZeroWindow",
            Error::ZeroInput => "ZeroInput",
            Error::InvalidRefinement(_) => "InvalidRefinement",
            Error::InvalidNu(_) => "InvalidNu",
            Error::NotFrameSequence(_) => "NotFrameSequence",
            Error::DegenerateInput(_) => "DegenerateInput",
            Error::NotUndersampled { .. } => "NotUndersampled",
            Error::NotSymplectic(_) => "NotSymplectic",
            Error::UnsupportedLength(_) => "UnsupportedLength",
            Error::UnsupportedTransport(_) => "UnsupportedTransport",
            Error::Parse(_) => "ParseError",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
