use thiserror::Error;

/// Every failure the library can report.
///
/// The CLI maps variants onto exit codes through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mismatched level: {0} vs {1}")]
    MismatchedLevel(u32, u32),
    #[error("bad level p = {0}: levels are even integers p=2r ≥ 6")]
    BadLevel(i64),
    #[error("class ({0},{1}) is not primitive")]
    NotPrimitive(i64, i64),
    #[error("color out of range: {0}")]
    OutOfRange(String),
    #[error("boundary leg {0} has no color")]
    UnassignedLeg(usize),
    #[error("pinned slice is empty for both parities")]
    DegenerateSlice,
    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),
    #[error("malformed curve: {0}")]
    MalformedCurve(String),
    #[error("not annularly resolvable: {0}")]
    NotAnnularlyResolvable(String),
    #[error("root sequence not classifiable: {0}")]
    NotClassifiable(String),
    #[error("sigma = {sigma} is not coprime to 2p = {two_p}")]
    BadSigma { sigma: i64, two_p: i64 },
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invalid(_)
            | Error::BadLevel(_)
            | Error::MalformedPresentation(_)
            | Error::MalformedCurve(_)
            | Error::OutOfRange(_)
            | Error::UnassignedLeg(_)
            | Error::MismatchedLevel(..) => 1,
            Error::ResourceCap(_) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::MismatchedLevel(..) => "MismatchedLevel",
            Error::BadLevel(_) => "BadLevel",
            Error::NotPrimitive(..) => "NotPrimitive",
            Error::OutOfRange(_) => "OutOfRange",
            Error::UnassignedLeg(_) => "UnassignedLeg",
            Error::DegenerateSlice => "DegenerateSlice",
            Error::MalformedPresentation(_) => "MalformedPresentation",
            Error::MalformedCurve(_) => "MalformedCurve",
            Error::NotAnnularlyResolvable(_) => "NotAnnularlyResolvable",
            Error::NotClassifiable(_) => "NotClassifiable",
            Error::BadSigma { .. } => "BadSigma",
            Error::ResourceCap(_) => "ResourceCap",
            Error::Invalid(_) => "Invalid",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
