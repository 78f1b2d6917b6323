use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad category of an [`Error`], used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or out-of-domain input.
    InvalidInput,
    /// Well-formed input that violates a mathematical precondition.
    Constraint,
    /// I/O or serialization failure.
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate linear fractional map (ad - bc = 0)")]
    DegenerateMap,
    #[error("the identity map has no isolated fixed points")]
    IdentityMap,
    #[error("no Denjoy-Wolff point: map is the identity or an elliptic automorphism")]
    NoDenjoyWolffPoint,
    #[error("map does not send the unit disk into itself")]
    NotSelfMap,
    #[error("map is not parabolic at the given boundary point")]
    NotParabolic,
    #[error("invalid translation number {0}: need Re t >= 0 and t != 0")]
    InvalidTranslation(Complex64),
    #[error("point {0} is the pole of the map")]
    Pole(Complex64),
    #[error("point {0} is not inside the unit disk")]
    OutsideDisk(Complex64),
    #[error("series constraint violated: {0}")]
    Series(String),
    #[error("weight is not bounded on the disk (max |psi| = {0:e} on the test grid)")]
    UnboundedWeight(f64),
    #[error("order policy violated: need M >= {required} for N = {n}, got M = {m}")]
    OrderPolicy { n: usize, m: usize, required: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown scenario id {0:?}")]
    UnknownScenario(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::DegenerateMap
            | Error::InvalidTranslation(_)
            | Error::OutsideDisk(_)
            | Error::InvalidArgument(_)
            | Error::UnknownScenario(_)
            | Error::Json(_) => ErrorKind::InvalidInput,
            Error::IdentityMap
            | Error::NoDenjoyWolffPoint
            | Error::NotSelfMap
            | Error::NotParabolic
            | Error::Pole(_)
            | Error::Series(_)
            | Error::UnboundedWeight(_)
            | Error::OrderPolicy { .. } => ErrorKind::Constraint,
            Error::Csv(_) | Error::Io(_) => ErrorKind::Io,
        }
    }
}
