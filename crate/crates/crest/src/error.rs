use std::fmt;

/// Errors reported by the library.
#[derive(Debug)]
pub enum Error {
    /// A configuration value violates its documented invariants.
    InvalidConfig(String),
    /// Matrix or vector dimensions do not agree.
    DimensionMismatch(String),
    /// A factorization failed or a matrix is numerically singular.
    Singular(String),
    /// The constraint set of an optimization problem is empty.
    Infeasible(String),
    /// A rate was requested for a receiver outside the scheduling decision.
    NotScheduled { receiver: usize },
    /// The cellular set is not contained in the scheduling decision.
    CellularNotIncluded,
    /// Exhaustive pairing was asked to enumerate more candidates than its cap.
    CandidateCapExceeded { candidates: usize, cap: usize },
    /// An exact (exhaustive) computation was requested above its size gate.
    TooExpensive(String),
    /// No bound exists for the requested parameters.
    NoBound(String),
    /// File or stream I/O failed.
    Io(std::io::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::Singular(msg) => write!(f, "singular matrix: {msg}"),
            Error::Infeasible(msg) => write!(f, "infeasible problem: {msg}"),
            Error::NotScheduled { receiver } => {
                write!(f, "receiver {receiver} is not part of the scheduling decision")
            }
            Error::CellularNotIncluded => {
                write!(f, "scheduling decision does not contain the cellular set")
            }
            Error::CandidateCapExceeded { candidates, cap } => write!(
                f,
                "{candidates} candidates exceed the exhaustive enumeration cap of {cap}"
            ),
            Error::TooExpensive(msg) => write!(f, "exact computation too expensive: {msg}"),
            Error::NoBound(msg) => write!(f, "no bound available: {msg}"),
            Error::Io(err) => write!(f, "i/o error: {err}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(err) => Some(err),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err)
    }
}
