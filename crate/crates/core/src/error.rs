use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(String),

    #[error("prime {0} is not congruent to 1 mod 4")]
    WrongResidueClass(String),

    #[error("{0} is outside the supported range")]
    OutOfRange(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular (zero pivot column at stage {stage})")]
    Singular { stage: usize },

    #[error("pole encountered: 1 + X_{row} Y_{col} = 0")]
    PoleEncountered { row: usize, col: usize },

    #[error("nodes are not pairwise distinct (positions {0} and {1})")]
    DuplicateNodes(usize, usize),

    #[error("element is not invertible")]
    NotInvertible,

    #[error("two computation routes disagree in {what}: {left} vs {right}")]
    RouteMismatch {
        what: String,
        left: String,
        right: String,
    },

    #[error("invalid half-system: {0}")]
    InvalidHalfSystem(String),

    #[error("inconsistent sign convention: {0}")]
    Convention(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn mismatch(what: impl Into<String>, left: impl ToString, right: impl ToString) -> Self {
        Error::RouteMismatch {
            what: what.into(),
            left: left.to_string(),
            right: right.to_string(),
        }
    }
}
