use thiserror::Error;

/// Errors raised by the library.
///
/// The variants split into input problems (bad matrices, unknown catalog keys,
/// malformed polynomials) and computation problems (enumeration limits, failed
/// hypotheses). The command-line front end maps the former to usage errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("invalid Deligne-Lusztig datum: {0}")]
    InvalidDatum(String),
    #[error("word {0:?} is not a reduced expression")]
    NotReduced(Vec<usize>),
    #[error("unknown catalog key `{0}`")]
    UnknownCase(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("elements belong to different Weyl groups")]
    MismatchedGroups,
    #[error("flags are not comparable: {0}")]
    MismatchedFlags(String),
    #[error("enumeration of {requested} states exceeds the limit of {limit} (set DLVAR_MAX_ENUM to raise it)")]
    EnumerationLimit { requested: u128, limit: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by the shape of the caller's input rather than by
    /// the computation itself.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::UnknownCase(_) | Error::Parse(_) | Error::Parameter(_) | Error::NotReduced(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
