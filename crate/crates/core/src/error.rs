use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid feature space: {0}")]
    InvalidSpace(String),
    #[error("row {row}: {reason}")]
    InvalidRow { row: usize, reason: String },
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("profile of row {row} appears more than once")]
    DuplicateProfile { row: usize },
    #[error("profile of row {row} already seen with a different label")]
    ConflictingLabel { row: usize },
    #[error("response must be binary (found {states} states)")]
    NonBinaryResponse { states: u32 },
    #[error("feature {feature} is not binary")]
    NonBinaryFeature { feature: usize },
    #[error("not a bijection: {0}")]
    NotABijection(String),
    #[error("class {class} has mass {available}, {requested} requested")]
    InsufficientClassMass { class: u32, available: u64, requested: u64 },
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("unknown feature `{0}`")]
    UnknownFeature(String),
    #[error("negative dependency in block {block} which has a non-binary feature")]
    NegativeSignOnNonBinary { block: usize },
    #[error("columns have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("column is not binary")]
    NonBinaryColumn,
    #[error("cannot form {requested} clusters from {features} features")]
    BadClusterCount { requested: usize, features: usize },
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("{players} players exceeds the enumeration bound of {bound}")]
    EnumerationBoundExceeded { players: usize, bound: u32 },
    #[error("sample does not contain every binary profile (missing {missing})")]
    IncompleteCoverage { missing: usize },
    #[error("the all-zeros profile is labelled 1, so v(empty set) would not be 0")]
    NonZeroEmpty,
    #[error("game takes values outside {{0, 1}}")]
    NotZeroOne,
    #[error("vector is constant")]
    ConstantVector,
    #[error("need at least two entries")]
    TooShort,
    #[error("count does not fit in 128 bits")]
    CountOverflow,
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
}

impl Error {
    /// True for errors caused by malformed or inconsistent input rather than
    /// by a computation that could not be carried out.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::EnumerationBoundExceeded { .. } | Error::CountOverflow | Error::ConstantVector
        )
    }
}
