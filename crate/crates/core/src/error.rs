use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("tree is empty")]
    EmptyTree,

    #[error("node {node} out of range for a tree with {size} nodes")]
    InvalidNodeRef { node: usize, size: usize },

    #[error("permutation {0} is not separable")]
    NotSeparable(String),

    #[error("{op} is not applicable: {reason}")]
    NotApplicable { op: &'static str, reason: String },

    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("serialization failed: {0}")]
    Serialization(String),
}

impl Error {
    pub(crate) fn not_applicable(op: &'static str, reason: impl Into<String>) -> Self {
        Error::NotApplicable {
            op,
            reason: reason.into(),
        }
    }
}
