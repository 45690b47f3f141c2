use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("node {node} out of range for {n} participants")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("self edge on node {0}")]
    SelfEdge(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("edge ({from}, {to}) is not in the benefit graph")]
    EdgeNotInBenefitGraph { from: usize, to: usize },

    #[error("{what} too large for exhaustive enumeration: {size} > {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("usage graph already lets a participant reach a competitor")]
    InfeasibleUsage,

    #[error("invalid synthetic config: {0}")]
    InvalidConfig(String),

    #[error("training diverged for participant {participant} in round {round}: {detail}")]
    TrainingDiverged {
        participant: usize,
        round: usize,
        detail: String,
    },

    #[error("grouping does not match method {0}")]
    GroupingMismatch(String),
}
