use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("negative time {0}")]
    NegativeTime(String),

    #[error("malformed instance: {0}")]
    Shape(String),

    #[error("solution has no walks")]
    EmptySolution,

    #[error("vertex {vertex} out of range for instance with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("walk must contain at least one step")]
    EmptyWalk,

    #[error("walk offset {offset} outside [0, {period})")]
    BadOffset { offset: String, period: String },

    #[error("budget {budget} is shorter than the direct distance {direct}")]
    BudgetTooSmall { budget: String, direct: String },

    #[error("vertex {0} is never visited")]
    UnvisitedVertex(usize),

    #[error("instance too large for exact search: {0}")]
    InstanceTooLarge(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
