use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("node id {id} out of range for graph with {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("budget {budget} exceeds the {available} available nodes")]
    BudgetTooLarge { budget: usize, available: usize },

    #[error("PageRank did not converge in {iterations} iterations (last L1 change {last_change:e})")]
    NotConverged {
        iterations: usize,
        last_change: f64,
        last_iterate: Vec<f64>,
    },

    #[error("VoteRank undefined: {0}")]
    VoteRankUndefined(String),

    #[error("empty mask: {0}")]
    EmptyMask(&'static str),

    #[error("non-finite loss {loss} at epoch {epoch}")]
    NonFiniteLoss { epoch: usize, loss: f64 },

    #[error("oracle has no label for node {0}")]
    MissingLabel(usize),

    #[error("test mask overlaps training node {0}")]
    TestTrainOverlap(usize),

    #[error("{path}:{line}: malformed line: {msg}")]
    Malformed {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("class ids are not contiguous from 0: missing class {missing} (max {max})")]
    NonContiguousClasses { missing: usize, max: usize },

    #[error("invalid model file: {0}")]
    ModelFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
