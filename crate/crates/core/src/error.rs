use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("endpoint mismatch: {left} does not meet {right}")]
    EndpointMismatch { left: String, right: String },

    #[error("order kind {order} cannot be used with a {mode} system")]
    ModeMismatch { order: &'static str, mode: &'static str },

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("rule `{rule}` does not match at position {position} of {word}")]
    NoMatch { rule: String, position: usize, word: String },

    #[error("step {index} of the zig-zag is not composable: {reason}")]
    InvalidZigZag { index: usize, reason: String },

    #[error("rewrite chain broken at cell {index}: {reason}")]
    CellChainMismatch { index: usize, reason: String },

    #[error("measure violation: {0}")]
    MeasureViolation(String),

    #[error("no resolution for local peak {0}")]
    UnresolvedPeak(String),

    #[error("zig-zags are not parallel: {0}")]
    NotParallel(String),

    #[error("zig-zag is not closed: {0}")]
    NotClosed(String),

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("cell generator `{0}` cannot be compiled into a closed zig-zag certificate")]
    UncertifiableCell(String),
}
