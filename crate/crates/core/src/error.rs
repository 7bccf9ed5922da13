use thiserror::Error;

/// Errors raised by system construction, input parsing and the solvers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("edge ({0}, {1}) references a vertex outside the threshold array (n = {2})")]
    VertexOutOfRange(usize, usize, usize),

    #[error("threshold array has length {got}, expected at least {expected}")]
    ThresholdLength { expected: usize, got: usize },

    #[error("configuration has length {got}, system has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("structural requirement not met: {0}")]
    Structure(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown method `{0}`")]
    UnknownMethod(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
