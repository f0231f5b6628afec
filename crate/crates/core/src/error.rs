use thiserror::Error;

/// Errors produced by the parser library.
#[derive(Debug, Error)]
pub enum Error {
    /// Tensor shapes do not conform for an operation.
    #[error("dimension mismatch in {op}: {lhs:?} vs {rhs:?}")]
    Dimension {
        op: &'static str,
        lhs: Vec<usize>,
        rhs: Vec<usize>,
    },

    /// An operation was called in a state that violates its contract.
    #[error("usage error: {0}")]
    Usage(String),

    /// Malformed treebank input.
    #[error("format error at line {line}: {msg}")]
    Format { line: usize, msg: String },

    /// A transition was applied in a configuration where it is illegal.
    #[error("illegal transition {transition}: {reason}")]
    Transition { transition: String, reason: String },

    /// Inconsistent experiment or model configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// Gold/predicted runs do not line up for scoring.
    #[error("evaluation error: {0}")]
    Eval(String),

    /// The training oracle produced an impossible state.
    #[error("oracle error: {0}")]
    Oracle(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            line,
            msg: msg.into(),
        }
    }
}
