use thiserror::Error;

/// Errors surfaced by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported inverse: {0} is not a nonzero monomial")]
    UnsupportedInverse(String),

    #[error("unsupported rank {rank} (limit {limit})")]
    UnsupportedRank { rank: usize, limit: usize },

    #[error("unsupported residue: {0}")]
    UnsupportedResidue(String),

    #[error("malformed point: {0}")]
    MalformedPoint(String),

    #[error("chart mismatch: {0}")]
    ChartMismatch(String),

    #[error("presentation error: {0}")]
    Presentation(String),

    #[error("diagram too small: {0}")]
    DiagramTooSmall(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("certification failed for generator {generator}: {reason}")]
    Certification { generator: String, reason: String },

    #[error("strata mismatch: {0}")]
    StrataMismatch(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("invalid fan: {0}")]
    InvalidFan(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
