use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to be
/// printed as a one-line diagnostic by the command-line front end.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside the domain of the operation (t ≤ 0, a t-norm
    /// argument outside [0, 1], a non-finite coordinate).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid carrier: {0}")]
    InvalidCarrier(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid t-grid: {0}")]
    InvalidGrid(String),
    #[error("invalid fuzzy metric: {0}")]
    InvalidMetric(String),
    #[error("invalid mapping: {0}")]
    InvalidMap(String),
    /// A mapping produced a point outside its declared codomain carrier.
    #[error("mapping `{map}` left its codomain: {detail}")]
    Codomain { map: String, detail: String },
    /// Every tuple of a hypothesis sample was skipped.
    #[error("empty sample: all {skipped} tuples were skipped")]
    EmptySample { skipped: usize },
    /// The operation was called with arguments that make it meaningless
    /// (empty trace, probe depth longer than the trace, ...).
    #[error("usage error: {0}")]
    Usage(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
