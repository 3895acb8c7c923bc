use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular or not of full row rank")]
    Singular,

    #[error("not a sublattice: row {row} of the smaller lattice has non-integral coordinates")]
    NotSublattice { row: usize },

    #[error("fixture {file}: invariant `{invariant}` violated: {detail}")]
    Fixture {
        file: String,
        invariant: String,
        detail: String,
    },

    #[error("element is not in the span of the basis: {0}")]
    NotInSpan(String),

    #[error("exponent reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("numerical precision exhausted: {0}")]
    Precision(String),

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("json error in {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn fixture(file: &str, invariant: &str, detail: impl Into<String>) -> Self {
        Error::Fixture {
            file: file.to_string(),
            invariant: invariant.to_string(),
            detail: detail.into(),
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
