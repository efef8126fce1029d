use thiserror::Error;

/// Errors raised anywhere in the encoding pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1} qubits")]
    Dimension(usize, usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("routing error: {0}")]
    Route(String),

    #[error("parity error: {0}")]
    Parity(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("invalid basis: {0}")]
    Basis(String),

    #[error("verification failed: {0}")]
    Verify(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Machine-readable category, as printed by the command-line tool.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Parse(_) | Error::Io(_) => "parse",
            Error::Route(_) => "route",
            Error::Parity(_) => "parity",
            Error::Resource(_) => "resource",
            Error::Verify(_) => "verify-fail",
            Error::Dimension(..) | Error::Graph(_) | Error::Basis(_) => "parse",
        }
    }

    /// Process exit code associated with the category.
    pub fn exit_code(&self) -> i32 {
        match self.category() {
            "parse" => 2,
            "route" => 3,
            "parity" => 4,
            "resource" => 5,
            _ => 6,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
