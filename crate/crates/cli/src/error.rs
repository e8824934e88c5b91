use thiserror::Error;

/// Everything the front end can fail with. All of these map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("not allowed in this context: {0}")]
    Context(String),
    #[error(transparent)]
    Algebra(#[from] quiveralg::Error),
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;
