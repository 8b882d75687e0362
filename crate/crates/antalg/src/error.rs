use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("algebra does not satisfy the antialgebra profile: {0}")]
    NotAntialgebra(String),
    #[error("bracket is not well defined on the quotient: {0}")]
    WellDefinedness(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("mixed-parity input: {0}")]
    MixedParity(String),
    #[error("non-homogeneous input: {0}")]
    NonHomogeneous(String),
    #[error("representation check failed: {0}")]
    RepCheck(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}
