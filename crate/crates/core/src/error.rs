use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input is not valid UTF-8")]
    Utf8(#[from] std::str::Utf8Error),

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("permutation is not a bijection on 0..{0}")]
    InvalidPermutation(usize),

    #[error("vector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("duplicate graph name {0:?}")]
    DuplicateName(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eigensolver did not converge (worst residual {residual:e})")]
    NoConvergence { residual: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
