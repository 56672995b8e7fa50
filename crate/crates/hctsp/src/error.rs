use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported {what}: {value}")]
    Unsupported { what: &'static str, value: String },

    #[error("city index {index} out of range for instance of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("not a valid permutation of 0..{n}")]
    InvalidPermutation { n: usize },

    #[error("tour length {got} does not match instance size {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
