use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generators from different alphabets cannot be combined")]
    AlphabetMismatch,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid machine: {0}")]
    MachineValidation(String),
    #[error("family evaluation failed: {0}")]
    FamilyEvaluation(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("operation requires a truncated family")]
    Untruncated,
    #[error("triple contains a zero component")]
    ZeroInTriple,
    #[error("instance has {0} variables, above the truth-table cap")]
    TooManyVariables(usize),
    #[error("certificate extraction unavailable: {0}")]
    Extraction(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
