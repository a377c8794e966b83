use std::fmt;

/// Syntax error in a polynomial literal, located by byte offset.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.offset, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("polynomials belong to different algebra contexts")]
    ContextMismatch,
    #[error("invalid variable name {0:?}")]
    InvalidVariableName(String),
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown derivation {0:?}")]
    UnknownDerivation(String),
    #[error("duplicate derivation {0:?}")]
    DuplicateDerivation(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("invalid operation: {0}")]
    InvalidOperation(String),
    #[error("{what} cap exceeded: {requested} > {cap}")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    #[error("exhaustive budget exceeded: {required} tuples > {budget}")]
    BudgetExceeded { required: String, budget: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("subset DP and naive permutation sum disagree on trial {trial}")]
    CrossCheckMismatch { trial: u64 },
    #[error("problem file: {0}")]
    Problem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
