use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),

    #[error("arity mismatch: {0}")]
    Arity(String),

    #[error("not a graph: complex has dimension {0}")]
    NotAGraph(usize),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not a chain map: {0}")]
    NotAChainMap(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource cap exceeded: {needed} generators needed, budget is {budget}")]
    ResourceCap { needed: usize, budget: usize },

    #[error("input not certified: {0}")]
    NotCertified(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
