use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by graph parsing, algebra construction and form classification.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: self-loop on vertex `{vertex}`")]
    SelfLoop { line: usize, vertex: String },
    #[error("line {line}: expected `u v` or `vertex u`, found {found} token(s)")]
    MalformedLine { line: usize, found: usize },
    #[error("graph document declares no vertices")]
    EmptyGraph,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("{what} has {size} points, above the search bound {bound}")]
    SizeBound {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("free Lie algebra degree {degree} has dimension {dim}, above the budget {cap}")]
    BudgetExceeded { degree: usize, dim: usize, cap: usize },
    #[error("nilpotency class must be at least 1")]
    InvalidClass,
    #[error("permutation is not an automorphism of the graph")]
    NotAutomorphism,
    #[error("vertex scale for `{0}` is zero")]
    ZeroScale(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid descent datum: {0}")]
    InvalidDatum(String),
    #[error("invalid document: {0}")]
    InvalidDocument(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeBound { .. } | Error::BudgetExceeded { .. } => 2,
            _ => 1,
        }
    }
}
