use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("operands live in different sign systems")]
    ContextMismatch,

    #[error("invalid sign system: {0}")]
    InvalidSignSystem(String),

    #[error("substitution does not preserve the relation x{i}x{j} - e x{j}x{i}")]
    RelationViolation { i: usize, j: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid quadric: {0}")]
    InvalidQuadric(String),

    #[error("the quadric is not preserved by the sign automorphism")]
    SigmaMovesQuadric,

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("matrix factorization is not reduced (scalar entry at {matrix}[{row}][{col}])")]
    NotReduced {
        matrix: &'static str,
        row: usize,
        col: usize,
    },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("relative mutation needs an isolated vertex distinct from {target} and {by}")]
    NoIsolatedVertex { target: usize, by: usize },

    #[error("relative mutation needs two distinct vertices")]
    SameVertex,

    #[error("unsupported size {got} (supported: {supported})")]
    UnsupportedSize { got: usize, supported: &'static str },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
