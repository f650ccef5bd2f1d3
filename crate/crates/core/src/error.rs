use thiserror::Error;

use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilError {
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is {rows}x{cols}, expected square of side {dim}")]
    NotSquare { rows: usize, cols: usize, dim: usize },
    #[error("endomorphism is not nilpotent: its {0}-th power is nonzero")]
    NotNilpotent(usize),
    #[error("morphism matrix is {got:?}, expected {expected:?}")]
    ShapeMismatch { got: (usize, usize), expected: (usize, usize) },
    #[error("matrix does not intertwine the endomorphisms (y*f != f*x)")]
    NotIntertwining,
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("Jordan block size must be positive")]
    ZeroBlock,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("the zero object is not allowed here")]
    ZeroObject,
    #[error("not a short exact sequence: {0}")]
    NotExact(String),
    #[error("morphism is not a monomorphism")]
    NotMonic,
    #[error("morphism is not an epimorphism")]
    NotEpic,
    #[error("object is not indecomposable: {0}")]
    NotIndecomposable(String),
    #[error("no cyclic generator exists")]
    DegenerateGenerator,
}

impl NilError {
    /// Stable machine-readable tag used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            NilError::InvalidPrime(_) => "InvalidPrime",
            NilError::Parse(_) => "Parse",
            NilError::FieldMismatch(..) => "FieldMismatch",
            NilError::DimensionMismatch(_) => "DimensionMismatch",
            NilError::NotSquare { .. } => "NotSquare",
            NilError::NotNilpotent(_) => "NotNilpotent",
            NilError::ShapeMismatch { .. } => "ShapeMismatch",
            NilError::NotIntertwining => "NotIntertwining",
            NilError::NotComposable => "NotComposable",
            NilError::ZeroBlock => "ZeroBlock",
            NilError::NotInvertible => "NotInvertible",
            NilError::ZeroObject => "ZeroObject",
            NilError::NotExact(_) => "NotExact",
            NilError::NotMonic => "NotMonic",
            NilError::NotEpic => "NotEpic",
            NilError::NotIndecomposable(_) => "NotIndecomposable",
            NilError::DegenerateGenerator => "DegenerateGenerator",
        }
    }
}

pub type Result<T> = std::result::Result<T, NilError>;
