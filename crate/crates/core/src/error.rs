use thiserror::Error;

use crate::arith::{Int, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("Gram matrix is not symmetric")]
    NotSymmetric,

    #[error("Gram matrix is degenerate")]
    Degenerate,

    #[error("zero vector is not allowed here")]
    ZeroVector,

    #[error("vector {0:?} is not primitive")]
    NotPrimitive(Vector),

    #[error("vector {vector:?} has non-positive norm {norm}")]
    NonPositiveNorm { vector: Vector, norm: Int },

    #[error("vector {0:?} does not satisfy the crystallographic condition")]
    NotCrystallographic(Vector),

    #[error("vector is not timelike (norm {0})")]
    NotTimelike(String),

    #[error("vector is not isotropic (norm {0})")]
    NotIsotropic(String),

    #[error("mirror of {0:?} passes through the cusp")]
    MirrorThroughCusp(Vector),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("root set is empty")]
    EmptyRootSet,

    #[error("root set does not span the ambient space (rank {rank} < {dim})")]
    NotSpanning { rank: usize, dim: usize },

    #[error("root set is obtuse: S(r{i}, r{j}) = {value} > 0")]
    Obtuse { i: usize, j: usize, value: Int },

    #[error("roots r{0} and r{1} are proportional")]
    Proportional(usize, usize),

    #[error("Gram graph of the root set is disconnected")]
    Disconnected,

    #[error("wrong signature: {0}")]
    WrongSignature(String),

    #[error("controller lies on the mirror of root {0:?}")]
    ControllerOnMirror(Vector),

    #[error("mirrors are not parallel at infinity")]
    NotParallel,

    #[error("common fixed space has dimension {0} > 2; isotropic vector search is indeterminate")]
    IndeterminateFixedSpace(usize),

    #[error("denominator identity fails at component {component:?}: {detail}")]
    IdentityMismatch { component: Vec<i64>, detail: String },

    #[error("lattice Weyl vector required but absent")]
    MissingWeylVector,

    #[error("integer overflow converting {0}")]
    Overflow(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
