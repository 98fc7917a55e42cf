use thiserror::Error;

/// Errors raised by the ternary arithmetic and geometry layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf3Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension {0} exceeds the supported maximum of {max}", max = crate::gf3::MAX_DIM)]
    DimensionTooLarge(usize),
    #[error("vector index {index} out of range for dimension {dim}")]
    IndexOutOfRange { dim: usize, index: u64 },
    #[error("trit {0} is not in {{0, 1, 2}}")]
    InvalidTrit(u8),
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("operation requires a nonempty subspace")]
    EmptySubspace,
    #[error("subspace dimension {k} out of range 0..={max}")]
    SubspaceDimension { k: usize, max: usize },
    #[error("affine subspace U is not contained in H")]
    NotContained,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Gf3Error> = std::result::Result<T, E>;
