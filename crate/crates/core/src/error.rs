use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EdsError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("index {n} is divisible by the characteristic {p}")]
    Characteristic { n: u64, p: u64 },
    #[error("the section is torsion of order {order}")]
    TorsionSection { order: u64 },
    #[error("model is not minimal: {0}")]
    Minimality(String),
    #[error("model assumption violated: {0}")]
    ModelAssumption(String),
    #[error("new part is not effective: {0}")]
    Inversion(String),
    #[error("unsupported fiber: {0}")]
    UnsupportedFiber(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("place {0} is not uniform; refine it over a splitting field")]
    NonUniformPlace(String),
}

impl EdsError {
    /// Errors that indicate a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            EdsError::ModelAssumption(_)
                | EdsError::Inversion(_)
                | EdsError::Algebra(AlgebraError::InternalInconsistency(_))
        )
    }
}

pub type Result<T, E = EdsError> = std::result::Result<T, E>;
