use eds_core::algebra::AlgebraError;
use eds_core::EdsError;

use crate::parse::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{context}: {source}")]
    Parse { context: String, source: ParseError },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] EdsError),
    #[error("replay mismatch: {0}")]
    Mismatch(String),
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Core(e.into())
    }
}

impl CliError {
    /// 1 for bad input, 2 for broken internal invariants.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_internal() => 2,
            CliError::Mismatch(_) => 2,
            _ => 1,
        }
    }
}
