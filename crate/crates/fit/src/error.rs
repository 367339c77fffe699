use snl_core::SnlError;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum FitError {
    #[error(transparent)]
    Core(#[from] SnlError),

    #[error("optimizer failed to converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("invalid test configuration: {0}")]
    InvalidConfig(String),

    #[error("statistic failed on {failures} of {attempts} permutation draws (cap {cap})")]
    PermutationExhausted { failures: usize, attempts: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, FitError>;
