//! Constrained maximum-likelihood fitting, likelihood-ratio tests against
//! the chi-squared(1) reference, and a generic permutation-null engine.

pub mod chi2;
pub mod error;
pub mod lrt;
pub mod mle;
pub mod perm;
pub mod result;

pub use chi2::{chi2_sf_1df, CHI2_1DF_95};
pub use error::{FitError, Result};
pub use lrt::{lrt, lrt_one_phase_detail, lrt_two_phase_detail, LrtDetail};
pub use mle::fit_mle;
pub use perm::permutation_null;
pub use result::{FitPhase, FitResult, TestResult, Variant};
