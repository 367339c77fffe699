//! Math kernel for categorical sieve analysis of two-arm prevention trials
//! under the sievey-not-leaky (SNL) framework: domain types, the
//! parameter-to-profile mapping, feasibility constraints, plug-in
//! estimators, and model log-likelihoods.
//!
//! All operations are pure functions; values are immutable after
//! construction and safe to share across threads. The numeric kernel is
//! generic over the scalar type; the crate root re-exports `f64` aliases.

pub mod error;
pub mod likelihood;
pub mod params;
pub mod plugin;
pub mod profile;
pub mod scalar;
pub mod table;
pub mod target;

pub use error::{Result, SnlError};
pub use likelihood::{ln_binomial, ln_multinomial, log_likelihood, Phase};
pub use params::{feasibility_check, normalize_simplex, Feasibility, SIMPLEX_SLACK};
pub use plugin::{plugin_estimates, PluginEstimates, PluginReport};
pub use profile::{expected_counts, vaccine_profile};
pub use scalar::{ln_factorial, ln_gamma, Scalar};
pub use table::{FailureTable, LabelSidecar};
pub use target::TargetSpec;

/// `f64` aliases for the generic parameter types.
pub type SnlParams = params::SnlParams<f64>;
pub type DerivedRates = params::DerivedRates<f64>;
pub type SnlParams32 = params::SnlParams<f32>;
pub type DerivedRates32 = params::DerivedRates<f32>;
