//! Result types shared by the fitting and testing layers.

use serde::{Deserialize, Serialize};
use snl_core::{DerivedRates, SnlParams};

/// Model variant being fitted or tested against the all-or-none null.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// The null structure: treated failure composition equals p_c.
    AllOrNone,
    /// General some-or-none model: I_E at its plug-in, q estimated.
    SomeOrNone,
    /// I_E constrained to 0; every avoided failure is replaced.
    ReplacementOnly,
    /// Replacement composition fixed at the placebo-derived q_c.
    InsertOnly,
}

/// Which data enter the likelihood being maximized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitPhase {
    /// Full joint likelihood, all parameters free.
    OnePhase,
    /// p_c, I_E and r_c0 fixed at plug-ins; conditional vaccine-arm
    /// likelihood maximized over the remaining parameters.
    TwoPhase,
}

/// A maximum-likelihood fit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FitResult {
    /// Fitted parameters, projected into the feasible region when the
    /// unconstrained optimum fell outside it (see `boundary`).
    pub params: SnlParams,
    pub derived: DerivedRates,
    /// Maximized log-likelihood (of the phase's objective).
    pub log_lik: f64,
    pub variant: Variant,
    pub phase: FitPhase,
    pub converged: bool,
    pub iterations: usize,
    /// The optimum sits on (or beyond) the feasibility boundary; Wilks-type
    /// asymptotics do not apply there.
    pub boundary: bool,
    /// Raw sieve-strength estimate before projection; may be negative for
    /// the extended one-phase profile.
    pub p_s_hat: f64,
}

/// Outcome of a hypothesis test or Bayes-factor evaluation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TestResult {
    pub method: String,
    pub statistic: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bayes_factor: Option<f64>,
    /// Monte-Carlo standard error (of ln BF for Bayes factors).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mc_se: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    /// Null statistics from a permutation run, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub null_draws: Option<Vec<f64>>,
}

impl TestResult {
    pub fn new(method: impl Into<String>, statistic: f64) -> Self {
        TestResult {
            method: method.into(),
            statistic,
            p_value: None,
            bayes_factor: None,
            mc_se: None,
            seed: None,
            b: None,
            null_draws: None,
        }
    }
}
