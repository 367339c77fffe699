//! Primary model parameters and the feasibility constraint.

use crate::error::{Result, SnlError};
use crate::scalar::Scalar;
use crate::target::TargetSpec;
use serde::{Deserialize, Serialize};

/// Probability vectors whose sum deviates from 1 by at most this much are
/// renormalized; larger deviations are rejected. Wide enough to accept
/// rounded published vectors (e.g. a sum of 1.000006).
pub const SIMPLEX_SLACK: f64 = 1e-5;

/// Normalize `v` when its sum is within `SIMPLEX_SLACK` of 1, else error.
pub fn normalize_simplex<S: Scalar>(v: &mut [S]) -> Result<()> {
    if v.iter().any(|&x| x < S::zero()) {
        return Err(SnlError::InvalidProbability {
            name: "simplex entry",
            value: v
                .iter()
                .find(|&&x| x < S::zero())
                .and_then(|x| x.to_f64())
                .unwrap_or(f64::NAN),
        });
    }
    let sum: S = v.iter().copied().sum();
    let dev = (sum - S::one()).abs().to_f64().unwrap_or(f64::NAN);
    if !(dev <= SIMPLEX_SLACK) {
        return Err(SnlError::NotASimplex { sum: sum.to_f64().unwrap_or(f64::NAN), tol: SIMPLEX_SLACK });
    }
    for x in v.iter_mut() {
        *x = *x / sum;
    }
    Ok(())
}

/// Primary parameters of a some-or-none model:
/// counterfactual failure simplex, sieve effect strength, intervention
/// efficacy, counterfactual non-failure probability, and the replacement
/// distribution over non-targeted types.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnlParams<S> {
    pub p_c: Vec<S>,
    pub p_s: S,
    #[serde(rename = "I_E")]
    pub i_e: S,
    pub r_c0: S,
    pub q: Vec<S>,
}

impl<S: Scalar> SnlParams<S> {
    /// Validate and normalize. `q` has one entry per non-targeted type, in
    /// the order produced by [`TargetSpec::non_targeted`].
    ///
    /// `r_c0 = 0` is accepted so failure-only tables (no category-0 counts)
    /// can be represented.
    pub fn new(mut p_c: Vec<S>, p_s: S, i_e: S, r_c0: S, mut q: Vec<S>, target: &TargetSpec) -> Result<Self> {
        if p_c.len() != target.num_types() {
            return Err(SnlError::DimensionMismatch(format!(
                "p_c has {} entries for {} failure types",
                p_c.len(),
                target.num_types()
            )));
        }
        if q.len() != target.num_types() - target.g() {
            return Err(SnlError::DimensionMismatch(format!(
                "q has {} entries for {} non-targeted types",
                q.len(),
                target.num_types() - target.g()
            )));
        }
        normalize_simplex(&mut p_c)?;
        normalize_simplex(&mut q)?;
        for (name, v) in [("p_s", p_s), ("I_E", i_e), ("r_c0", r_c0)] {
            let f = v.to_f64().unwrap_or(f64::NAN);
            if !(0.0..=1.0).contains(&f) {
                return Err(SnlError::InvalidProbability { name, value: f });
            }
        }
        if i_e == S::one() || r_c0 == S::one() {
            return Err(SnlError::InvalidProbability {
                name: if i_e == S::one() { "I_E" } else { "r_c0" },
                value: 1.0,
            });
        }
        let params = SnlParams { p_c, p_s, i_e, r_c0, q };
        let p_cg = target.targeted_sum(&params.p_c);
        feasibility_check(params.i_e, p_cg, params.p_s).into_result()?;
        Ok(params)
    }

    /// Targeted mass p_cG under `target`.
    pub fn p_cg(&self, target: &TargetSpec) -> S {
        target.targeted_sum(&self.p_c)
    }
}

/// Derived quantities of a some-or-none model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivedRates<S> {
    /// Take rate p_t = 1 − (1 − p_s)(1 − I_E).
    pub p_t: S,
    /// Cause replacement rate p_2 = 1 − I_E / (p_cG · p_t).
    pub p_2: S,
    /// Treated-arm failure-type simplex.
    pub p_v: Vec<S>,
    /// Treated-arm non-failure probability.
    pub r_v0: S,
}

/// Outcome of the Appendix-style feasibility check, with the three
/// equivalent one-sided bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Feasibility<S> {
    pub feasible: bool,
    /// Slack of the defining form p_cG(1 − (1 − p_s)(1 − I_E)) − I_E.
    pub slack: S,
    /// Largest feasible I_E given (p_cG, p_s).
    pub i_e_bound: S,
    /// Smallest feasible p_cG given (I_E, p_s).
    pub p_cg_bound: S,
    /// Smallest feasible p_s given (I_E, p_cG).
    pub p_s_bound: S,
}

impl<S: Scalar> Feasibility<S> {
    pub fn into_result(self) -> Result<()> {
        if self.feasible {
            Ok(())
        } else {
            Err(SnlError::Infeasible {
                i_e: f64::NAN,
                i_e_bound: self.i_e_bound.to_f64().unwrap_or(f64::NAN),
                p_cg: f64::NAN,
                p_cg_bound: self.p_cg_bound.to_f64().unwrap_or(f64::NAN),
                p_s: f64::NAN,
                p_s_bound: self.p_s_bound.to_f64().unwrap_or(f64::NAN),
            })
        }
    }
}

/// Check I_E ≤ p_cG(1 − (1 − p_s)(1 − I_E)) and report the equivalent
/// one-sided bounds on each of I_E, p_cG, p_s. Total on [0,1]^3.
pub fn feasibility_check<S: Scalar>(i_e: S, p_cg: S, p_s: S) -> Feasibility<S> {
    let one = S::one();
    let take = one - (one - p_s) * (one - i_e); // p_t
    let slack = p_cg * take - i_e;
    let denom_ie = one - p_cg * (one - p_s);
    let i_e_bound = if denom_ie > S::zero() { p_cg * p_s / denom_ie } else { one };
    let denom_pcg = p_s + i_e * (one - p_s);
    let p_cg_bound = if denom_pcg > S::zero() { i_e / denom_pcg } else { S::zero() };
    // smallest feasible p_s; may exceed 1 (or be infinite), meaning no
    // p_s in [0,1] satisfies the bound for the given (I_E, p_cG)
    let p_s_bound = if i_e == S::zero() {
        S::zero()
    } else if p_cg > S::zero() && i_e < one {
        i_e * (one - p_cg) / (p_cg * (one - i_e))
    } else {
        S::infinity()
    };
    Feasibility { feasible: slack >= -S::c(1e-12), slack, i_e_bound, p_cg_bound, p_s_bound }
}

/// Convenience wrapper that fills in the offending values on failure.
pub fn require_feasible<S: Scalar>(i_e: S, p_cg: S, p_s: S) -> Result<Feasibility<S>> {
    let f = feasibility_check(i_e, p_cg, p_s);
    if f.feasible {
        Ok(f)
    } else {
        Err(SnlError::Infeasible {
            i_e: i_e.to_f64().unwrap_or(f64::NAN),
            i_e_bound: f.i_e_bound.to_f64().unwrap_or(f64::NAN),
            p_cg: p_cg.to_f64().unwrap_or(f64::NAN),
            p_cg_bound: f.p_cg_bound.to_f64().unwrap_or(f64::NAN),
            p_s: p_s.to_f64().unwrap_or(f64::NAN),
            p_s_bound: f.p_s_bound.to_f64().unwrap_or(f64::NAN),
        })
    }
}
