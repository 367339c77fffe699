//! The parameter-to-vaccine-profile mapping and expected counts.

use crate::error::{Result, SnlError};
use crate::params::{require_feasible, DerivedRates, SnlParams};
use crate::scalar::Scalar;
use crate::target::TargetSpec;

/// Map primary parameters to the treated-arm profile.
///
/// Targeted types j: p_vj = p_cj (1 − p_s).
/// Non-targeted types j: p_vj = (p_cj + (p_cG(1 − (1 − p_s)(1 − I_E)) − I_E) q_j) / (1 − I_E).
/// Non-failure: r_v0 = 1 − (1 − r_c0)(1 − I_E).
pub fn vaccine_profile<S: Scalar>(
    params: &SnlParams<S>,
    target: &TargetSpec,
) -> Result<DerivedRates<S>> {
    if params.p_c.len() != target.num_types() {
        return Err(SnlError::DimensionMismatch(format!(
            "p_c has {} entries for {} failure types",
            params.p_c.len(),
            target.num_types()
        )));
    }
    let one = S::one();
    let p_cg = params.p_cg(target);
    require_feasible(params.i_e, p_cg, params.p_s)?;

    let p_t = one - (one - params.p_s) * (one - params.i_e);
    let p_2 = if p_t * p_cg > S::zero() {
        one - params.i_e / (p_cg * p_t)
    } else if params.i_e == S::zero() {
        // limit convention: no take or no targeted mass, nothing to replace
        one
    } else {
        return Err(SnlError::DivisionByZero("p_2 = 1 - I_E/(p_cG p_t)"));
    };

    // reallocated mass: p_cG p_t p_2 expressed in primary parameters
    let realloc = p_cg * p_t - params.i_e;
    let mut p_v = vec![S::zero(); target.num_types()];
    for j in target.targeted() {
        p_v[j - 1] = params.p_c[j - 1] * (one - params.p_s);
    }
    for (qi, j) in target.non_targeted().enumerate() {
        p_v[j - 1] = (params.p_c[j - 1] + realloc * params.q[qi]) / (one - params.i_e);
    }
    let r_v0 = one - (one - params.r_c0) * (one - params.i_e);
    Ok(DerivedRates { p_t, p_2, p_v, r_v0 })
}

/// Expected treated-arm counts given counterfactual counts (index 0 = no
/// failure):
///   targeted j: n_cj (1 − p_t)
///   category 0: n_c0 + n_cG p_t (1 − p_2)
///   non-targeted j: n_cj + n_cG p_t p_2 q_j
pub fn expected_counts<S: Scalar>(
    params: &SnlParams<S>,
    target: &TargetSpec,
    counterfactual: &[S],
) -> Result<Vec<S>> {
    if counterfactual.len() != target.num_types() + 1 {
        return Err(SnlError::DimensionMismatch(format!(
            "counterfactual has {} entries for {} categories",
            counterfactual.len(),
            target.num_types() + 1
        )));
    }
    let rates = vaccine_profile(params, target)?;
    let one = S::one();
    let n_cg: S = target.targeted().map(|j| counterfactual[j]).sum();
    let mut out = vec![S::zero(); counterfactual.len()];
    out[0] = counterfactual[0] + n_cg * rates.p_t * (one - rates.p_2);
    for j in target.targeted() {
        out[j] = counterfactual[j] * (one - rates.p_t);
    }
    for (qi, j) in target.non_targeted().enumerate() {
        out[j] = counterfactual[j] + n_cg * rates.p_t * rates.p_2 * params.q[qi];
    }
    Ok(out)
}
