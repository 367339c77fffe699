//! Plug-in estimators for the primary parameters.

use crate::error::{Result, SnlError};
use crate::params::{feasibility_check, DerivedRates, SnlParams};
use crate::scalar::Scalar;
use crate::table::FailureTable;
use crate::target::TargetSpec;
use serde::{Deserialize, Serialize};

/// Plug-in estimates plus a validity report.
///
/// The naive estimators will not always satisfy all simultaneous model
/// constraints; violations are flagged rather than silently repaired.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PluginEstimates<S> {
    pub params: SnlParams<S>,
    pub derived: DerivedRates<S>,
    pub report: PluginReport,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluginReport {
    /// Raw efficacy estimate was negative and was clamped to 0.
    pub i_e_clamped: bool,
    /// Estimated p_s fell outside [0,1] and was clamped.
    pub p_s_clamped: bool,
    /// Estimated p_2 fell outside [0,1].
    pub p_2_out_of_range: bool,
    /// The raw q estimates did not sum to 1 (before renormalization) or had
    /// negative entries (floored at 0).
    pub q_invalid: bool,
    /// The (I_E, p_cG, p_s) triple violates the feasibility bound.
    pub infeasible: bool,
}

impl PluginReport {
    pub fn all_constraints_satisfied(&self) -> bool {
        !(self.i_e_clamped
            || self.p_s_clamped
            || self.p_2_out_of_range
            || self.q_invalid
            || self.infeasible)
    }
}

/// Compute plug-in estimates from a failure table.
///
/// p̂_s = 1 − p̂_vG/p̂_pG, p̂_t = 1 − (1 − p̂_s)(1 − Î_E),
/// p̂_2 = 1 − Î_E/(p̂_cG p̂_t), q̂_j = ((1 − Î_E) p̂_vj − p̂_cj)/(p̂_cG p̂_t p̂_2).
///
/// With `assume_replacement_only`, Î_E is forced to 0. A negative raw Î_E is
/// clamped to 0 with `report.i_e_clamped` set.
pub fn plugin_estimates<S: Scalar>(
    table: &FailureTable,
    target: &TargetSpec,
    assume_replacement_only: bool,
) -> Result<PluginEstimates<S>> {
    if target.num_types() != table.num_failure_types() {
        return Err(SnlError::DimensionMismatch(format!(
            "target over {} types, table has {}",
            target.num_types(),
            table.num_failure_types()
        )));
    }
    let npf = table.placebo_failures();
    let nvf = table.vaccine_failures();
    if npf == 0 || nvf == 0 {
        return Err(SnlError::DegenerateData(
            "plug-in estimators need at least one failure in each arm".into(),
        ));
    }
    let mut clamped = false;
    let one = S::one();

    let to_s = |x: u64| S::c(x as f64);
    let p_c: Vec<S> = table.n_p[1..].iter().map(|&x| to_s(x) / to_s(npf)).collect();
    let p_v: Vec<S> = table.n_v[1..].iter().map(|&x| to_s(x) / to_s(nvf)).collect();
    let r_c0 = to_s(table.n_p[0]) / to_s(table.placebo_total());

    let i_e = if assume_replacement_only {
        S::zero()
    } else {
        let rate_v = to_s(nvf) / to_s(table.vaccine_total());
        let rate_p = to_s(npf) / to_s(table.placebo_total());
        let raw = one - rate_v / rate_p;
        if raw < S::zero() {
            clamped = true;
            S::zero()
        } else {
            raw
        }
    };
    let mut est = plugin_from_rates(&p_c, &p_v, i_e, r_c0, target)?;
    est.report.i_e_clamped = clamped;
    Ok(est)
}

/// Plug-in arithmetic on already-computed failure-type frequencies.
///
/// `p_c` and `p_v` are the per-arm conditional failure-type frequencies and
/// `i_e` the efficacy estimate (already clamped to [0,1)).
pub fn plugin_from_rates<S: Scalar>(
    p_c: &[S],
    p_v: &[S],
    i_e: S,
    r_c0: S,
    target: &TargetSpec,
) -> Result<PluginEstimates<S>> {
    let mut report = PluginReport::default();
    let one = S::one();
    let p_c = p_c.to_vec();
    let p_v = p_v.to_vec();

    let p_cg = target.targeted_sum(&p_c);
    let p_vg = target.targeted_sum(&p_v);
    if p_cg <= S::zero() {
        return Err(SnlError::DegenerateData(
            "no placebo failures in the targeted categories".into(),
        ));
    }
    let mut p_s = one - p_vg / p_cg;
    if p_s < S::zero() {
        report.p_s_clamped = true;
        p_s = S::zero();
    } else if p_s > one {
        report.p_s_clamped = true;
        p_s = one;
    }

    let p_t = one - (one - p_s) * (one - i_e);
    let p_2 = if p_t * p_cg > S::zero() {
        let raw = one - i_e / (p_cg * p_t);
        if raw < S::zero() || raw > one {
            report.p_2_out_of_range = true;
        }
        raw.max(S::zero()).min(one)
    } else {
        one
    };

    // q̂ over non-targeted types
    let denom = p_cg * p_t * p_2;
    let n_nt = target.num_types() - target.g();
    let mut q: Vec<S> = if denom > S::zero() {
        target
            .non_targeted()
            .map(|j| ((one - i_e) * p_v[j - 1] - p_c[j - 1]) / denom)
            .collect()
    } else {
        vec![one / S::c(n_nt as f64); n_nt]
    };
    let qsum: S = q.iter().copied().sum();
    if (qsum - one).abs() > S::c(1e-9) || q.iter().any(|&x| x < S::zero()) {
        report.q_invalid = true;
    }
    for x in q.iter_mut() {
        *x = x.max(S::zero());
    }
    let qsum: S = q.iter().copied().sum();
    if qsum > S::zero() {
        for x in q.iter_mut() {
            *x = *x / qsum;
        }
    } else {
        q = vec![one / S::c(n_nt as f64); n_nt];
    }

    let feas = feasibility_check(i_e, p_cg, p_s);
    if !feas.feasible {
        report.infeasible = true;
    }
    // project p_s onto the feasible interval so the returned params are valid
    let p_s_stored = if feas.feasible { p_s } else { feas.p_s_bound.min(one) };
    let params = SnlParams::new(p_c, p_s_stored, i_e, r_c0, q, target)?;
    let derived = crate::profile::vaccine_profile(&params, target)?;
    Ok(PluginEstimates { params, derived, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replacement_only_round_trip() {
        // placebo failures (80, 20), vaccine failures (40, 60), I_E = 0
        let table = FailureTable::new(vec![0, 80, 20], vec![0, 40, 60]).unwrap();
        let t = TargetSpec::single(1, 2).unwrap();
        let est = plugin_estimates::<f64>(&table, &t, true).unwrap();
        assert!((est.params.p_s - 0.5).abs() < 1e-12);
        assert!((est.derived.p_t - 0.5).abs() < 1e-12);
        assert!((est.derived.p_2 - 1.0).abs() < 1e-12);
        assert!((est.params.q[0] - 1.0).abs() < 1e-12);
        assert!(est.report.all_constraints_satisfied());
    }

    #[test]
    fn null_identity() {
        let table = FailureTable::new(vec![100, 80, 20], vec![100, 80, 20]).unwrap();
        let t = TargetSpec::single(1, 2).unwrap();
        let est = plugin_estimates::<f64>(&table, &t, false).unwrap();
        assert!(est.params.p_s.abs() < 1e-12);
        assert!(est.params.i_e.abs() < 1e-12);
    }

    #[test]
    fn negative_efficacy_is_clamped_with_warning() {
        // vaccine arm fails more often than placebo
        let table = FailureTable::new(vec![100, 10, 5], vec![80, 20, 10]).unwrap();
        let t = TargetSpec::single(1, 2).unwrap();
        let est = plugin_estimates::<f64>(&table, &t, false).unwrap();
        assert!(est.report.i_e_clamped);
        assert_eq!(est.params.i_e, 0.0);
    }

    #[test]
    fn degenerate_margins_error() {
        let table = FailureTable::new(vec![100, 0, 0], vec![90, 5, 5]).unwrap();
        let t = TargetSpec::single(1, 2).unwrap();
        assert!(matches!(
            plugin_estimates::<f64>(&table, &t, false),
            Err(SnlError::DegenerateData(_))
        ));
    }
}
