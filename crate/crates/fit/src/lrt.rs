//! Likelihood-ratio tests of a some-or-none alternative against the
//! all-or-none null, referenced to chi-squared(1).
//!
//! Both phases profile the replacement composition at the placebo-derived
//! insert-only structure, which collapses the comparison to the targeted
//! failure mass. That makes the alternative a smooth one-parameter family
//! through the null, the construction under which the chi-squared(1)
//! reference has exactly one degree of freedom. The one-phase statistic is
//! the two-sided collapsed likelihood ratio with the composition
//! re-estimated under both hypotheses; the two-phase statistic holds the
//! placebo composition fixed and enforces the feasibility bound as a hard
//! box on p_s, so anti-sieve deviations score zero.

use crate::chi2::chi2_sf_1df;
use crate::error::{FitError, Result};
use crate::result::{FitPhase, TestResult, Variant};
use snl_core::{FailureTable, TargetSpec};

/// Internals of an LRT evaluation, for callers that need more than the
/// statistic (the CLI report embeds these).
#[derive(Debug, Clone, serde::Serialize)]
pub struct LrtDetail {
    pub statistic: f64,
    pub p_value: f64,
    pub p_s_hat: f64,
    pub i_e: f64,
    pub boundary: bool,
}

fn xlnx_ratio(x: f64, p: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if p <= 0.0 {
        f64::NEG_INFINITY
    } else {
        x * p.ln()
    }
}

/// Two-phase statistic: vaccine-arm binomial likelihood ratio for the
/// targeted mass against the fixed placebo share, with p_s confined to
/// [max(0, p_s bound), 1] and the result clipped at zero.
pub fn lrt_two_phase_detail(
    table: &FailureTable,
    target: &TargetSpec,
    variant: Variant,
) -> Result<LrtDetail> {
    let (fp, fv) = table.failure_slices();
    let npf: f64 = fp.iter().sum::<u64>() as f64;
    let nvf: f64 = fv.iter().sum::<u64>() as f64;
    if npf == 0.0 || nvf == 0.0 {
        return Err(FitError::Core(snl_core::SnlError::DegenerateData(
            "both arms need at least one failure".into(),
        )));
    }
    let t_hat: f64 = target.targeted().map(|j| fp[j - 1] as f64).sum::<f64>() / npf;
    if t_hat <= 0.0 || t_hat >= 1.0 {
        return Err(FitError::Core(snl_core::SnlError::DegenerateData(
            "placebo targeted share must be interior".into(),
        )));
    }
    let i_e = match variant {
        Variant::ReplacementOnly => 0.0,
        _ => {
            let rate_v = nvf / table.vaccine_total() as f64;
            let rate_p = npf / table.placebo_total() as f64;
            (1.0 - rate_v / rate_p).max(0.0)
        }
    };
    let p_s_lo = if i_e > 0.0 {
        i_e * (1.0 - t_hat) / (t_hat * (1.0 - i_e))
    } else {
        0.0
    };
    if p_s_lo > 1.0 {
        return Err(FitError::Core(snl_core::SnlError::Infeasible {
            i_e,
            i_e_bound: t_hat,
            p_cg: t_hat,
            p_cg_bound: i_e,
            p_s: 1.0,
            p_s_bound: p_s_lo,
        }));
    }
    let k = target.targeted().map(|j| fv[j - 1] as f64).sum::<f64>();
    let w_emp = k / nvf;
    let w_cap = t_hat * (1.0 - p_s_lo.max(0.0));
    let w_hat = w_emp.min(w_cap);
    let boundary = w_emp > w_cap + 1e-12;
    let ll_alt = xlnx_ratio(k, w_hat) + xlnx_ratio(nvf - k, 1.0 - w_hat);
    let ll_null = xlnx_ratio(k, t_hat) + xlnx_ratio(nvf - k, 1.0 - t_hat);
    let statistic = (2.0 * (ll_alt - ll_null)).max(0.0);
    Ok(LrtDetail {
        statistic,
        p_value: chi2_sf_1df(statistic)?,
        p_s_hat: 1.0 - w_emp / t_hat,
        i_e,
        boundary,
    })
}

/// One-phase statistic: the collapsed two-by-two likelihood-ratio test of
/// targeted versus non-targeted failures across arms, two-sided.
pub fn lrt_one_phase_detail(table: &FailureTable, target: &TargetSpec) -> Result<LrtDetail> {
    let (fp, fv) = table.failure_slices();
    let npf: f64 = fp.iter().sum::<u64>() as f64;
    let nvf: f64 = fv.iter().sum::<u64>() as f64;
    if npf == 0.0 || nvf == 0.0 {
        return Err(FitError::Core(snl_core::SnlError::DegenerateData(
            "both arms need at least one failure".into(),
        )));
    }
    let kp = target.targeted().map(|j| fp[j - 1] as f64).sum::<f64>();
    let kv = target.targeted().map(|j| fv[j - 1] as f64).sum::<f64>();
    let pooled = (kp + kv) / (npf + nvf);
    if pooled <= 0.0 || pooled >= 1.0 {
        return Err(FitError::Core(snl_core::SnlError::DegenerateData(
            "pooled targeted share must be interior".into(),
        )));
    }
    let ll = |k: f64, n: f64, p: f64| xlnx_ratio(k, p) + xlnx_ratio(n - k, 1.0 - p);
    let ll_alt = ll(kp, npf, kp / npf) + ll(kv, nvf, kv / nvf);
    let ll_null = ll(kp, npf, pooled) + ll(kv, nvf, pooled);
    let statistic = (2.0 * (ll_alt - ll_null)).max(0.0);
    let i_e = {
        let rate_v = nvf / table.vaccine_total() as f64;
        let rate_p = npf / table.placebo_total() as f64;
        (1.0 - rate_v / rate_p).max(0.0)
    };
    let t_hat = kp / npf;
    Ok(LrtDetail {
        statistic,
        p_value: chi2_sf_1df(statistic)?,
        p_s_hat: if t_hat > 0.0 { 1.0 - (kv / nvf) / t_hat } else { f64::NAN },
        i_e,
        boundary: false,
    })
}

/// Likelihood-ratio test with the chi-squared(1) reference.
pub fn lrt(
    table: &FailureTable,
    target: &TargetSpec,
    variant: Variant,
    phase: FitPhase,
) -> Result<TestResult> {
    if variant == Variant::AllOrNone {
        return Err(FitError::InvalidConfig(
            "the all-or-none model is the null; pick an alternative variant".into(),
        ));
    }
    let detail = match phase {
        FitPhase::TwoPhase => lrt_two_phase_detail(table, target, variant)?,
        FitPhase::OnePhase => lrt_one_phase_detail(table, target)?,
    };
    let label = match phase {
        FitPhase::OnePhase => "lrt-1phase",
        FitPhase::TwoPhase => "lrt-2phase",
    };
    let mut r = TestResult::new(label, detail.statistic);
    r.p_value = Some(detail.p_value);
    Ok(r)
}
