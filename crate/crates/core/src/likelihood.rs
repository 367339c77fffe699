//! Joint log-likelihood of a failure table under a some-or-none model.

use crate::error::{Result, SnlError};
use crate::params::SnlParams;
use crate::profile::vaccine_profile;
use crate::scalar::{ln_factorial, Scalar};
use crate::table::FailureTable;
use crate::target::TargetSpec;
use serde::{Deserialize, Serialize};

/// Which likelihood factors to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    /// Full joint likelihood: both non-failure binomials and both
    /// failure-type multinomials.
    OnePhase,
    /// Conditional second-phase likelihood: the vaccine-arm failure-type
    /// multinomial only, evaluated at fixed p_c. The non-failure binomial
    /// terms cancel in ratios when I_E is fixed and are omitted.
    TwoPhaseConditional,
}

/// ln of the multinomial pmf. Zero-probability categories with positive
/// counts yield −∞, never an error.
pub fn ln_multinomial<S: Scalar>(counts: &[u64], probs: &[S]) -> S {
    debug_assert_eq!(counts.len(), probs.len());
    let n: u64 = counts.iter().sum();
    let mut ll = ln_factorial::<S>(n);
    for (&x, &p) in counts.iter().zip(probs) {
        if x == 0 {
            continue;
        }
        ll = ll - ln_factorial::<S>(x);
        if p <= S::zero() {
            return S::neg_infinity();
        }
        ll = ll + S::c(x as f64) * p.ln();
    }
    ll
}

/// ln of the binomial pmf for `k` successes in `n` trials.
pub fn ln_binomial<S: Scalar>(k: u64, n: u64, p: S) -> S {
    ln_multinomial(&[k, n - k], &[p, S::one() - p])
}

/// Evaluate the model log-likelihood of `table`.
///
/// `OnePhase` multiplies the non-failure binomials for both arms by the
/// placebo and vaccine failure-type multinomials. `TwoPhaseConditional`
/// evaluates only the vaccine-arm multinomial at the profile implied by
/// `params` (p_c fixed).
pub fn log_likelihood<S: Scalar>(
    table: &FailureTable,
    params: &SnlParams<S>,
    target: &TargetSpec,
    phase: Phase,
) -> Result<S> {
    if table.num_failure_types() != target.num_types() {
        return Err(SnlError::DimensionMismatch(format!(
            "table has {} failure types, target expects {}",
            table.num_failure_types(),
            target.num_types()
        )));
    }
    let rates = vaccine_profile(params, target)?;
    let (fp, fv) = table.failure_slices();
    let lv = ln_multinomial(fv, &rates.p_v);
    match phase {
        Phase::TwoPhaseConditional => Ok(lv),
        Phase::OnePhase => {
            let lp = ln_multinomial(fp, &params.p_c);
            let bp = ln_binomial(table.n_p[0], table.placebo_total(), params.r_c0);
            let bv = ln_binomial(table.n_v[0], table.vaccine_total(), rates.r_v0);
            Ok(bp + bv + lp + lv)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_table() -> (FailureTable, TargetSpec) {
        // placebo failures (3,1), vaccine failures (2,2)
        let t = FailureTable::new(vec![6, 3, 1], vec![6, 2, 2]).unwrap();
        let spec = TargetSpec::single(1, 2).unwrap();
        (t, spec)
    }

    #[test]
    fn matches_direct_factorial_evaluation() {
        let (table, target) = small_table();
        let params =
            SnlParams::new(vec![0.7, 0.3], 0.4, 0.0, 0.6, vec![1.0], &target).unwrap();
        let rates = vaccine_profile(&params, &target).unwrap();

        // independent direct evaluation with factorials
        let fact = |n: u64| (1..=n).map(|k| k as f64).product::<f64>().max(1.0);
        let mult = |x: &[u64], p: &[f64]| {
            let n: u64 = x.iter().sum();
            fact(n) / x.iter().map(|&k| fact(k)).product::<f64>()
                * x.iter().zip(p).map(|(&k, &pi)| pi.powi(k as i32)).product::<f64>()
        };
        let binom = |k: u64, n: u64, p: f64| mult(&[k, n - k], &[p, 1.0 - p]);
        let expected = (binom(6, 10, 0.6)
            * binom(6, 10, rates.r_v0)
            * mult(&[3, 1], &[0.7, 0.3])
            * mult(&[2, 2], &rates.p_v))
        .ln();

        let got = log_likelihood(&table, &params, &target, Phase::OnePhase).unwrap();
        assert!((got - expected).abs() < 1e-10, "{got} vs {expected}");

        let cond: f64 =
            log_likelihood(&table, &params, &target, Phase::TwoPhaseConditional).unwrap();
        assert!((cond - mult(&[2, 2], &rates.p_v).ln()).abs() < 1e-10);
    }

    #[test]
    fn zero_probability_with_positive_count_gives_neg_infinity() {
        let (table, target) = small_table();
        // p_s = 1 kills the targeted category, but the vaccine arm saw 2
        let params =
            SnlParams::new(vec![0.7, 0.3], 1.0, 0.0, 0.6, vec![1.0], &target).unwrap();
        let ll: f64 =
            log_likelihood(&table, &params, &target, Phase::TwoPhaseConditional).unwrap();
        assert!(ll.is_infinite() && ll < 0.0);
    }

    #[test]
    fn degenerate_simplex_reduces_to_binomial_part() {
        // all vaccine failure mass in category 2 and the model puts
        // probability 1 there: conditional log-likelihood is ln C(n, x) = 0
        let table = FailureTable::new(vec![5, 2, 3], vec![5, 0, 4]).unwrap();
        let target = TargetSpec::single(1, 2).unwrap();
        let params =
            SnlParams::new(vec![0.4, 0.6], 1.0, 0.0, 0.5, vec![1.0], &target).unwrap();
        let rates = vaccine_profile(&params, &target).unwrap();
        assert_eq!(rates.p_v, vec![0.0, 1.0]);
        let cond: f64 =
            log_likelihood(&table, &params, &target, Phase::TwoPhaseConditional).unwrap();
        assert!(cond.abs() < 1e-12);
    }

    #[test]
    fn replacement_only_at_zero_strength_equals_null_composition() {
        // p_s = 0 under the replacement-only model leaves p_v = p_c, so the
        // likelihood is the all-or-none one on the same table
        let (table, target) = small_table();
        let p0 = SnlParams::new(vec![0.7, 0.3], 0.0, 0.0, 0.6, vec![1.0], &target).unwrap();
        let rates = vaccine_profile(&p0, &target).unwrap();
        assert_eq!(rates.p_v, p0.p_c);
        let (_, fv) = table.failure_slices();
        let direct: f64 = ln_multinomial(fv, &p0.p_c);
        let got = log_likelihood(&table, &p0, &target, Phase::TwoPhaseConditional).unwrap();
        assert!((got - direct).abs() < 1e-12);
    }
}
