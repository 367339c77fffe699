//! Null-distribution calibration and permutation behavior of the tests.

use rand::distributions::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use snl_fit::{fit_mle, lrt, permutation_null, FitPhase, Variant};
use snl_core::{FailureTable, TargetSpec};

/// Multinomial draw via sequential conditional binomials.
fn multinomial(rng: &mut ChaCha12Rng, n: u64, probs: &[f64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(probs.len());
    let mut remaining = n;
    let mut rest = 1.0;
    for (i, &p) in probs.iter().enumerate() {
        if i + 1 == probs.len() {
            out.push(remaining);
            break;
        }
        let cond = if rest > 0.0 { (p / rest).clamp(0.0, 1.0) } else { 0.0 };
        let draw = rand_distr::Binomial::new(remaining, cond).unwrap().sample(rng);
        out.push(draw);
        remaining -= draw;
        rest -= p;
    }
    out
}

/// Replacement-only all-or-none null at the simulation-study scales:
/// both arms draw from the same outcome distribution.
fn null_table(rng: &mut ChaCha12Rng) -> FailureTable {
    let p_c = [0.815, 0.171, 0.0135, 0.0005, 0.000006];
    let s: f64 = p_c.iter().sum();
    let mut probs = vec![0.9];
    probs.extend(p_c.iter().map(|&v| 0.1 * v / s));
    let n_p = multinomial(rng, 1000, &probs);
    let n_v = multinomial(rng, 1000, &probs);
    FailureTable { n_p, n_v, labels: None }
}

fn ks_distance_vs_chi2_1(stats: &[f64]) -> f64 {
    let mut v = stats.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in v.iter().enumerate() {
        let cdf = statrs::function::erf::erf((x.max(0.0) / 2.0).sqrt());
        d = d.max(((i + 1) as f64 / n - cdf).abs());
        d = d.max((cdf - i as f64 / n).abs());
    }
    d
}

#[test]
fn one_phase_null_distribution_is_chi_squared_1() {
    let mut rng = ChaCha12Rng::seed_from_u64(20240901);
    let target = TargetSpec::single(1, 5).unwrap();
    let stats: Vec<f64> = (0..1000)
        .map(|_| {
            let t = null_table(&mut rng);
            lrt(&t, &target, Variant::ReplacementOnly, FitPhase::OnePhase)
                .unwrap()
                .statistic
        })
        .collect();
    let d = ks_distance_vs_chi2_1(&stats);
    // Kolmogorov critical value at level 0.01 for n = 1000
    let crit = 1.62762 / (stats.len() as f64).sqrt();
    assert!(d < crit, "KS distance {d} exceeds {crit}");
}

#[test]
fn permutation_p_values_are_uniform_under_the_null() {
    // under permuted-null data the permutation p-value is uniform on its
    // achievable grid; check via KS against U(0,1) at level 0.01
    let mut rng = ChaCha12Rng::seed_from_u64(77);
    let target = TargetSpec::single(1, 3).unwrap();
    let probs = vec![0.6, 0.2, 0.15, 0.05];
    let b = 79;
    let mut pvals = Vec::new();
    for i in 0..1000 {
        let n_p = multinomial(&mut rng, 60, &probs);
        let n_v = multinomial(&mut rng, 60, &probs);
        let table = FailureTable { n_p, n_v, labels: None };
        if table.placebo_failures() == 0 || table.vaccine_failures() == 0 {
            continue;
        }
        let tgt = target.clone();
        let r = permutation_null(
            &table,
            move |t| {
                lrt(t, &tgt, Variant::ReplacementOnly, FitPhase::OnePhase)
                    .map(|x| x.statistic)
                    .map_err(Into::into)
            },
            b,
            1000 + i,
            false,
        )
        .unwrap();
        pvals.push(r.p_value.unwrap());
    }
    // achievable grid is k/(B+1); compare against uniform with a
    // discreteness allowance folded into the critical value
    pvals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = pvals.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &p) in pvals.iter().enumerate() {
        d = d.max(((i + 1) as f64 / n - p).abs());
        d = d.max((p - i as f64 / n).abs());
    }
    let crit = 1.62762 / n.sqrt() + 1.0 / (b as f64 + 1.0);
    assert!(d < crit, "KS distance {d} exceeds {crit} (n = {n})");
}

#[test]
fn strong_site_permutation_p_is_small() {
    // placebo failures (9, 17), vaccine failures (31, 8); targeted type 2.
    // the observed two-phase statistic is extreme under label permutation.
    let table = FailureTable::new(vec![0, 9, 17], vec![0, 31, 8]).unwrap();
    let target = TargetSpec::single(2, 2).unwrap();
    let tgt = target.clone();
    let r = permutation_null(
        &table,
        move |t| {
            snl_fit::lrt_two_phase_detail(t, &tgt, Variant::ReplacementOnly)
                .map(|d| d.statistic)
        },
        1000,
        7,
        false,
    )
    .unwrap();
    assert!((r.statistic - 32.99).abs() < 0.05);
    assert!(r.p_value.unwrap() < 0.005, "p = {}", r.p_value.unwrap());
}

#[test]
fn nesting_keeps_statistic_nonnegative_across_tables() {
    let mut rng = ChaCha12Rng::seed_from_u64(5);
    let target = TargetSpec::single(1, 3).unwrap();
    for _ in 0..200 {
        let n_p: Vec<u64> = (0..4).map(|_| rng.gen_range(0..40)).collect();
        let n_v: Vec<u64> = (0..4).map(|_| rng.gen_range(0..40)).collect();
        let table = match FailureTable::new(n_p, n_v) {
            Ok(t) => t,
            Err(_) => continue,
        };
        if table.placebo_failures() == 0
            || table.vaccine_failures() == 0
            || table.n_p[1] == 0
            || table.n_p[1] == table.placebo_failures()
        {
            continue;
        }
        for phase in [FitPhase::OnePhase, FitPhase::TwoPhase] {
            let r = lrt(&table, &target, Variant::ReplacementOnly, phase).unwrap();
            assert!(r.statistic >= -1e-8);
        }
    }
}

#[test]
fn fitted_optimum_is_reproducible_and_feasible() {
    let table = FailureTable::new(vec![900, 55, 30, 15], vec![940, 20, 22, 18]).unwrap();
    let target = TargetSpec::single(1, 3).unwrap();
    for variant in [Variant::SomeOrNone, Variant::ReplacementOnly, Variant::InsertOnly] {
        for phase in [FitPhase::OnePhase, FitPhase::TwoPhase] {
            let a = fit_mle(&table, &target, variant, phase, 42).unwrap();
            let b = fit_mle(&table, &target, variant, phase, 42).unwrap();
            assert_eq!(a.log_lik, b.log_lik, "{variant:?} {phase:?}");
            assert!(a.log_lik.is_finite());
            // stored params always pass the feasibility check
            let f = snl_core::feasibility_check(
                a.params.i_e,
                a.params.p_cg(&target),
                a.params.p_s,
            );
            assert!(f.feasible, "{variant:?} {phase:?}");
        }
    }
}
