//! Permutation-null engine on failure tables.

use crate::error::{FitError, Result};
use crate::result::TestResult;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use snl_core::FailureTable;

/// Permute treatment labels of the reconstructed subjects and return the
/// permutation p-value of `statistic`.
///
/// Subject-level outcomes are rebuilt from the counts; each replicate
/// shuffles arm labels preserving the arm sizes, re-tabulates, and
/// re-evaluates the statistic. p = (1 + #{null >= observed}) / (1 + B).
/// Replicates on which the statistic fails are redrawn, up to 10·B
/// attempts in total. Each replicate uses a deterministically derived
/// stream of the seed, so results do not depend on evaluation order.
pub fn permutation_null<F>(
    table: &FailureTable,
    statistic: F,
    b: usize,
    seed: u64,
    keep_draws: bool,
) -> Result<TestResult>
where
    F: Fn(&FailureTable) -> Result<f64>,
{
    if b == 0 {
        return Err(FitError::InvalidConfig("B must be at least 1".into()));
    }
    let observed = statistic(table)?;
    let num_cats = table.n_p.len();
    let mut subjects: Vec<u8> = Vec::with_capacity(
        (table.placebo_total() + table.vaccine_total()) as usize,
    );
    for (cat, &n) in table.n_p.iter().enumerate() {
        subjects.extend(std::iter::repeat(cat as u8).take(n as usize));
    }
    for (cat, &n) in table.n_v.iter().enumerate() {
        subjects.extend(std::iter::repeat(cat as u8).take(n as usize));
    }
    let n_p = table.placebo_total() as usize;

    let cap = 10 * b;
    let mut draws = Vec::with_capacity(b);
    let mut exceed = 0usize;
    let mut attempts = 0usize;
    let mut failures = 0usize;
    let mut stream = 0u64;
    while draws.len() < b {
        if attempts >= cap {
            return Err(FitError::PermutationExhausted { failures, attempts, cap });
        }
        attempts += 1;
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        stream += 1;

        let mut pool = subjects.clone();
        // Fisher-Yates for the first n_p positions is enough to split arms
        let total = pool.len();
        for i in 0..n_p {
            let j = rng.gen_range(i..total);
            pool.swap(i, j);
        }
        let mut n_p_counts = vec![0u64; num_cats];
        let mut n_v_counts = vec![0u64; num_cats];
        for (i, &cat) in pool.iter().enumerate() {
            if i < n_p {
                n_p_counts[cat as usize] += 1;
            } else {
                n_v_counts[cat as usize] += 1;
            }
        }
        let permuted = FailureTable { n_p: n_p_counts, n_v: n_v_counts, labels: None };
        match statistic(&permuted) {
            Ok(s) => {
                if s >= observed {
                    exceed += 1;
                }
                draws.push(s);
            }
            Err(_) => failures += 1,
        }
    }
    let p = (1.0 + exceed as f64) / (1.0 + b as f64);
    let mut r = TestResult::new("permutation", observed);
    r.p_value = Some(p);
    r.seed = Some(seed);
    r.b = Some(b);
    if keep_draws {
        r.null_draws = Some(draws);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_statistic_gives_p_one() {
        let table = FailureTable::new(vec![10, 5, 5], vec![10, 5, 5]).unwrap();
        let r = permutation_null(&table, |_| Ok(1.0), 99, 7, false).unwrap();
        assert_eq!(r.p_value.unwrap(), 1.0);
    }

    #[test]
    fn margins_are_preserved() {
        let table = FailureTable::new(vec![50, 30, 20], vec![70, 10, 20]).unwrap();
        let r = permutation_null(
            &table,
            |t| {
                assert_eq!(t.placebo_total(), 100);
                assert_eq!(t.vaccine_total(), 100);
                // pooled category totals preserved
                let pooled: Vec<u64> =
                    t.n_p.iter().zip(&t.n_v).map(|(a, b)| a + b).collect();
                assert_eq!(pooled, vec![120, 40, 40]);
                Ok(0.0)
            },
            25,
            3,
            false,
        )
        .unwrap();
        assert!(r.p_value.is_some());
    }

    #[test]
    fn deterministic_given_seed() {
        let table = FailureTable::new(vec![40, 30, 30], vec![60, 25, 15]).unwrap();
        let stat = |t: &FailureTable| Ok(t.n_v[1] as f64);
        let a = permutation_null(&table, stat, 200, 11, true).unwrap();
        let b = permutation_null(&table, stat, 200, 11, true).unwrap();
        assert_eq!(a.null_draws, b.null_draws);
        assert_eq!(a.p_value, b.p_value);
    }

    #[test]
    fn failing_statistic_is_redrawn_up_to_cap() {
        let table = FailureTable::new(vec![10, 5, 5], vec![10, 5, 5]).unwrap();
        // succeeds on the observed table, fails on every permuted draw
        let calls = std::cell::Cell::new(0usize);
        let r = permutation_null(
            &table,
            |_| {
                calls.set(calls.get() + 1);
                if calls.get() == 1 {
                    Ok(1.0)
                } else {
                    Err(FitError::InvalidConfig("nope".into()))
                }
            },
            10,
            1,
            false,
        );
        assert!(matches!(r, Err(FitError::PermutationExhausted { .. })));
    }
}
