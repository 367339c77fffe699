//! Constrained maximum-likelihood fitting of some-or-none models.

use crate::error::{FitError, Result};
use crate::result::{FitPhase, FitResult, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use snl_core::{
    feasibility_check, ln_multinomial, log_likelihood, plugin_estimates, vaccine_profile,
    FailureTable, Phase, SnlParams, TargetSpec,
};

const RANDOM_STARTS: usize = 100;
const NM_MAX_ITER: usize = 4000;

/// Fit a model variant by maximum likelihood.
///
/// One-phase fits maximize the full joint likelihood over all free
/// parameters. Two-phase fits hold p_c, I_E and r_c0 at their plug-ins
/// (I_E clamped to 0 for `ReplacementOnly`) and maximize the conditional
/// vaccine-arm likelihood over the remaining free parameters. Both search
/// logistic / stick-breaking transformed coordinates with the feasibility
/// bound as a hard box on transformed p_s, and certify the optimum against
/// 100 random feasible starts.
pub fn fit_mle(
    table: &FailureTable,
    target: &TargetSpec,
    variant: Variant,
    phase: FitPhase,
    seed: u64,
) -> Result<FitResult> {
    let plugin = plugin_estimates::<f64>(table, target, variant == Variant::ReplacementOnly)?;
    let i_e = plugin.params.i_e;
    let r_c0 = plugin.params.r_c0;
    match (phase, variant) {
        (_, Variant::AllOrNone) => fit_all_or_none(table, target, phase),
        (FitPhase::TwoPhase, v) => {
            fit_two_phase(table, target, v, plugin.params.p_c.clone(), i_e, r_c0, seed)
        }
        (FitPhase::OnePhase, Variant::InsertOnly) => fit_one_phase_insert_only(table, target),
        (FitPhase::OnePhase, v) => fit_one_phase_free(table, target, v, &plugin.params, seed),
    }
}

/// Conditional vaccine-arm log-likelihood at fixed p_c (multinomial term
/// only; binomial factors cancel in ratios when I_E is fixed).
fn conditional_ll(
    fv: &[u64],
    p_c: &[f64],
    target: &TargetSpec,
    i_e: f64,
    p_s: f64,
    q: &[f64],
) -> f64 {
    let p_cg: f64 = target.targeted_sum(p_c);
    let realloc = p_cg * (1.0 - (1.0 - p_s) * (1.0 - i_e)) - i_e;
    let mut p_v = vec![0.0; p_c.len()];
    for j in target.targeted() {
        p_v[j - 1] = p_c[j - 1] * (1.0 - p_s);
    }
    for (qi, j) in target.non_targeted().enumerate() {
        p_v[j - 1] = (p_c[j - 1] + realloc * q[qi]) / (1.0 - i_e);
    }
    ln_multinomial(fv, &p_v)
}

/// Exact inner maximization over the replacement simplex q for a fixed
/// reallocated mass `d`: maximize sum_j x_j ln(a_j + d q_j) subject to
/// q in the simplex, by KKT water-filling (q_j = max(0, x_j/λ − a_j/d)).
fn optimize_q(x: &[u64], a: &[f64], d: f64) -> Vec<f64> {
    let n = x.len();
    if n == 1 {
        return vec![1.0];
    }
    if d <= 0.0 || x.iter().all(|&v| v == 0) {
        return vec![1.0 / n as f64; n];
    }
    let qsum = |lam: f64| -> f64 {
        x.iter()
            .zip(a)
            .map(|(&xi, &ai)| (xi as f64 / lam - ai / d).max(0.0))
            .sum()
    };
    let (mut lo, mut hi) = (1e-14, (x.iter().sum::<u64>() as f64 + 1.0) * 1e8);
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if qsum(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let lam = (lo * hi).sqrt();
    let mut q: Vec<f64> = x
        .iter()
        .zip(a)
        .map(|(&xi, &ai)| (xi as f64 / lam - ai / d).max(0.0))
        .collect();
    let s: f64 = q.iter().sum();
    if s > 0.0 {
        q.iter_mut().for_each(|v| *v /= s);
    } else {
        q = vec![1.0 / n as f64; n];
    }
    q
}

fn golden_max(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, iters: usize) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c1 = b - phi * (b - a);
    let mut c2 = a + phi * (b - a);
    let (mut f1, mut f2) = (f(c1), f(c2));
    for _ in 0..iters {
        if f1 < f2 {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + phi * (b - a);
            f2 = f(c2);
        } else {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - phi * (b - a);
            f1 = f(c1);
        }
    }
    let xm = 0.5 * (a + b);
    let fm = f(xm);
    if f1 >= f2 && f1 >= fm {
        (c1, f1)
    } else if f2 >= fm {
        (c2, f2)
    } else {
        (xm, fm)
    }
}

fn fit_two_phase(
    table: &FailureTable,
    target: &TargetSpec,
    variant: Variant,
    p_c: Vec<f64>,
    i_e: f64,
    r_c0: f64,
    seed: u64,
) -> Result<FitResult> {
    let (_, fv) = table.failure_slices();
    let p_cg: f64 = target.targeted_sum(&p_c);
    let feas = feasibility_check(i_e, p_cg, 1.0);
    let _ = feas;
    let p_s_lo = if i_e > 0.0 {
        (i_e * (1.0 - p_cg) / (p_cg * (1.0 - i_e))).max(0.0)
    } else {
        0.0
    };
    if p_s_lo > 1.0 {
        return Err(FitError::Core(snl_core::SnlError::Infeasible {
            i_e,
            i_e_bound: feasibility_check(i_e, p_cg, 1.0).i_e_bound,
            p_cg,
            p_cg_bound: feasibility_check(i_e, p_cg, 1.0).p_cg_bound,
            p_s: 1.0,
            p_s_bound: p_s_lo,
        }));
    }
    let xv_nt: Vec<u64> = target.non_targeted().map(|j| fv[j - 1]).collect();
    let a_nt: Vec<f64> = target.non_targeted().map(|j| p_c[j - 1]).collect();
    let nt_len = xv_nt.len();
    let q_c: Vec<f64> = {
        let s: f64 = a_nt.iter().sum();
        if s > 0.0 {
            a_nt.iter().map(|&v| v / s).collect()
        } else {
            vec![1.0 / nt_len as f64; nt_len]
        }
    };

    // profile log-likelihood in p_s with q solved exactly (or fixed at q_c)
    let profile = |p_s: f64| -> (f64, Vec<f64>) {
        let d = p_cg * (1.0 - (1.0 - p_s) * (1.0 - i_e)) - i_e;
        let q = match variant {
            Variant::InsertOnly => q_c.clone(),
            _ => optimize_q(&xv_nt, &a_nt, d),
        };
        (conditional_ll(fv, &p_c, target, i_e, p_s, &q), q)
    };

    let (p_s_hat, ll) = golden_max(|ps| profile(ps).0, p_s_lo, 1.0 - 1e-12, 90);
    let mut best = (p_s_hat, ll);
    // endpoints and multi-start certificate
    for ps in [p_s_lo, 1.0 - 1e-12] {
        let v = profile(ps).0;
        if v > best.1 {
            best = (ps, v);
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut iterations = 90;
    for _ in 0..RANDOM_STARTS {
        let ps = p_s_lo + rng.gen::<f64>() * (1.0 - p_s_lo);
        let v = profile(ps).0;
        iterations += 1;
        if v > best.1 + 1e-12 {
            // random start beat the line search: polish locally around it
            let lo = (ps - 0.05).max(p_s_lo);
            let hi = (ps + 0.05).min(1.0 - 1e-12);
            let (ps2, v2) = golden_max(|p| profile(p).0, lo, hi, 60);
            best = if v2 > v { (ps2, v2) } else { (ps, v) };
        }
    }
    let (p_s_hat, log_lik) = best;
    let (_, q_hat) = profile(p_s_hat);
    let boundary = p_s_hat <= p_s_lo + 1e-9 || p_s_hat >= 1.0 - 1e-9;
    let params = SnlParams::new(
        p_c,
        p_s_hat.clamp(p_s_lo, 1.0),
        i_e,
        r_c0,
        q_hat,
        target,
    )?;
    let derived = vaccine_profile(&params, target)?;
    Ok(FitResult {
        params,
        derived,
        log_lik,
        variant,
        phase: FitPhase::TwoPhase,
        converged: log_lik.is_finite(),
        iterations,
        boundary,
        p_s_hat,
    })
}

fn fit_all_or_none(
    table: &FailureTable,
    target: &TargetSpec,
    phase: FitPhase,
) -> Result<FitResult> {
    let (fp, fv) = table.failure_slices();
    let npf = table.placebo_failures() as f64;
    // null composition: placebo plug-in for two-phase, pooled for one-phase
    let p_c: Vec<f64> = match phase {
        FitPhase::TwoPhase => fp.iter().map(|&x| x as f64 / npf).collect(),
        FitPhase::OnePhase => {
            let tot = (table.placebo_failures() + table.vaccine_failures()) as f64;
            fp.iter().zip(fv).map(|(&a, &b)| (a + b) as f64 / tot).collect()
        }
    };
    let nt = target.num_types() - target.g();
    // the all-or-none structure is the p_s = 0, I_E = 0 member: p_v = p_c
    let params = SnlParams::new(
        p_c,
        0.0,
        0.0,
        table.n_p[0] as f64 / table.placebo_total() as f64,
        vec![1.0 / nt as f64; nt],
        target,
    )?;
    let derived = vaccine_profile(&params, target)?;
    let log_lik = match phase {
        FitPhase::TwoPhase => ln_multinomial(fv, &params.p_c),
        FitPhase::OnePhase => {
            // binomial parts are saturated by the plug-ins and reported in
            // full; composition shared across arms
            log_likelihood(table, &params, target, Phase::OnePhase)?
        }
    };
    Ok(FitResult {
        params,
        derived,
        log_lik,
        variant: Variant::AllOrNone,
        phase,
        converged: true,
        iterations: 0,
        boundary: false,
        p_s_hat: 0.0,
    })
}

/// One-phase insert-only fit in closed form. The collapsed targeted-mass
/// parameters separate: placebo targeted share t and treated targeted share
/// w are free, and both within-set compositions pool across arms.
fn fit_one_phase_insert_only(table: &FailureTable, target: &TargetSpec) -> Result<FitResult> {
    let (fp, fv) = table.failure_slices();
    let npf = table.placebo_failures() as f64;
    let nvf = table.vaccine_failures() as f64;
    if npf == 0.0 || nvf == 0.0 {
        return Err(FitError::Core(snl_core::SnlError::DegenerateData(
            "need failures in both arms".into(),
        )));
    }
    let n_pg: f64 = target.targeted().map(|j| fp[j - 1] as f64).sum();
    let n_vg: f64 = target.targeted().map(|j| fv[j - 1] as f64).sum();
    let t_hat = n_pg / npf;
    let w_hat = n_vg / nvf;
    if t_hat <= 0.0 || t_hat >= 1.0 {
        return Err(FitError::Core(snl_core::SnlError::DegenerateData(
            "placebo targeted share is degenerate".into(),
        )));
    }
    let p_s_hat = 1.0 - w_hat / t_hat;
    // pooled within-set compositions scaled to the fitted shares
    let mut p_c = vec![0.0; target.num_types()];
    let pool_t: f64 = target.targeted().map(|j| (fp[j - 1] + fv[j - 1]) as f64).sum();
    let pool_n: f64 = target.non_targeted().map(|j| (fp[j - 1] + fv[j - 1]) as f64).sum();
    for j in target.targeted() {
        let share = if pool_t > 0.0 { (fp[j - 1] + fv[j - 1]) as f64 / pool_t } else { 0.0 };
        p_c[j - 1] = t_hat * share;
    }
    for j in target.non_targeted() {
        let share = if pool_n > 0.0 { (fp[j - 1] + fv[j - 1]) as f64 / pool_n } else { 0.0 };
        p_c[j - 1] = (1.0 - t_hat) * share;
    }
    let q_c: Vec<f64> = target.non_targeted().map(|j| p_c[j - 1] / (1.0 - t_hat)).collect();

    // log-likelihood of the fitted alternative (binomial parts at plug-ins)
    let i_e = {
        let rate_v = nvf / table.vaccine_total() as f64;
        let rate_p = npf / table.placebo_total() as f64;
        (1.0 - rate_v / rate_p).max(0.0)
    };
    let r_c0 = table.n_p[0] as f64 / table.placebo_total() as f64;
    let mut p_v = vec![0.0; target.num_types()];
    for j in target.targeted() {
        p_v[j - 1] = p_c[j - 1] * (1.0 - p_s_hat);
    }
    for j in target.non_targeted() {
        p_v[j - 1] = q_c[target.non_targeted().position(|k| k == j).unwrap()] * (1.0 - w_hat);
    }
    let r_v0 = 1.0 - (1.0 - r_c0) * (1.0 - i_e);
    let log_lik = snl_core::ln_binomial(table.n_p[0], table.placebo_total(), r_c0)
        + snl_core::ln_binomial(table.n_v[0], table.vaccine_total(), r_v0)
        + ln_multinomial(fp, &p_c)
        + ln_multinomial(fv, &p_v);

    // project into the feasible region for the reported parameter set
    let p_s_lo = if i_e > 0.0 {
        (i_e * (1.0 - t_hat) / (t_hat * (1.0 - i_e))).max(0.0)
    } else {
        0.0
    };
    let boundary = p_s_hat < p_s_lo || p_s_hat > 1.0;
    let params = SnlParams::new(
        p_c,
        p_s_hat.clamp(p_s_lo.min(1.0), 1.0),
        i_e,
        r_c0,
        q_c,
        target,
    )?;
    let derived = vaccine_profile(&params, target)?;
    Ok(FitResult {
        params,
        derived,
        log_lik,
        variant: Variant::InsertOnly,
        phase: FitPhase::OnePhase,
        converged: true,
        iterations: 0,
        boundary,
        p_s_hat,
    })
}

/// General one-phase fit over all free parameters by Nelder-Mead on
/// transformed coordinates, with plug-in and random starts.
fn fit_one_phase_free(
    table: &FailureTable,
    target: &TargetSpec,
    variant: Variant,
    plugin: &SnlParams,
    seed: u64,
) -> Result<FitResult> {
    let j = target.num_types();
    let g = target.g();
    let fit_ie = variant != Variant::ReplacementOnly;
    // coordinates: sticks(p_c) [J-1], logit r_c0, (logit I_E), z_ps, sticks(q) [J-g-1]
    let dim = (j - 1) + 1 + usize::from(fit_ie) + 1 + (j - g - 1);

    let decode = |z: &[f64]| -> Option<SnlParams> {
        let mut idx = 0;
        let p_c = sticks_to_simplex(&z[idx..idx + j - 1]);
        idx += j - 1;
        let r_c0 = sigmoid(z[idx]);
        idx += 1;
        let i_e = if fit_ie {
            let v = sigmoid(z[idx]) * 0.999;
            idx += 1;
            v
        } else {
            0.0
        };
        let p_cg: f64 = target.targeted_sum(&p_c);
        let lo = if i_e > 0.0 {
            let b = i_e * (1.0 - p_cg) / (p_cg * (1.0 - i_e));
            if b > 1.0 {
                return None;
            }
            b.max(0.0)
        } else {
            0.0
        };
        let p_s = lo + (1.0 - lo) * sigmoid(z[idx]);
        idx += 1;
        let q = if j - g > 1 {
            sticks_to_simplex(&z[idx..idx + (j - g - 1)])
        } else {
            vec![1.0]
        };
        SnlParams::new(p_c, p_s, i_e, r_c0, q, target).ok()
    };
    let objective = |z: &[f64]| -> f64 {
        match decode(z) {
            Some(p) => log_likelihood(table, &p, target, Phase::OnePhase).unwrap_or(f64::NEG_INFINITY),
            None => f64::NEG_INFINITY,
        }
    };

    // start from the plug-in estimates
    let mut start = Vec::with_capacity(dim);
    start.extend(simplex_to_sticks(&plugin.p_c));
    start.push(logit(plugin.r_c0.clamp(1e-6, 1.0 - 1e-6)));
    if fit_ie {
        start.push(logit((plugin.i_e / 0.999).clamp(1e-6, 1.0 - 1e-6)));
    }
    start.push(0.0); // p_s mid-box
    if j - g > 1 {
        start.extend(simplex_to_sticks(&plugin.q));
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let (mut best_z, mut best_f, mut total_iter) = nelder_mead(&objective, &start, 0.5);
    let mut cert_ok = true;
    for _ in 0..RANDOM_STARTS {
        let z: Vec<f64> = (0..dim).map(|_| rng.gen_range(-2.5..2.5)).collect();
        let f0 = objective(&z);
        if f0 > best_f {
            cert_ok = false;
            let (z2, f2, it) = nelder_mead(&objective, &z, 0.5);
            total_iter += it;
            if f2 > best_f {
                best_z = z2;
                best_f = f2;
            }
            cert_ok = best_f >= f0;
        }
    }
    // one polish pass from the incumbent
    let (z3, f3, it3) = nelder_mead(&objective, &best_z, 0.05);
    total_iter += it3;
    if f3 > best_f {
        best_z = z3;
        best_f = f3;
    }

    let params = decode(&best_z).ok_or(FitError::NonConvergence { iterations: total_iter })?;
    let derived = vaccine_profile(&params, target)?;
    let p_cg: f64 = target.targeted_sum(&params.p_c);
    let lo = if params.i_e > 0.0 {
        (params.i_e * (1.0 - p_cg) / (p_cg * (1.0 - params.i_e))).max(0.0)
    } else {
        0.0
    };
    let boundary = params.p_s <= lo + 1e-7 || params.p_s >= 1.0 - 1e-7;
    Ok(FitResult {
        p_s_hat: params.p_s,
        params,
        derived,
        log_lik: best_f,
        variant,
        phase: FitPhase::OnePhase,
        converged: best_f.is_finite() && cert_ok,
        iterations: total_iter,
        boundary,
    })
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

fn sticks_to_simplex(z: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(z.len() + 1);
    let mut remaining = 1.0;
    for &zi in z {
        let v = sigmoid(zi) * remaining;
        out.push(v);
        remaining -= v;
    }
    out.push(remaining.max(0.0));
    out
}

fn simplex_to_sticks(p: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(p.len() - 1);
    let mut remaining = 1.0;
    for &pi in &p[..p.len() - 1] {
        let frac = (pi / remaining).clamp(1e-9, 1.0 - 1e-9);
        out.push(logit(frac));
        remaining -= pi;
        if remaining <= 0.0 {
            remaining = 1e-12;
        }
    }
    out
}

/// Plain Nelder-Mead maximizer; returns (argmax, max, iterations).
fn nelder_mead(
    f: &dyn Fn(&[f64]) -> f64,
    start: &[f64],
    scale: f64,
) -> (Vec<f64>, f64, usize) {
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..n {
        let mut v = start.to_vec();
        v[i] += scale;
        simplex.push(v);
    }
    let mut fvals: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    let mut iter = 0;
    while iter < NM_MAX_ITER {
        iter += 1;
        // order descending (maximization)
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| fvals[b].partial_cmp(&fvals[a]).unwrap_or(std::cmp::Ordering::Equal));
        let best = order[0];
        let worst = order[n];
        let second_worst = order[n - 1];
        if (fvals[best] - fvals[worst]).abs() < 1e-10
            || (fvals[best].is_infinite() && fvals[worst].is_infinite())
        {
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|d| {
                order[..n].iter().map(|&i| simplex[i][d]).sum::<f64>() / n as f64
            })
            .collect();
        let reflect: Vec<f64> = (0..n)
            .map(|d| centroid[d] + (centroid[d] - simplex[worst][d]))
            .collect();
        let fr = f(&reflect);
        if fr > fvals[best] {
            let expand: Vec<f64> = (0..n)
                .map(|d| centroid[d] + 2.0 * (centroid[d] - simplex[worst][d]))
                .collect();
            let fe = f(&expand);
            if fe > fr {
                simplex[worst] = expand;
                fvals[worst] = fe;
            } else {
                simplex[worst] = reflect;
                fvals[worst] = fr;
            }
        } else if fr > fvals[second_worst] {
            simplex[worst] = reflect;
            fvals[worst] = fr;
        } else {
            let contract: Vec<f64> = (0..n)
                .map(|d| centroid[d] + 0.5 * (simplex[worst][d] - centroid[d]))
                .collect();
            let fc = f(&contract);
            if fc > fvals[worst] {
                simplex[worst] = contract;
                fvals[worst] = fc;
            } else {
                // shrink toward the best vertex
                let best_pt = simplex[best].clone();
                for i in 0..=n {
                    if i == best {
                        continue;
                    }
                    for d in 0..n {
                        simplex[i][d] = best_pt[d] + 0.5 * (simplex[i][d] - best_pt[d]);
                    }
                    fvals[i] = f(&simplex[i]);
                }
            }
        }
    }
    let (mut bi, mut bf) = (0, fvals[0]);
    for (i, &v) in fvals.iter().enumerate() {
        if v > bf {
            bi = i;
            bf = v;
        }
    }
    (simplex[bi].clone(), bf, iter)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_data_fits_zero_strength() {
        let table = FailureTable::new(vec![0, 80, 20], vec![0, 80, 20]).unwrap();
        let target = TargetSpec::single(1, 2).unwrap();
        let fit = fit_mle(&table, &target, Variant::ReplacementOnly, FitPhase::TwoPhase, 1)
            .unwrap();
        assert!(fit.params.p_s.abs() < 1e-6, "p_s = {}", fit.params.p_s);
    }

    #[test]
    fn recovers_strength_from_exact_expected_counts() {
        // expected counts at p_s = 0.5, I_E = 0, q = (1), J = 2:
        // placebo (80, 20), vaccine (40, 60)
        let table = FailureTable::new(vec![0, 80, 20], vec![0, 40, 60]).unwrap();
        let target = TargetSpec::single(1, 2).unwrap();
        let fit =
            fit_mle(&table, &target, Variant::ReplacementOnly, FitPhase::TwoPhase, 1).unwrap();
        assert!((fit.params.p_s - 0.5).abs() < 1e-4, "p_s = {}", fit.params.p_s);
        assert!(fit.converged);
    }

    #[test]
    fn multistart_is_stable_across_seeds() {
        let table = FailureTable::new(vec![900, 70, 20, 10], vec![920, 40, 25, 15]).unwrap();
        let target = TargetSpec::single(1, 3).unwrap();
        let baseline =
            fit_mle(&table, &target, Variant::SomeOrNone, FitPhase::TwoPhase, 0).unwrap();
        for seed in 1..=10 {
            let fit =
                fit_mle(&table, &target, Variant::SomeOrNone, FitPhase::TwoPhase, seed).unwrap();
            assert!(
                (fit.log_lik - baseline.log_lik).abs() < 1e-6,
                "seed {seed}: {} vs {}",
                fit.log_lik,
                baseline.log_lik
            );
        }
    }

    #[test]
    fn one_phase_free_beats_or_matches_plugin_objective() {
        let table = FailureTable::new(vec![900, 70, 20, 10], vec![930, 30, 25, 15]).unwrap();
        let target = TargetSpec::single(1, 3).unwrap();
        let fit = fit_mle(&table, &target, Variant::SomeOrNone, FitPhase::OnePhase, 3).unwrap();
        let plugin = plugin_estimates::<f64>(&table, &target, false).unwrap();
        let at_plugin =
            log_likelihood(&table, &plugin.params, &target, Phase::OnePhase).unwrap();
        assert!(fit.log_lik >= at_plugin - 1e-6, "{} vs {}", fit.log_lik, at_plugin);
    }
}
