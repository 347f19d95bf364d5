//! Randomized verification suites for the monotone properties of structured
//! negativity, the SPA-PT linearity lemma, Weyl's inequality, the
//! negativity/structured-negativity bound, and the q-coincidence conjecture.
//!
//! Hard suites must report zero violations; reporting suites (LOCC, the
//! conjecture explorer) gather evidence only and never gate an exit code.
//! Every trial derives its RNG substream from (suite seed, trial index), so
//! results are independent of execution order.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::matcore::{eigvals_hermitian, weyl_holds, ComplexMatrix, HERMITICITY_TOL};
use crate::measures::{
    is_separable_spa, negativity, q_count, spa_pt, structured_negativity,
    structured_negativity_pt_path, structured_negativity_spa_path, MeasureError, NEG_EIG_TOL,
};
use crate::qstate::{partial_transpose_b, random_kraus_set, BipartiteState};
use crate::rng;

/// Attempts allowed per trial when filtering for NPT draws.
const NPT_DRAW_CAP: usize = 100;
const ZERO_PROB_BRANCH: f64 = 1e-12;

/// Pass/fail statistics for one suite under a fixed seed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite_name: String,
    pub trials: usize,
    pub violations: usize,
    /// Most negative slack observed; nonnegative slack means the checked
    /// inequality held with room to spare.
    pub worst_margin: f64,
    pub seed: u64,
    /// Hard suites gate exit codes; reporting suites do not.
    pub hard: bool,
    pub config: serde_json::Value,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
}

/// One LOCC Monte Carlo trial: structured negativity before measurement and
/// its branch averages under both normalization conventions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoccTrialRecord {
    pub d: usize,
    pub m: usize,
    pub ns_before: f64,
    pub ns_avg_after_normalized: f64,
    pub ns_avg_after_unnormalized: f64,
    pub p_i: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub kraus_count: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { dims: vec![2, 3], trials: 500, seed: 0, kraus_count: 2 }
    }
}

struct Tally {
    trials: usize,
    violations: usize,
    worst_margin: f64,
}

impl Tally {
    fn new() -> Self {
        Self { trials: 0, violations: 0, worst_margin: f64::INFINITY }
    }

    /// Record one check of "quantity ≥ −tol" where `margin` is the quantity.
    fn record(&mut self, margin: f64, tol: f64) {
        self.worst_margin = self.worst_margin.min(margin);
        if margin < -tol {
            self.violations += 1;
        }
    }

    fn finish_trial(&mut self) {
        self.trials += 1;
    }

    fn into_report(
        self,
        suite_name: &str,
        seed: u64,
        hard: bool,
        config: serde_json::Value,
        details: serde_json::Value,
    ) -> VerifyReport {
        VerifyReport {
            suite_name: suite_name.to_string(),
            trials: self.trials,
            violations: self.violations,
            worst_margin: if self.worst_margin.is_finite() { self.worst_margin } else { 0.0 },
            seed,
            hard,
            config,
            details,
        }
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    rng::substream(seed, trial)
}

fn random_state_mixed_rank(d: usize, trial: usize, rng: &mut ChaCha8Rng) -> BipartiteState {
    let rank = 1 + trial % (d * d);
    crate::qstate::random_density_with(d, rank, rng)
}

/// Draw until the PT has a negative eigenvalue; None if the cap is hit.
fn draw_npt(d: usize, trial: usize, rng: &mut ChaCha8Rng) -> Option<BipartiteState> {
    for attempt in 0..NPT_DRAW_CAP {
        let s = random_state_mixed_rank(d, trial + attempt, rng);
        let spec = eigvals_hermitian(&partial_transpose_b(&s), HERMITICITY_TOL)
            .expect("PT of a valid state is Hermitian");
        if spec.min() < -NEG_EIG_TOL {
            return Some(s);
        }
    }
    None
}

fn conjugate_by_locals(
    s: &BipartiteState,
    ua: &ComplexMatrix,
    ub: &ComplexMatrix,
) -> BipartiteState {
    let local = ua.kron(ub);
    let rho = local.matmul(s.rho()).matmul(&local.adjoint());
    BipartiteState::new(s.local_dim(), rho).expect("unitary conjugation preserves validity")
}

/// Property 1: structured negativity vanishes on separable states and the SPA
/// verdict agrees.
pub fn suite_separable_zero(d: usize, trials: usize, seed: u64) -> Result<VerifyReport, MeasureError> {
    let mut tally = Tally::new();
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let n_terms = 1 + t % 4;
        let s = crate::qstate::random_separable_with(d, n_terms, &mut rng);
        let ns = structured_negativity(&s)?;
        tally.record(-ns, 1e-9);
        let sep = is_separable_spa(&s)?;
        if !sep {
            tally.record(-1.0, 1e-9);
        }
        tally.finish_trial();
    }
    Ok(tally.into_report("separable_zero", seed, true, json!({ "d": d, "tol": 1e-9 }), json!(null)))
}

/// Property 2: invariance under U_A ⊗ U_B conjugation, for both measures.
pub fn suite_lu_invariance(d: usize, trials: usize, seed: u64) -> Result<VerifyReport, MeasureError> {
    let mut tally = Tally::new();
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let s = random_state_mixed_rank(d, t, &mut rng);
        let ua = crate::qstate::random_unitary_with(d, &mut rng);
        let ub = crate::qstate::random_unitary_with(d, &mut rng);
        let rotated = conjugate_by_locals(&s, &ua, &ub);
        let dns = (structured_negativity(&s)? - structured_negativity(&rotated)?).abs();
        let dn = (negativity(&s)? - negativity(&rotated)?).abs();
        tally.record(-dns, 1e-8);
        tally.record(-dn, 1e-8);
        tally.finish_trial();
    }
    Ok(tally.into_report("lu_invariance", seed, true, json!({ "d": d, "tol": 1e-8 }), json!(null)))
}

/// Property 3: N_S(Σ p_k ρ_k) ≤ Σ p_k N_S(ρ_k).
pub fn suite_convexity(d: usize, trials: usize, seed: u64) -> Result<VerifyReport, MeasureError> {
    let mut tally = Tally::new();
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let k = 2 + t % 2;
        let states: Vec<BipartiteState> =
            (0..k).map(|i| random_state_mixed_rank(d, t + i, &mut rng)).collect();
        let mut weights: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() + 1e-6).collect();
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        let dim = d * d;
        let mut mix = ComplexMatrix::zeros(dim, dim);
        for (s, &w) in states.iter().zip(&weights) {
            mix = mix.add(&s.rho().scale_re(w));
        }
        let mix = BipartiteState::new(d, mix)?;
        let lhs = structured_negativity(&mix)?;
        let rhs: f64 = states
            .iter()
            .zip(&weights)
            .map(|(s, &w)| structured_negativity(s).map(|ns| w * ns))
            .collect::<Result<Vec<_>, _>>()?
            .iter()
            .sum();
        tally.record(rhs - lhs, 1e-8);
        tally.finish_trial();
    }
    Ok(tally.into_report("convexity", seed, true, json!({ "d": d, "tol": 1e-8 }), json!(null)))
}

/// SPA-PT linearity: spa(Σ p_k ρ_k) = Σ p_k spa(ρ_k) elementwise.
pub fn suite_lemma1_linearity(d: usize, trials: usize, seed: u64) -> Result<VerifyReport, MeasureError> {
    let mut tally = Tally::new();
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let k = 3;
        let states: Vec<BipartiteState> =
            (0..k).map(|i| random_state_mixed_rank(d, t + i, &mut rng)).collect();
        let mut weights: Vec<f64> = (0..k).map(|_| rng.gen::<f64>() + 1e-6).collect();
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        let dim = d * d;
        let mut mix = ComplexMatrix::zeros(dim, dim);
        let mut spa_sum = ComplexMatrix::zeros(dim, dim);
        for (s, &w) in states.iter().zip(&weights) {
            mix = mix.add(&s.rho().scale_re(w));
            spa_sum = spa_sum.add(&spa_pt(s)?.rho().scale_re(w));
        }
        let mix = BipartiteState::new(d, mix)?;
        let resid = spa_pt(&mix)?.rho().max_abs_diff(&spa_sum);
        tally.record(-resid, 1e-10);
        tally.finish_trial();
    }
    Ok(tally.into_report("lemma1_linearity", seed, true, json!({ "d": d, "tol": 1e-10 }), json!(null)))
}

/// Weyl's inequality on random Hermitian pairs for every valid (k, j).
pub fn suite_weyl(n: usize, trials: usize, seed: u64) -> Result<VerifyReport, MeasureError> {
    let mut tally = Tally::new();
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let a = random_hermitian(n, &mut rng);
        let b = random_hermitian(n, &mut rng);
        let a_spec = eigvals_hermitian(&a, HERMITICITY_TOL)?;
        let b_spec = eigvals_hermitian(&b, HERMITICITY_TOL)?;
        let sum_spec = eigvals_hermitian(&a.add(&b), HERMITICITY_TOL)?;
        for k in 1..=n {
            for j in 0..=(n - k) {
                let margin =
                    a_spec.nth_ascending(k + j) + b_spec.nth_ascending(n - j) - sum_spec.nth_ascending(k);
                tally.record(margin, 1e-10);
                debug_assert!(weyl_holds(&a, &b, k, j).unwrap());
            }
        }
        tally.finish_trial();
    }
    Ok(tally.into_report("weyl", seed, true, json!({ "n": n, "tol": 1e-10 }), json!(null)))
}

fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut g = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(i, j, rng::complex_normal(rng));
        }
    }
    g.add(&g.adjoint()).scale_re(0.5)
}

/// Two-path identity: the Eq.-9 definition equals d·max{0, −λ_min(PT)}.
pub fn suite_two_path(d: usize, trials: usize, seed: u64) -> Result<VerifyReport, MeasureError> {
    let mut tally = Tally::new();
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let s = random_state_mixed_rank(d, t, &mut rng);
        let a = structured_negativity_spa_path(&s)?;
        let b = structured_negativity_pt_path(&s)?;
        tally.record(-(a - b).abs(), 1e-9);
        tally.finish_trial();
    }
    Ok(tally.into_report("two_path_identity", seed, true, json!({ "d": d, "tol": 1e-9 }), json!(null)))
}

/// Result-1: N ≤ (2q/(d(d−1)))·N_S for q ≥ 1 and N ≤ 2(1−1/d)·N_S always.
pub fn check_result1(d: usize, trials: usize, seed: u64) -> Result<VerifyReport, MeasureError> {
    let mut tally = Tally::new();
    let mut exhausted = 0usize;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let Some(s) = draw_npt(d, t, &mut rng) else {
            exhausted += 1;
            continue;
        };
        let n = negativity(&s)?;
        let ns = structured_negativity(&s)?;
        let q = q_count(&s)?;
        let df = d as f64;
        if q >= 1 {
            let bound = 2.0 * q as f64 / (df * (df - 1.0)) * ns;
            tally.record(bound - n, 1e-9);
        }
        let final_bound = 2.0 * (1.0 - 1.0 / df) * ns;
        tally.record(final_bound - n, 1e-9);
        tally.finish_trial();
    }
    Ok(tally.into_report(
        "result1",
        seed,
        true,
        json!({ "d": d, "tol": 1e-9 }),
        json!({ "npt_draws_exhausted": exhausted }),
    ))
}

/// d = 2 coincidence: negativity equals structured negativity on every NPT draw.
pub fn suite_d2_coincidence(trials: usize, seed: u64) -> Result<VerifyReport, MeasureError> {
    let mut tally = Tally::new();
    let mut exhausted = 0usize;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let Some(s) = draw_npt(2, t, &mut rng) else {
            exhausted += 1;
            continue;
        };
        let diff = (negativity(&s)? - structured_negativity(&s)?).abs();
        tally.record(-diff, 1e-9);
        debug_assert_eq!(q_count(&s)?, 1, "two-qubit NPT states have exactly one negative PT eigenvalue");
        tally.finish_trial();
    }
    Ok(tally.into_report(
        "d2_coincidence",
        seed,
        true,
        json!({ "d": 2, "tol": 1e-9 }),
        json!({ "npt_draws_exhausted": exhausted }),
    ))
}

fn ns_of_matrix(m: &ComplexMatrix, d: usize) -> f64 {
    let dim = d * d;
    let pt = ComplexMatrix::from_fn(dim, dim, |row, col| {
        let (i, j) = (row / d, row % d);
        let (k, l) = (col / d, col % d);
        m.get(i * d + l, k * d + j)
    });
    let spec = eigvals_hermitian(&pt, 1e-6).expect("branch matrices are Hermitian");
    d as f64 * (-spec.min()).max(0.0)
}

/// Property 4 evidence: average structured negativity over measurement
/// branches, under both the normalized and the literal unnormalized reading.
pub fn suite_locc(
    d: usize,
    trials: usize,
    m: usize,
    seed: u64,
) -> Result<(Vec<LoccTrialRecord>, VerifyReport), MeasureError> {
    let mut tally = Tally::new();
    let mut records = Vec::with_capacity(trials);
    let mut violations_normalized = 0usize;
    let mut violations_unnormalized = 0usize;
    let mut skipped_branches = 0usize;
    let mut exhausted = 0usize;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let Some(s) = draw_npt(d, t, &mut rng) else {
            exhausted += 1;
            continue;
        };
        let kraus_seed: u64 = rng.gen();
        let kraus = random_kraus_set(d, m, kraus_seed);
        let identity = ComplexMatrix::identity(d);
        let ns_before = structured_negativity(&s)?;
        let mut probs = Vec::with_capacity(m);
        let mut avg_normalized = 0.0;
        let mut avg_unnormalized = 0.0;
        for k in kraus.operators() {
            let op = k.kron(&identity);
            let branch = op.matmul(s.rho()).matmul(&op.adjoint());
            let p = branch.trace().re;
            probs.push(p);
            if p < ZERO_PROB_BRANCH {
                skipped_branches += 1;
                continue;
            }
            let ns_raw = ns_of_matrix(&branch, d);
            // p · N_S(branch/p) = N_S(branch) since the spectrum scales linearly
            avg_normalized += ns_raw;
            avg_unnormalized += p * ns_raw;
        }
        if ns_before < avg_normalized - 1e-8 {
            violations_normalized += 1;
        }
        if ns_before < avg_unnormalized - 1e-8 {
            violations_unnormalized += 1;
        }
        tally.record(ns_before - avg_normalized.max(avg_unnormalized), f64::INFINITY);
        records.push(LoccTrialRecord {
            d,
            m,
            ns_before,
            ns_avg_after_normalized: avg_normalized,
            ns_avg_after_unnormalized: avg_unnormalized,
            p_i: probs,
        });
        tally.finish_trial();
    }
    let report = tally.into_report(
        "locc",
        seed,
        false,
        json!({ "d": d, "m": m, "tol": 1e-8 }),
        json!({
            "violations_normalized": violations_normalized,
            "violations_unnormalized": violations_unnormalized,
            "skipped_branches": skipped_branches,
            "npt_draws_exhausted": exhausted,
        }),
    );
    Ok((records, report))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ConjectureBucket {
    q: usize,
    count: usize,
    max_abs_diff: f64,
    mean_abs_diff: f64,
    max_negative_eig_spread: f64,
}

/// Conjecture explorer: bucket NPT draws by q and report how far N and N_S
/// are apart, along with the spread of the negative PT eigenvalues. Findings
/// are logged, never asserted.
pub fn check_conjecture(d: usize, trials: usize, seed: u64) -> Result<VerifyReport, MeasureError> {
    use std::collections::BTreeMap;
    let mut tally = Tally::new();
    let mut exhausted = 0usize;
    let mut buckets: BTreeMap<usize, (usize, f64, f64, f64)> = BTreeMap::new();
    for t in 0..trials {
        let mut rng = trial_rng(seed, t as u64);
        let Some(s) = draw_npt(d, t, &mut rng) else {
            exhausted += 1;
            continue;
        };
        let spec = eigvals_hermitian(&partial_transpose_b(&s), HERMITICITY_TOL)?;
        let negs: Vec<f64> =
            spec.eigenvalues().iter().filter(|&&x| x < -NEG_EIG_TOL).map(|x| -x).collect();
        let q = negs.len();
        let spread = negs.iter().cloned().fold(f64::MIN, f64::max)
            - negs.iter().cloned().fold(f64::MAX, f64::min);
        let diff = (negativity(&s)? - structured_negativity(&s)?).abs();
        let entry = buckets.entry(q).or_insert((0, 0.0, 0.0, 0.0));
        entry.0 += 1;
        entry.1 = entry.1.max(diff);
        entry.2 += diff;
        entry.3 = entry.3.max(spread);
        tally.record(0.0, 1e-9);
        tally.finish_trial();
    }
    let bucket_rows: Vec<ConjectureBucket> = buckets
        .into_iter()
        .map(|(q, (count, max_diff, sum_diff, max_spread))| ConjectureBucket {
            q,
            count,
            max_abs_diff: max_diff,
            mean_abs_diff: sum_diff / count as f64,
            max_negative_eig_spread: max_spread,
        })
        .collect();
    Ok(tally.into_report(
        "conjecture",
        seed,
        false,
        json!({ "d": d, "coincidence_q": d * (d - 1) / 2 }),
        json!({ "buckets": bucket_rows, "npt_draws_exhausted": exhausted }),
    ))
}

/// Run every suite with per-suite seed derivation; deterministic aggregate.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<VerifyReport>, MeasureError> {
    let mut reports = Vec::new();
    let suite_seed = |name: &str, d: usize| cfg.seed ^ rng::label_hash(name) ^ (d as u64);
    for &d in &cfg.dims {
        reports.push(suite_separable_zero(d, cfg.trials, suite_seed("separable_zero", d))?);
        reports.push(suite_lu_invariance(d, cfg.trials, suite_seed("lu_invariance", d))?);
        reports.push(suite_convexity(d, cfg.trials, suite_seed("convexity", d))?);
        reports.push(suite_lemma1_linearity(d, cfg.trials, suite_seed("lemma1_linearity", d))?);
        reports.push(suite_two_path(d, cfg.trials, suite_seed("two_path_identity", d))?);
        reports.push(check_result1(d, cfg.trials, suite_seed("result1", d))?);
        reports.push(suite_weyl(d * d, cfg.trials, suite_seed("weyl", d))?);
        reports.push(check_conjecture(d, cfg.trials, suite_seed("conjecture", d))?);
        if d <= 3 {
            let (_, locc) = suite_locc(d, cfg.trials, cfg.kraus_count, suite_seed("locc", d))?;
            reports.push(locc);
        }
    }
    if cfg.dims.contains(&2) {
        reports.push(suite_d2_coincidence(cfg.trials, suite_seed("d2_coincidence", 2))?);
    }
    Ok(reports)
}

/// True iff every hard suite reported zero violations.
pub fn all_hard_suites_pass(reports: &[VerifyReport]) -> bool {
    reports.iter().filter(|r| r.hard).all(|r| r.violations == 0)
}
