//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see every line.

use sneg::matcore::{eigvals_hermitian, HERMITICITY_TOL};
use sneg::measures::{
    is_separable_spa, lambda_min_spa, measure_report, negativity, q_count, structured_negativity,
    structured_negativity_pt_path, structured_negativity_spa_path,
};
use sneg::qstate::{
    max_entangled, partial_transpose_b, random_density, rho_a, werner, Family,
};
use sneg::sweep::run_sweep;
use sneg::verify;

const SEED: u64 = 0x5eed;

/// Print the verdict line and panic on failure so cargo reports it too.
fn verdict(criterion: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[acceptance] {criterion}: {tag} — {detail}");
    assert!(pass, "{criterion} failed: {detail}");
}

#[test]
fn criterion_01_werner_sweep_closed_forms_coincide() {
    let sweep = run_sweep(Family::Werner, 1.0 / 3.0, 1.0, 50).unwrap();
    let mut worst = 0.0f64;
    for row in &sweep.rows {
        let f = row.parameter_value;
        let n_expected = ((3.0 * f - 1.0) / 2.0).max(0.0);
        let ns_expected = (18.0 * (2.0 / 9.0 + (f - 3.0) / 12.0)).max(0.0);
        worst = worst
            .max((row.negativity - n_expected).abs())
            .max((row.structured_negativity - ns_expected).abs());
        assert!((row.negativity - n_expected).abs() <= 1e-9, "F = {f}");
        assert!((row.structured_negativity - ns_expected).abs() <= 1e-9, "F = {f}");
        assert!((row.negativity - row.structured_negativity).abs() <= 1e-6, "F = {f}");
        assert!((row.negativity - row.c_lb).abs() <= 1e-6, "F = {f}");
    }
    verdict(
        "criterion 1 (Werner sweep)",
        true,
        &format!("50 points, worst closed-form deviation {worst:.3e}"),
    );
}

#[test]
fn criterion_02_mems_sweeps_both_regimes() {
    let sweep = run_sweep(Family::Mems, 0.0, 1.0, 50).unwrap();
    let mut worst = 0.0f64;
    for row in &sweep.rows {
        let c = row.parameter_value;
        let (n_expected, ns_expected) = if c >= 2.0 / 3.0 {
            let root = (1.0 - 2.0 * c + 2.0 * c * c).sqrt();
            (-1.0 + c + root, 18.0 * (2.0 / 9.0 + (-5.0 + c + root) / 18.0))
        } else {
            let root = (1.0 + 9.0 * c * c).sqrt();
            ((-1.0 + root) / 3.0, 18.0 * (2.0 / 9.0 + (-13.0 + root) / 54.0))
        };
        worst = worst
            .max((row.negativity - n_expected.max(0.0)).abs())
            .max((row.structured_negativity - ns_expected.max(0.0)).abs());
        assert!((row.negativity - n_expected.max(0.0)).abs() <= 1e-9, "C = {c}");
        assert!((row.structured_negativity - ns_expected.max(0.0)).abs() <= 1e-9, "C = {c}");
        assert!((row.negativity - row.structured_negativity).abs() <= 1e-9, "C = {c}");
    }
    verdict(
        "criterion 2 (MEMS sweeps)",
        true,
        &format!("both h(C) regimes, worst deviation {worst:.3e}"),
    );
}

#[test]
fn criterion_03_rho_a_sweep() {
    let sweep = run_sweep(Family::RhoA, std::f64::consts::FRAC_1_SQRT_2, 1.0, 50).unwrap();
    for row in &sweep.rows {
        assert!(
            row.structured_negativity > row.negativity,
            "a = {}: N_S must strictly exceed N",
            row.parameter_value
        );
        assert!(
            row.structured_negativity > row.c_lb,
            "a = {}: N_S must strictly exceed C_lb",
            row.parameter_value
        );
    }
    let at_one = measure_report(&rho_a(1.0).unwrap()).unwrap();
    let ns_ok = (at_one.structured_negativity - 3.0 / 7.0).abs() <= 1e-9;
    verdict("criterion 3 (ρ_a sweep, N_S = 3/7 at a = 1)", ns_ok, "strict ordering on all 50 rows");
    let n_ok = (at_one.negativity - 2.0 / 7.0).abs() <= 1e-9;
    verdict(
        "criterion 3 (ρ_a N = 2/7 at a = 1)",
        n_ok,
        &format!(
            "stated value 2/7 = {:.9}; eigensolver gives {:.9} (= √2/7); the stated closed form \
             does not match the spectrum of the defined state",
            2.0 / 7.0,
            at_one.negativity
        ),
    );
}

#[test]
fn criterion_03_eigensolver_ground_truth_for_rho_a() {
    // companion record: the true negativity at a = 1 is √2/7, from negative PT
    // eigenvalues −1/7 and (1−√2)/7
    let at_one = measure_report(&rho_a(1.0).unwrap()).unwrap();
    let truth = std::f64::consts::SQRT_2 / 7.0;
    verdict(
        "criterion 3 companion (ρ_a ground truth)",
        (at_one.negativity - truth).abs() <= 1e-9,
        &format!("N(ρ_a(1)) = {:.12} = √2/7", at_one.negativity),
    );
}

#[test]
fn criterion_04_rho_alpha_sweep_sign_corrected_forms() {
    let sweep = run_sweep(Family::RhoAlpha, 4.0, 5.0, 50).unwrap();
    let mut as_printed_n_worst = 0.0f64;
    let mut as_printed_ns_worst = 0.0f64;
    for row in &sweep.rows {
        let alpha = row.parameter_value;
        let disc = (41.0 - 20.0 * alpha + 4.0 * alpha * alpha).sqrt();
        let corrected = ((disc - 5.0) / 14.0).max(0.0);
        assert!((row.negativity - row.structured_negativity).abs() <= 1e-9, "α = {alpha}");
        assert!(row.c_lb >= row.structured_negativity - 1e-9, "α = {alpha}");
        assert!((row.negativity - corrected).abs() <= 1e-9, "α = {alpha}");
        // the as-printed variants from the source text
        let as_printed_n = -(1.0 / 14.0) * (-5.0 + disc);
        let as_printed_ns = 84.0 * (3.0 / 28.0 - (-131.0 + disc) / 1176.0);
        as_printed_n_worst = as_printed_n_worst.max((row.negativity - as_printed_n).abs());
        as_printed_ns_worst =
            as_printed_ns_worst.max((row.structured_negativity - as_printed_ns).abs());
    }
    // documented typo finding: the as-printed forms do not track the spectrum
    let flagged = as_printed_n_worst > 1e-6 && as_printed_ns_worst > 1e-6;
    verdict(
        "criterion 4 (ρ_α sweep)",
        flagged,
        &format!(
            "sign-corrected form matches to 1e-9; as-printed forms deviate by {as_printed_n_worst:.3e} (N) \
             and {as_printed_ns_worst:.3e} (N_S) — flagged as mismatched"
        ),
    );
}

fn ensemble(d: usize) -> impl Iterator<Item = sneg::qstate::BipartiteState> {
    (0..1000u64).map(move |t| random_density(d, 1 + (t as usize % (d * d)), SEED ^ (d as u64) << 32 ^ t))
}

#[test]
fn criterion_05_two_path_identity_1000_states_per_dim() {
    for d in [2usize, 3, 4] {
        let mut worst = 0.0f64;
        for s in ensemble(d) {
            let via_spa = structured_negativity_spa_path(&s).unwrap();
            let via_pt = structured_negativity_pt_path(&s).unwrap();
            let diff = (via_spa - via_pt).abs();
            worst = worst.max(diff);
            assert!(diff <= 1e-9, "d = {d}: {via_spa} vs {via_pt}");
        }
        verdict(
            &format!("criterion 5 (two-path identity, d = {d})"),
            true,
            &format!("1000 states, worst |Δ| = {worst:.3e}"),
        );
    }
}

#[test]
fn criterion_06_result1_bounds_and_d2_equality() {
    for d in [2usize, 3, 4] {
        let df = d as f64;
        let mut npt_draws = 0usize;
        for s in ensemble(d) {
            let n = negativity(&s).unwrap();
            let ns = structured_negativity(&s).unwrap();
            let q = q_count(&s).unwrap();
            if q >= 1 {
                npt_draws += 1;
                let q_bound = 2.0 * q as f64 / (df * (df - 1.0)) * ns;
                assert!(n <= q_bound + 1e-9, "d = {d} q = {q}: {n} vs {q_bound}");
                if d == 2 {
                    assert!((n - ns).abs() <= 1e-9, "d = 2 equality: {n} vs {ns}");
                }
            }
            assert!(n <= 2.0 * (1.0 - 1.0 / df) * ns + 1e-9, "d = {d}");
        }
        verdict(
            &format!("criterion 6 (Result-1 bounds, d = {d})"),
            npt_draws > 0,
            &format!("1000 states, {npt_draws} NPT draws, both bounds held"),
        );
    }
}

#[test]
fn criterion_07_monotone_axiom_hard_suites() {
    for d in [2usize, 3] {
        let r = verify::suite_separable_zero(d, 1000, SEED ^ 1 ^ d as u64).unwrap();
        verdict(
            &format!("criterion 7 (separable-zero, d = {d})"),
            r.violations == 0,
            &format!("{} draws, worst margin {:.3e}", r.trials, r.worst_margin),
        );
    }
    for d in [2usize, 3] {
        let r = verify::suite_lu_invariance(d, 500, SEED ^ 2 ^ d as u64).unwrap();
        verdict(
            &format!("criterion 7 (LU invariance, d = {d})"),
            r.violations == 0,
            &format!("{} draws", r.trials),
        );
        let r = verify::suite_convexity(d, 500, SEED ^ 3 ^ d as u64).unwrap();
        verdict(
            &format!("criterion 7 (convexity, d = {d})"),
            r.violations == 0,
            &format!("{} draws, worst margin {:.3e}", r.trials, r.worst_margin),
        );
        let r = verify::suite_lemma1_linearity(d, 500, SEED ^ 4 ^ d as u64).unwrap();
        verdict(
            &format!("criterion 7 (Lemma-1 linearity, d = {d})"),
            r.violations == 0 && r.worst_margin >= -1e-10,
            &format!("{} draws, worst residual margin {:.3e}", r.trials, r.worst_margin),
        );
    }
    for n in [4usize, 9] {
        let r = verify::suite_weyl(n, 1000, SEED ^ 5 ^ n as u64).unwrap();
        verdict(
            &format!("criterion 7 (Weyl inequality, n = {n})"),
            r.violations == 0,
            &format!("1000 Hermitian pairs, all valid (k, j)"),
        );
    }
}

#[test]
fn criterion_08_normalization_anchors() {
    for d in [2usize, 3, 4] {
        let s = max_entangled(d).unwrap();
        let n = negativity(&s).unwrap();
        let ns = structured_negativity(&s).unwrap();
        let q = q_count(&s).unwrap();
        let pass = (n - 1.0).abs() <= 1e-9 && (ns - 1.0).abs() <= 1e-9 && q == d * (d - 1) / 2;
        verdict(
            &format!("criterion 8 (normalization anchors, d = {d})"),
            pass,
            &format!("N = {n:.12}, N_S = {ns:.12}, q = {q}"),
        );
    }
}

#[test]
fn criterion_09_spa_threshold_boundary() {
    let boundary = werner(1.0 / 3.0).unwrap();
    let lam = lambda_min_spa(&boundary).unwrap();
    let sep = is_separable_spa(&boundary).unwrap();
    let just_inside = werner(1.0 / 3.0 + 1e-3).unwrap();
    let entangled_flagged = !is_separable_spa(&just_inside).unwrap();
    let pass = sep && (lam - 2.0 / 9.0).abs() <= 1e-9 && entangled_flagged;
    verdict(
        "criterion 9 (SPA threshold boundary)",
        pass,
        &format!("λ_min(spa(werner(1/3))) = {lam:.12}, verdicts flip across the boundary"),
    );
}

#[test]
fn criterion_10_reporting_suites_deterministic() {
    let (recs_a, rep_a) = verify::suite_locc(2, 500, 2, SEED ^ 10).unwrap();
    let (recs_b, rep_b) = verify::suite_locc(2, 500, 2, SEED ^ 10).unwrap();
    let locc_ok = serde_json::to_string(&rep_a).unwrap() == serde_json::to_string(&rep_b).unwrap()
        && recs_a.len() == recs_b.len()
        && recs_a.iter().zip(&recs_b).all(|(x, y)| x.ns_before == y.ns_before && x.p_i == y.p_i)
        && recs_a.iter().all(|r| (r.p_i.iter().sum::<f64>() - 1.0).abs() < 1e-8);
    verdict(
        "criterion 10 (LOCC Monte Carlo)",
        locc_ok,
        &format!(
            "500 trials deterministic; violation counts: normalized = {}, unnormalized = {}",
            rep_a.details["violations_normalized"], rep_a.details["violations_unnormalized"]
        ),
    );

    let conj_a = verify::check_conjecture(3, 2000, SEED ^ 11).unwrap();
    let conj_b = verify::check_conjecture(3, 2000, SEED ^ 11).unwrap();
    let buckets = conj_a.details["buckets"].as_array().unwrap().clone();
    let conj_ok = serde_json::to_string(&conj_a).unwrap() == serde_json::to_string(&conj_b).unwrap()
        && !buckets.is_empty();
    let summary: Vec<String> = buckets
        .iter()
        .map(|b| {
            format!(
                "q={} n={} max|N−N_S|={:.2e}",
                b["q"], b["count"],
                b["max_abs_diff"].as_f64().unwrap()
            )
        })
        .collect();
    verdict(
        "criterion 10 (conjecture bucketing, d = 3)",
        conj_ok,
        &format!("2000 draws deterministic; buckets: {}", summary.join("; ")),
    );
}

#[test]
fn sanity_spectral_primitives_for_families() {
    // keeps the acceptance suite honest about its own eigensolver inputs
    for d in [2usize, 3, 4] {
        let s = max_entangled(d).unwrap();
        let spec = eigvals_hermitian(&partial_transpose_b(&s), HERMITICITY_TOL).unwrap();
        assert!((spec.min() + 1.0 / d as f64).abs() < 1e-10);
    }
}
