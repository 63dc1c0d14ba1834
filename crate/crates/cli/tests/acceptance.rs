//! Acceptance suite: every exit criterion as its own test, printing one
//! PASS line when it holds (run with `--nocapture` to see them; a failed
//! assertion is the FAIL line). Tolerances are pinned in code.

use std::time::Instant;

use pq_approx::{
    bernstein_apply, central_moments, combined_bound, combined_second_moment, durrmeyer_apply,
    durrmeyer_moments, king_apply, ln_pq_beta_commutative, pq_beta_closed, pq_beta_integral,
    pq_binomial, pq_derivative, pq_integral, pq_number, pq_power_basis, second_moment_bound,
    FunctionSpec, IntegrationPolicy, OperatorKind, PqParams,
};
use pq_approx_cli::{
    limit_reference, run_convergence, run_identity_suite, run_limit_comparison, ExperimentConfig,
    GridSpec,
};

fn pq() -> PqParams {
    PqParams::new(0.5, 0.4).unwrap()
}

fn policy() -> IntegrationPolicy {
    IntegrationPolicy::default()
}

fn pass(name: &str) {
    println!("ACCEPTANCE {name}: PASS");
}

#[test]
fn criterion_01_beta_gamma_identity() {
    // |numeric Beta integral - closed form| / closed <= 1e-9 over
    // 1 <= m,n <= 8 and the 12-point (p,q) grid; runtime < 5 s
    let start = Instant::now();
    let mut worst = 0.0f64;
    for p in [0.5, 0.75, 0.95, 1.0] {
        for q_frac in [0.5, 0.8, 0.99] {
            let params = PqParams::new(p, q_frac * p).unwrap();
            for m in 1..=8 {
                for n in 1..=8 {
                    let integral = pq_beta_integral(m, n, params, policy()).unwrap();
                    let closed = pq_beta_closed(m, n, params).unwrap();
                    let rel = (integral - closed).abs() / closed;
                    worst = worst.max(rel);
                    assert!(rel <= 1e-9, "p={p} q={} m={m} n={n}: {rel}", q_frac * p);
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("  worst relative deviation {worst:.3e}, elapsed {elapsed:?}");
    pass("beta-gamma identity (768 cases <= 1e-9, < 5 s)");
}

#[test]
fn criterion_02_tilde_beta_commutativity_and_witness() {
    for &(p, q) in &[(0.5, 0.4), (0.75, 0.6), (1.0, 0.9)] {
        let params = PqParams::new(p, q).unwrap();
        for m in 1..=10u32 {
            for n in 1..=10u32 {
                // exact equality in the log-domain representation
                assert_eq!(
                    ln_pq_beta_commutative(m, n, params).unwrap(),
                    ln_pq_beta_commutative(n, m, params).unwrap(),
                    "tilde Beta must be symmetric: p={p} q={q} m={m} n={n}"
                );
            }
        }
    }
    let a = pq_beta_closed(2, 3, pq()).unwrap();
    let b = pq_beta_closed(3, 2, pq()).unwrap();
    let asymmetry = (a - b).abs() / b;
    assert!(
        asymmetry > 1e-6,
        "expected non-commutativity witness, got {asymmetry}"
    );
    pass("tilde-Beta commutative (exact), standard Beta witness at (2,3)/(3,2)");
}

#[test]
fn criterion_03_partition_identity() {
    // relative deviation <= 1e-10 for n <= 25 across an 11-point x grid
    let params = pq();
    let p = params.p();
    for n in 1..=25u32 {
        let target = p.powi((n * (n - 1) / 2) as i32);
        for i in 0..=10 {
            let x = i as f64 / 10.0;
            let sum: f64 = (0..=n)
                .map(|k| {
                    pq_binomial(n, k, params).unwrap()
                        * p.powi((k * (k.max(1) - 1) / 2) as i32)
                        * x.powi(k as i32)
                        * pq_power_basis(1.0, x, n - k, params).to_real()
                })
                .sum();
            assert!(
                (sum - target).abs() / target <= 1e-10,
                "n={n} x={x}: {sum} vs {target}"
            );
        }
    }
    pass("partition identity (n <= 25, 11-point grid, <= 1e-10)");
}

#[test]
fn criterion_04_moment_reproduction() {
    let xs = [0.0, 0.25, 0.5, 0.75, 1.0];
    for &(p, q) in &[(0.5, 0.4), (0.75, 0.6), (1.0, 0.9)] {
        let params = PqParams::new(p, q).unwrap();
        for n in 1..=12u32 {
            // Durrmeyer e0, e1, e2 against the closed forms, 1e-9 relative
            let table = durrmeyer_moments(n, params);
            for m in 0..=2u32 {
                let em = FunctionSpec::monomial(m as usize);
                for &x in &xs {
                    let applied = durrmeyer_apply(&em, n, x, params, policy()).unwrap();
                    let closed = table.apply(m, x);
                    if closed == 0.0 {
                        assert_eq!(applied, 0.0, "durrmeyer m={m} n={n} x={x}");
                    } else {
                        assert!(
                            (applied - closed).abs() / closed.abs() <= 1e-9,
                            "durrmeyer m={m} n={n} x={x}: {applied} vs {closed}"
                        );
                    }
                }
            }
            // Bernstein moments within 1e-12: e0 = 1, e1 = x,
            // e2 = x² + p^{n-1}x(1-x)/[n]
            for &x in &xs {
                let v0 = bernstein_apply(&FunctionSpec::constant(1.0), n, x, params).unwrap();
                assert!((v0 - 1.0).abs() <= 1e-12, "bernstein e0 n={n} x={x}: {v0}");
                let v1 = bernstein_apply(&FunctionSpec::monomial(1), n, x, params).unwrap();
                assert!(
                    (v1 - x).abs() <= 1e-12 * x.max(1.0),
                    "bernstein e1 n={n} x={x}"
                );
                let v2 = bernstein_apply(&FunctionSpec::monomial(2), n, x, params).unwrap();
                let closed = x * x + p.powi(n as i32 - 1) * x * (1.0 - x) / pq_number(n, params);
                if closed == 0.0 {
                    assert_eq!(v2, 0.0, "bernstein e2 n={n} x={x}");
                } else {
                    assert!(
                        (v2 - closed).abs() / closed <= 1e-12,
                        "bernstein e2 n={n} x={x}: {v2} vs {closed}"
                    );
                }
            }
            // King: e0 = 1 and e1 = x within 1e-11
            for &x in &xs {
                let v0 =
                    king_apply(&FunctionSpec::constant(1.0), n, x * 0.5, params, policy()).unwrap();
                assert!((v0 - 1.0).abs() <= 1e-11, "king e0 n={n}: {v0}");
                let v1 =
                    king_apply(&FunctionSpec::monomial(1), n, x * 0.5, params, policy()).unwrap();
                assert!(
                    (v1 - x * 0.5).abs() <= 1e-11 * (x * 0.5).max(1.0),
                    "king e1 n={n} x={}: {v1}",
                    x * 0.5
                );
            }
        }
    }
    pass("moment reproduction (Durrmeyer 1e-9, Bernstein 1e-12, King 1e-11)");
}

#[test]
fn criterion_05_second_moment_bound() {
    // D((t-x)², x) <= (6/[n+2])(φ²(x) + 1/[n+2]) at 101 grid points,
    // n in 4..=40: zero violations across the (p, q) stress set
    let mut violations = 0usize;
    for p in [0.6, 0.9, 1.0] {
        for q_frac in [0.5, 0.9] {
            let params = PqParams::new(p, q_frac * p).unwrap();
            for n in 4..=40u32 {
                for i in 0..=100 {
                    let x = i as f64 / 100.0;
                    let (_, second) = central_moments(n, x, params);
                    if second > second_moment_bound(n, x, params) {
                        violations += 1;
                        eprintln!("violation: p={p} q={} n={n} x={x}", q_frac * p);
                    }
                }
            }
        }
    }
    assert_eq!(violations, 0, "{violations} bound violations found");
    pass("second-central-moment bound (zero violations on 22422-point grid)");
}

#[test]
fn criterion_06_combined_bound() {
    // D((t-x)²,x) + (p[n]x/[n+2] - x)² <= (10/[n+2]) δ_n²(x), same grid
    let mut violations = 0usize;
    for p in [0.6, 0.9, 1.0] {
        for q_frac in [0.5, 0.9] {
            let params = PqParams::new(p, q_frac * p).unwrap();
            for n in 4..=40u32 {
                for i in 0..=100 {
                    let x = i as f64 / 100.0;
                    if combined_second_moment(n, x, params) > combined_bound(n, x, params) {
                        violations += 1;
                        eprintln!("violation: p={p} q={} n={n} x={x}", q_frac * p);
                    }
                }
            }
        }
    }
    assert_eq!(
        violations, 0,
        "{violations} combined-bound violations found"
    );
    pass("combined second-moment bound (zero violations)");
}

#[test]
fn criterion_07_limit_coefficients() {
    // exact quadratic coefficients of D_n(9x²-4x+5) at p=0.5, q=0.4 converge
    // to (5, 124/25, 576/25); within 1e-3 at n=50, within 1e-10 at n=200;
    // runtime < 1 s
    let start = Instant::now();
    let params = pq();
    let limits = [5.0, 124.0 / 25.0, 576.0 / 25.0];
    let coeffs_at = |n: u32| -> [f64; 3] {
        let t = durrmeyer_moments(n, params);
        [
            5.0,
            -4.0 * t.m1_coeff + 9.0 * t.m2_x_coeff,
            9.0 * t.m2_x2_coeff,
        ]
    };
    let at50 = coeffs_at(50);
    let at200 = coeffs_at(200);
    for i in 0..3 {
        assert!(
            (at50[i] - limits[i]).abs() <= 1e-3,
            "n=50 coefficient {i}: {} vs {}",
            at50[i],
            limits[i]
        );
        assert!(
            (at200[i] - limits[i]).abs() <= 1e-10,
            "n=200 coefficient {i}: {} vs {}",
            at200[i],
            limits[i]
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("  n=50: {at50:?}; n=200: {at200:?}");
    pass("limit coefficients (5, 4.96, 23.04) at 1e-3 / 1e-10, < 1 s");
}

fn figure_config(
    operator: OperatorKind,
    f: &str,
    n: Vec<u32>,
    end: Option<f64>,
) -> ExperimentConfig {
    let function: FunctionSpec = f.parse().unwrap();
    let grid = GridSpec {
        start: 0.0,
        end: end.unwrap_or(1.0),
        points: 201,
    };
    ExperimentConfig::new(operator, pq(), n, function, grid, 1e-12).unwrap()
}

#[test]
fn criterion_08_figure_datasets() {
    // Figures are property-checked: exact-zero difference at x = 0 and
    // monotone shrinkage along the n sequence. For fixed (p, q) the operator
    // converges to its limit curve, not to f, so shrinkage for the
    // against-f datasets means the distance to the terminal (n = 100) curve;
    // the non-monotone max|D_n f - f| sequence is reported, not hidden.
    // The King dataset and the against-f* dataset also shrink literally.
    let ns = vec![5, 10, 15, 100];

    // figure 1: durrmeyer, quad, [0, 1]
    let report = run_convergence(&figure_config(
        OperatorKind::Durrmeyer,
        "poly:5,-4,9",
        ns.clone(),
        None,
    ))
    .unwrap();
    for d in &report.rows[0].diffs {
        assert_eq!(*d, 0.0, "figure 1: difference at x = 0 must be exactly 0");
    }
    assert!(
        report.summary.gap_strictly_decreasing(),
        "figure 1 gaps: {:?}",
        report.summary.gap_to_last
    );
    println!(
        "  figure 1: max|diff| per n = {:?} (non-monotone by design: the limit curve is not f)",
        report.summary.max_abs_diff
    );
    println!(
        "  figure 1: gap to n=100 curve = {:?}",
        report.summary.gap_to_last
    );

    // figure 2: durrmeyer, sinmix, [0, 1]
    let report = run_convergence(&figure_config(
        OperatorKind::Durrmeyer,
        "builtin:sinmix",
        ns.clone(),
        None,
    ))
    .unwrap();
    for d in &report.rows[0].diffs {
        assert_eq!(*d, 0.0, "figure 2: difference at x = 0 must be exactly 0");
    }
    assert!(
        report.summary.gap_strictly_decreasing(),
        "figure 2 gaps: {:?}",
        report.summary.gap_to_last
    );

    // figure 4: king, quad, [0, [n+2]/(p[n])] for the smallest n
    let end = pq_approx::king_interval_end(5, pq());
    let report = run_convergence(&figure_config(
        OperatorKind::KingDurrmeyer,
        "poly:5,-4,9",
        ns,
        Some(end),
    ))
    .unwrap();
    for d in &report.rows[0].diffs {
        assert_eq!(*d, 0.0, "figure 4: difference at x = 0 must be exactly 0");
    }
    assert!(
        report.summary.max_diff_strictly_decreasing(),
        "figure 4 max|diff|: {:?}",
        report.summary.max_abs_diff
    );
    assert!(report.summary.gap_strictly_decreasing());

    // figure 3: durrmeyer vs the limit f*, n = 10, 15, 20, 50
    let cfg = figure_config(
        OperatorKind::Durrmeyer,
        "poly:5,-4,9",
        vec![10, 15, 20, 50],
        None,
    );
    let reference = limit_reference(&cfg.function, cfg.params).unwrap();
    let report = run_limit_comparison(&cfg, &reference).unwrap();
    assert!(
        report.summary.max_diff_strictly_decreasing(),
        "figure 3 max|D_n f - f*|: {:?}",
        report.summary.max_abs_diff
    );
    pass("figure datasets (exact endpoints, monotone shrinkage per reading above)");
}

#[test]
fn criterion_09_calculus_identity_suite() {
    // product rules, power-basis rules, integration by parts on randomized
    // 200-case corpora within 1e-9 absolute; runtime < 5 s
    let start = Instant::now();
    let report = run_identity_suite(pq(), 8, 1e-9);
    for name in [
        "product_rule_1",
        "product_rule_2",
        "power_basis_derivative_forward",
        "power_basis_derivative_reverse",
        "integration_by_parts",
    ] {
        let entry = report
            .entries
            .iter()
            .find(|e| e.name == name)
            .unwrap_or_else(|| panic!("missing suite entry {name}"));
        assert!(
            entry.passed && entry.max_error <= 1e-9,
            "{name}: max error {}",
            entry.max_error
        );
    }
    // the rest of the suite must pass as well (witness entry included)
    assert!(report.all_passed());
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    pass("calculus identity suite (200-case corpora <= 1e-9 absolute, < 5 s)");
}

#[test]
fn criterion_10_classical_degeneration() {
    // at p = 1, q = 0.999999 and n <= 10 the operator matches its classical
    // p = q = 1 form (classical basis, classical quadrature) within 1e-3 on
    // an 11-point grid
    fn classical_binomial(n: u32, k: u32) -> f64 {
        (1..=k).fold(1.0, |acc, i| acc * (n - k + i) as f64 / i as f64)
    }
    fn simpson01(f: impl Fn(f64) -> f64, intervals: usize) -> f64 {
        let h = 1.0 / intervals as f64;
        let mut sum = f(0.0) + f(1.0);
        for i in 1..intervals {
            sum += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
        }
        sum * h / 3.0
    }
    fn classical_durrmeyer(f: impl Fn(f64) -> f64 + Copy, n: u32, x: f64) -> f64 {
        let b = |k: u32, t: f64| {
            classical_binomial(n, k) * t.powi(k as i32) * (1.0 - t).powi((n - k) as i32)
        };
        let mut total = b(0, x) * f(0.0);
        for k in 1..=n {
            let integral = simpson01(
                |t| {
                    classical_binomial(n, k - 1)
                        * t.powi(k as i32 - 1)
                        * (1.0 - t).powi((n - k + 1) as i32)
                        * f(t)
                },
                2000,
            );
            total += (n + 1) as f64 * b(k, x) * integral;
        }
        total
    }

    let params = PqParams::new(1.0, 0.999999).unwrap();
    let quad: FunctionSpec = "poly:5,-4,9".parse().unwrap();
    let mut worst = 0.0f64;
    for n in 1..=10u32 {
        for i in 0..=10 {
            let x = i as f64 / 10.0;
            let ours = durrmeyer_apply(&quad, n, x, params, policy()).unwrap();
            let classical = classical_durrmeyer(|t| 5.0 - 4.0 * t + 9.0 * t * t, n, x);
            let dev = (ours - classical).abs();
            worst = worst.max(dev);
            assert!(dev <= 1e-3, "n={n} x={x}: {ours} vs {classical}");
        }
    }
    println!("  worst deviation from the classical oracle: {worst:.3e}");
    pass("classical degeneration at p=1, q=0.999999 (<= 1e-3 on 11-point grid)");
}

// The textbook error estimates with unspecified absolute constants are not
// reproducible as assertions; their computable constituents are covered by
// criteria 5 and 6, and the `profile` subcommand emits the side-by-side
// error-vs-modulus datasets for inspection. This sanity check just pins that
// the calculus behind those datasets stays evaluable end to end.
#[test]
fn profile_dataset_is_evaluable() {
    use pq_approx_cli::run_profile;
    let cfg = ExperimentConfig::new(
        OperatorKind::Durrmeyer,
        PqParams::new(1.0, 0.9).unwrap(),
        vec![10, 20],
        "poly:5,-4,9".parse().unwrap(),
        GridSpec {
            start: 0.0,
            end: 1.0,
            points: 21,
        },
        1e-12,
    )
    .unwrap();
    let report = run_profile(&cfg, 64).unwrap();
    assert_eq!(report.rows.len(), 21);
    for row in &report.rows {
        for v in row.abs_diff.values() {
            assert!(v.is_finite());
        }
        for v in row.modulus_bound.values() {
            assert!(v.is_finite() && *v >= 0.0);
        }
    }
    pass("bound-vs-error profile dataset evaluable (unpinned constants not asserted)");
}

// Calculus spot values that anchor the suite to hand-derived numbers.
#[test]
fn anchor_values_from_derivations() {
    let params = pq();
    // D(t²) at x=1 is [2] = 0.9
    let d = pq_derivative(|t| t * t, 1.0, params).unwrap();
    assert!((d - 0.9).abs() < 1e-15);
    // ∫₀¹ t d_pq t = 1/[2]
    let v = pq_integral(|t| t, 1.0, params, policy()).unwrap();
    assert!((v - 1.0 / 0.9).abs() < 1e-10);
    // D₂(e₁, 1) = p[2]/[4]
    let e1 = FunctionSpec::monomial(1);
    let v = durrmeyer_apply(&e1, 2, 1.0, params, policy()).unwrap();
    assert!((v - 0.45 / 0.369).abs() < 1e-12);
    pass("anchor spot values");
}
