//! Moment tables against the operators themselves, and the second-moment
//! bounds across the full stress grid.

mod common;

use pq_approx::{
    central_moments, combined_bound, combined_second_moment, durrmeyer_apply, durrmeyer_moments,
    king_apply, king_delta, king_moments, second_moment_bound, FunctionSpec, IntegrationPolicy,
    PqParams,
};

fn pq() -> PqParams {
    PqParams::new(0.5, 0.4).unwrap()
}

fn policy() -> IntegrationPolicy {
    IntegrationPolicy::default()
}

#[test]
fn moment_table_matches_operator_images() {
    let xs = [0.0, 0.25, 0.5, 0.75, 1.0];
    for &(p, q) in &[(0.5, 0.4), (0.75, 0.6), (1.0, 0.9)] {
        let params = PqParams::new(p, q).unwrap();
        for n in 1..=12u32 {
            let table = durrmeyer_moments(n, params);
            for m in 0..=2u32 {
                let em = FunctionSpec::monomial(m as usize);
                for &x in &xs {
                    let applied = durrmeyer_apply(&em, n, x, params, policy()).unwrap();
                    let closed = table.apply(m, x);
                    if closed == 0.0 {
                        assert_eq!(applied, 0.0, "m={m} n={n} x={x}");
                    } else {
                        assert!(
                            (applied - closed).abs() / closed.abs() <= 1e-9,
                            "m={m} n={n} x={x}: {applied} vs {closed}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn central_moments_match_expanded_monomials() {
    // D((t-x), x) and D((t-x)², x) via the operator on expanded polynomials
    for &(p, q) in &[(0.5, 0.4), (1.0, 0.9)] {
        let params = PqParams::new(p, q).unwrap();
        for n in [1u32, 4, 9] {
            for x in [0.0, 0.3, 0.7, 1.0] {
                let (first, second) = central_moments(n, x, params);
                let lin = FunctionSpec::polynomial(vec![-x, 1.0]);
                let sq = FunctionSpec::polynomial(vec![x * x, -2.0 * x, 1.0]);
                let first_op = durrmeyer_apply(&lin, n, x, params, policy()).unwrap();
                let second_op = durrmeyer_apply(&sq, n, x, params, policy()).unwrap();
                assert!(
                    (first - first_op).abs() <= 1e-11 * first_op.abs().max(1.0),
                    "first n={n} x={x}: {first} vs {first_op}"
                );
                assert!(
                    (second - second_op).abs() <= 1e-11 * second_op.abs().max(1.0),
                    "second n={n} x={x}: {second} vs {second_op}"
                );
            }
        }
    }
}

#[test]
fn king_moments_match_operator_fit() {
    // recover the e2 coefficients from two King evaluations and compare
    let params = pq();
    let e2 = FunctionSpec::monomial(2);
    for n in [2u32, 5, 11] {
        let (x1, x2) = (0.2, 0.45);
        let v1 = king_apply(&e2, n, x1, params, policy()).unwrap();
        let v2 = king_apply(&e2, n, x2, params, policy()).unwrap();
        // v = a x + b x²  =>  solve the 2x2 system
        let det = x1 * x2 * x2 - x2 * x1 * x1;
        let a = (v1 * x2 * x2 - v2 * x1 * x1) / det;
        let b = (v2 * x1 - v1 * x2) / det;
        let table = king_moments(n, params);
        assert!(
            (a - table.m2_x_coeff).abs() <= 1e-8 * table.m2_x_coeff.abs(),
            "n={n}: fit a={a} vs {}",
            table.m2_x_coeff
        );
        assert!(
            (b - table.m2_x2_coeff).abs() <= 1e-8 * table.m2_x2_coeff.abs().max(1e-6),
            "n={n}: fit b={b} vs {}",
            table.m2_x2_coeff
        );
    }
}

#[test]
fn king_centering_identity() {
    // the King second central moment from the moment table equals king_delta
    for &(p, q) in &[(0.5, 0.4), (0.9, 0.45), (1.0, 0.9)] {
        let params = PqParams::new(p, q).unwrap();
        for n in [1u32, 4, 12, 40] {
            for x in [0.0, 0.2, 0.5, 0.9] {
                let t = king_moments(n, params);
                let from_table = t.apply(2, x) - 2.0 * x * t.apply(1, x) + x * x * t.m0;
                let delta = king_delta(n, x, params);
                assert!(
                    (from_table - delta).abs() <= 1e-11 * delta.abs().max(1e-12),
                    "n={n} x={x}: {from_table} vs {delta}"
                );
            }
        }
    }
    // and against the operator on the expanded square
    let params = pq();
    for n in [2u32, 7] {
        for x in [0.1, 0.35, 0.5] {
            let sq = FunctionSpec::polynomial(vec![x * x, -2.0 * x, 1.0]);
            let applied = king_apply(&sq, n, x, params, policy()).unwrap();
            let delta = king_delta(n, x, params);
            assert!(
                (applied - delta).abs() <= 1e-10 * applied.abs().max(1.0),
                "n={n} x={x}: {applied} vs {delta}"
            );
        }
    }
}

#[test]
fn second_moment_bound_dominates_on_stress_grid() {
    // zero violations allowed across n in 4..=40, three p values, two q ratios
    let mut checked = 0usize;
    for p in [0.6, 0.9, 1.0] {
        for q_frac in [0.5, 0.9] {
            let params = PqParams::new(p, q_frac * p).unwrap();
            for n in 4..=40u32 {
                for i in 0..=100 {
                    let x = i as f64 / 100.0;
                    let (_, second) = central_moments(n, x, params);
                    let bound = second_moment_bound(n, x, params);
                    assert!(
                        second <= bound,
                        "violation at p={p} q={} n={n} x={x}: {second} > {bound}",
                        q_frac * p
                    );
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 6 * 37 * 101);
}

#[test]
fn combined_bound_dominates_on_stress_grid() {
    // D((t-x)²,x) + (p[n]x/[n+2] - x)² <= 10/[n+2] δ_n²(x)
    for p in [0.6, 0.9, 1.0] {
        for q_frac in [0.5, 0.9] {
            let params = PqParams::new(p, q_frac * p).unwrap();
            for n in 4..=40u32 {
                for i in 0..=100 {
                    let x = i as f64 / 100.0;
                    let lhs = combined_second_moment(n, x, params);
                    let rhs = combined_bound(n, x, params);
                    assert!(
                        lhs <= rhs,
                        "violation at p={p} q={} n={n} x={x}: {lhs} > {rhs}",
                        q_frac * p
                    );
                }
            }
        }
    }
}
