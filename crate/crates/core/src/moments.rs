//! Closed-form operator moments, central moments, the second-moment bound and
//! the King-operator quantities.
//!
//! Every coefficient is a ratio of `(p,q)`-numbers with shifted indices; those
//! ratios are rewritten so only `(1 - r^j)` factors with `r = q/p` and small
//! integer powers of `p` appear. Raw `[n]_{p,q}` values (which underflow for
//! `p < 1` at large `n`) never enter a division, so the tables stay accurate
//! for `n` up to 1e4 limit studies.

use crate::arith::{one_minus_pow, pq_number};
use crate::error::{PqError, Result};
use crate::params::PqParams;

/// Closed-form moments of an operator at order `n`:
/// `m0` for `e_0`, the coefficient of `x` in the `e_1` image, and the
/// coefficients of `x` and `x²` in the `e_2` image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentTable {
    pub n: u32,
    pub params: PqParams,
    pub m0: f64,
    pub m1_coeff: f64,
    pub m2_x_coeff: f64,
    pub m2_x2_coeff: f64,
}

impl MomentTable {
    /// Evaluates the `e_m` image at `x` for `m = 0, 1, 2`.
    pub fn apply(&self, m: u32, x: f64) -> f64 {
        match m {
            0 => self.m0,
            1 => self.m1_coeff * x,
            2 => self.m2_x_coeff * x + self.m2_x2_coeff * x * x,
            _ => panic!("MomentTable holds moments up to order 2, asked for {m}"),
        }
    }
}

/// Durrmeyer moments:
/// `D(e_0) = 1`, `D(e_1) = p[n]x/[n+2]`,
/// `D(e_2) = (p+q)p^{n+1}[n]x/([n+2][n+3]) + ([n]-p^{n-1})p²q[n]x²/([n+2][n+3])`,
/// in the normalized ratio forms
/// `m1 = (1-r^n)/(p(1-r^{n+2}))`,
/// `m2_x = (p+q)(1-r^n)(1-r)/(p³(1-r^{n+2})(1-r^{n+3}))`,
/// `m2_x2 = r²(1-r^{n-1})(1-r^n)/(p²(1-r^{n+2})(1-r^{n+3}))`.
///
/// As `n → ∞`: `m1 → 1/p`, `m2_x → (p²-q²)/p⁴`, `m2_x2 → q²/p⁴`.
pub fn durrmeyer_moments(n: u32, params: PqParams) -> MomentTable {
    let r = params.ratio();
    let p = params.p();
    let q = params.q();
    let dn = one_minus_pow(r, n);
    let dn2 = one_minus_pow(r, n + 2);
    let dn3 = one_minus_pow(r, n + 3);
    let m1_coeff = dn / (p * dn2);
    let m2_x_coeff = (p + q) * dn * one_minus_pow(r, 1) / (p.powi(3) * dn2 * dn3);
    let m2_x2_coeff = r * r * one_minus_pow(r, n - 1) * dn / (p * p * dn2 * dn3);
    debug_assert!(m1_coeff > 0.0 && m1_coeff <= 1.0 / p + 1e-15);
    MomentTable {
        n,
        params,
        m0: 1.0,
        m1_coeff,
        m2_x_coeff,
        m2_x2_coeff,
    }
}

/// King-modified moments: `e_0` and `e_1` are reproduced exactly;
/// `D*(e_2) = (p+q)p^n x/[n+3] + ([n]-p^{n-1}) q [n+2] x²/([n][n+3])`,
/// normalized to
/// `m2_x = (p+q)(1-r)/(p²(1-r^{n+3}))`,
/// `m2_x2 = r²(1-r^{n-1})(1-r^{n+2})/((1-r^n)(1-r^{n+3}))`.
pub fn king_moments(n: u32, params: PqParams) -> MomentTable {
    let r = params.ratio();
    let p = params.p();
    let q = params.q();
    let dn3 = one_minus_pow(r, n + 3);
    let m2_x_coeff = (p + q) * one_minus_pow(r, 1) / (p * p * dn3);
    let m2_x2_coeff =
        r * r * one_minus_pow(r, n - 1) * one_minus_pow(r, n + 2) / (one_minus_pow(r, n) * dn3);
    MomentTable {
        n,
        params,
        m0: 1.0,
        m1_coeff: 1.0,
        m2_x_coeff,
        m2_x2_coeff,
    }
}

/// First and second central moments of the Durrmeyer operator at `x`:
/// `D((t-x), x) = (p[n]-[n+2])x/[n+2]` and the matching `(t-x)²` expression,
/// assembled from the moment table as `(m1-1)x` and
/// `m2_x·x + (m2_x2 - 2·m1 + 1)x²`.
pub fn central_moments(n: u32, x: f64, params: PqParams) -> (f64, f64) {
    let t = durrmeyer_moments(n, params);
    let first = (t.m1_coeff - 1.0) * x;
    let second = t.m2_x_coeff * x + (t.m2_x2_coeff - 2.0 * t.m1_coeff + 1.0) * x * x;
    (first, second)
}

/// `φ²(x) = x(1-x)`.
#[inline]
pub fn phi_sq(x: f64) -> f64 {
    x * (1.0 - x)
}

/// `δ_n²(x) = φ²(x) + 1/[n+2]`, the composite local-error quantity.
pub fn delta_sq(n: u32, x: f64, params: PqParams) -> f64 {
    phi_sq(x) + 1.0 / pq_number(n + 2, params)
}

/// The second-moment bound `(6/[n+2]) (φ²(x) + 1/[n+2])`, which dominates
/// `D((t-x)², x)` on `[0,1]`.
pub fn second_moment_bound(n: u32, x: f64, params: PqParams) -> f64 {
    6.0 / pq_number(n + 2, params) * delta_sq(n, x, params)
}

/// Left side of the combined estimate: `D((t-x)²,x) + (p[n]x/[n+2] - x)²`.
pub fn combined_second_moment(n: u32, x: f64, params: PqParams) -> f64 {
    let (first, second) = central_moments(n, x, params);
    second + first * first
}

/// Right side of the combined estimate: `(10/[n+2]) δ_n²(x)`.
pub fn combined_bound(n: u32, x: f64, params: PqParams) -> f64 {
    10.0 / pq_number(n + 2, params) * delta_sq(n, x, params)
}

/// The King second central moment
/// `δ_n^{p,q}(x) = D*((t-x)², x) = m2_x·x + (m2_x2 - 1)x²`
/// (using `e_1` reproduction). Nonnegative wherever all weights are.
pub fn king_delta(n: u32, x: f64, params: PqParams) -> f64 {
    let t = king_moments(n, params);
    t.m2_x_coeff * x + (t.m2_x2_coeff - 1.0) * x * x
}

/// Second-moment/bound/δ² profile across a uniform grid on `[0,1]`.
///
/// Construction fails if any grid point violates the bound invariant
/// `second_central_moment <= bound`; a violation is a finding, not a value.
#[derive(Debug, Clone)]
pub struct BoundProfile {
    pub grid: Vec<f64>,
    pub second_central_moment: Vec<f64>,
    pub bound: Vec<f64>,
    pub delta_sq: Vec<f64>,
}

impl BoundProfile {
    pub fn compute(n: u32, params: PqParams, grid_points: usize) -> Result<Self> {
        assert!(grid_points >= 2);
        let mut grid = Vec::with_capacity(grid_points);
        let mut second = Vec::with_capacity(grid_points);
        let mut bound = Vec::with_capacity(grid_points);
        let mut dsq = Vec::with_capacity(grid_points);
        for i in 0..grid_points {
            let x = i as f64 / (grid_points - 1) as f64;
            let (_, m2) = central_moments(n, x, params);
            let b = second_moment_bound(n, x, params);
            if m2 > b {
                return Err(PqError::Domain(format!(
                    "second-moment bound violated at n = {n}, x = {x}: {m2} > {b}"
                )));
            }
            let d = delta_sq(n, x, params);
            debug_assert!(d > 0.0);
            grid.push(x);
            second.push(m2);
            bound.push(b);
            dsq.push(d);
        }
        Ok(Self {
            grid,
            second_central_moment: second,
            bound,
            delta_sq: dsq,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pq() -> PqParams {
        PqParams::new(0.5, 0.4).unwrap()
    }

    #[test]
    fn durrmeyer_table_values() {
        let t = durrmeyer_moments(2, pq());
        assert_eq!(t.m0, 1.0);
        // p[2]/[4] = 0.45/0.369
        assert!((t.m1_coeff - 1.2195121951219514).abs() < 1e-13);
        // direct (unnormalized) forms at n = 2
        let m2x = (0.9 * 0.5f64.powi(3) * 0.9) / (0.369 * pq_number(5, pq()));
        assert!(
            (t.m2_x_coeff - m2x).abs() < 1e-12,
            "{} vs {m2x}",
            t.m2_x_coeff
        );
    }

    #[test]
    fn moments_match_raw_number_ratios() {
        for &(p, q) in &[(0.5, 0.4), (0.9, 0.5), (1.0, 0.9), (0.6, 0.54)] {
            let params = PqParams::new(p, q).unwrap();
            for n in 1..=20u32 {
                let t = durrmeyer_moments(n, params);
                let raw_m1 = p * pq_number(n, params) / pq_number(n + 2, params);
                let raw_m2x = (p + q) * p.powi(n as i32 + 1) * pq_number(n, params)
                    / (pq_number(n + 2, params) * pq_number(n + 3, params));
                let raw_m2x2 = (pq_number(n, params) - p.powi(n as i32 - 1))
                    * p
                    * p
                    * q
                    * pq_number(n, params)
                    / (pq_number(n + 2, params) * pq_number(n + 3, params));
                assert!((t.m1_coeff - raw_m1).abs() / raw_m1 < 1e-12, "m1 n={n}");
                assert!(
                    (t.m2_x_coeff - raw_m2x).abs() / raw_m2x < 1e-12,
                    "m2x n={n}"
                );
                if n > 1 {
                    assert!(
                        (t.m2_x2_coeff - raw_m2x2).abs() / raw_m2x2 < 1e-11,
                        "m2x2 n={n}"
                    );
                } else {
                    // [1] = p^0; the x² coefficient vanishes at n = 1
                    assert!(t.m2_x2_coeff.abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn asymptotic_moment_limits() {
        // r^n at r = 0.8, n = 400 is ~1e-39: the limits are exact to 1e-12
        let t = durrmeyer_moments(400, pq());
        let p = 0.5f64;
        let q = 0.4f64;
        assert!((t.m1_coeff - 1.0 / p).abs() < 1e-12);
        assert!((t.m2_x_coeff - (p * p - q * q) / p.powi(4)).abs() < 1e-12);
        assert!((t.m2_x2_coeff - q * q / p.powi(4)).abs() < 1e-12);
        assert!((t.m2_x2_coeff - 2.56).abs() < 1e-12);
        // the ratio forms stay finite far past the point where the raw
        // [n] values underflow (limit studies at n = 1e4)
        let t = durrmeyer_moments(10_000, pq());
        assert_eq!(t.m1_coeff, 2.0);
        assert!(t.m2_x_coeff.is_finite() && t.m2_x2_coeff.is_finite());
        let k = king_moments(10_000, pq());
        assert!(k.m2_x_coeff.is_finite() && k.m2_x2_coeff.is_finite());
    }

    #[test]
    fn central_moment_values() {
        let (f, s) = central_moments(3, 0.0, pq());
        assert_eq!(f, 0.0);
        assert_eq!(s, 0.0);
        // n=2, x=1: (p[2]-[4])/[4] = (0.45-0.369)/0.369
        let (f, _) = central_moments(2, 1.0, pq());
        assert!((f - 0.21951219512195136).abs() < 1e-13, "{f}");
        // algebraic oracle: second = m2x + m2x2 - 2 m1 + 1 at x = 1
        let t = durrmeyer_moments(2, pq());
        let (_, s) = central_moments(2, 1.0, pq());
        let want = t.m2_x_coeff + t.m2_x2_coeff - 2.0 * t.m1_coeff + 1.0;
        assert!((s - want).abs() < 1e-14);
    }

    #[test]
    fn bound_values() {
        // x=0, n=1, p=1, q=0.5: 6/[3]² with [3] = 1.75
        let params = PqParams::new(1.0, 0.5).unwrap();
        let b = second_moment_bound(1, 0.0, params);
        assert!((b - 6.0 / (1.75 * 1.75)).abs() < 1e-12, "{b}");
        // n=2, x=0.5, p=.5, q=.4: (6/0.369)(0.25 + 1/0.369)
        let b = second_moment_bound(2, 0.5, pq());
        let want = 6.0 / 0.369 * (0.25 + 1.0 / 0.369);
        assert!((b - want).abs() < 1e-10, "{b} vs {want}");
        assert!((b - 48.1305).abs() < 1e-3);
        // dominance at a spot check
        let (_, s) = central_moments(2, 0.5, pq());
        assert!(s <= b);
    }

    #[test]
    fn king_table_values() {
        let t = king_moments(2, pq());
        assert_eq!(t.m0, 1.0);
        assert_eq!(t.m1_coeff, 1.0);
        // (p+q) p² / [5] = 0.225/0.2101
        assert!((t.m2_x_coeff - 1.0709186101856258).abs() < 1e-12);
        // ([2]-p) q [4] / ([2][5])
        assert!((t.m2_x2_coeff - 0.3122322703474537).abs() < 1e-12);
        // raw-ratio oracle across n
        for n in 2..=15u32 {
            let t = king_moments(n, pq());
            let p = 0.5f64;
            let q = 0.4f64;
            let raw_x = (p + q) * p.powi(n as i32) / pq_number(n + 3, pq());
            let raw_x2 = (pq_number(n, pq()) - p.powi(n as i32 - 1)) * q * pq_number(n + 2, pq())
                / (pq_number(n, pq()) * pq_number(n + 3, pq()));
            assert!((t.m2_x_coeff - raw_x).abs() / raw_x < 1e-12, "n={n}");
            assert!((t.m2_x2_coeff - raw_x2).abs() / raw_x2 < 1e-12, "n={n}");
        }
    }

    #[test]
    fn king_delta_values() {
        assert_eq!(king_delta(4, 0.0, pq()), 0.0);
        // frozen from the king_apply oracle on expanded (t-0.5)²
        let d = king_delta(2, 0.5, pq());
        assert!((d - 0.3635173726796763).abs() < 1e-13, "{d}");
        // identity: delta = D*(e2,x) - x² given e0 = 1, e1 = x
        for n in [2u32, 6, 13] {
            for x in [0.1, 0.37, 0.52] {
                let t = king_moments(n, pq());
                let want = t.apply(2, x) - 2.0 * x * t.apply(1, x) + x * x * t.m0;
                let d = king_delta(n, x, pq());
                assert!((d - want).abs() < 1e-14, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn bound_profile_holds_on_grid() {
        for &(p, q) in &[(0.6, 0.3), (0.9, 0.81), (1.0, 0.5)] {
            let params = PqParams::new(p, q).unwrap();
            for n in [4u32, 17, 40] {
                let prof = BoundProfile::compute(n, params, 101).unwrap();
                assert_eq!(prof.grid.len(), 101);
                for i in 0..101 {
                    assert!(prof.second_central_moment[i] <= prof.bound[i]);
                    assert!(prof.delta_sq[i] > 0.0);
                }
            }
        }
    }
}
