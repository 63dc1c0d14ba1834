//! Foundational `(p,q)`-arithmetic: numbers, factorials, binomial coefficients
//! and the power basis.
//!
//! Everything here reduces internally to the ratio `r = q/p` plus exact integer
//! powers of `p`, using the identity `[m]_{p,q} = p^{m-1} [m]_r` where
//! `[m]_r = (1 - r^m)/(1 - r)`. Quantities whose true value exceeds `f64`
//! range (factorials and binomials at large index, power-basis products) have
//! log-domain companions.

use crate::error::{PqError, Result};
use crate::params::PqParams;
use crate::signed_log::SignedLogValue;

/// `1 - r^j` computed as `-expm1(j ln r)`, accurate even when `r` is very
/// close to 1 (classical-limit studies use q/p down to 1e-6 away from 1).
#[inline]
pub(crate) fn one_minus_pow(r: f64, j: u32) -> f64 {
    if j == 0 {
        0.0
    } else {
        -(j as f64 * r.ln()).exp_m1()
    }
}

/// `ln(1 - r^j)` via `ln_1p`.
#[inline]
pub(crate) fn ln_one_minus_pow(r: f64, j: u32) -> f64 {
    (-r.powi(j as i32)).ln_1p()
}

/// The ratio-domain number `[n]_r = 1 + r + ... + r^{n-1}`, evaluated by
/// Horner's scheme.
#[inline]
pub fn pq_number_ratio(n: u32, r: f64) -> f64 {
    let mut s = 0.0;
    for _ in 0..n {
        s = s * r + 1.0;
    }
    s
}

/// The `(p,q)`-number `[n]_{p,q} = p^{n-1} + p^{n-2} q + ... + q^{n-1}`.
///
/// Evaluated as `p^{n-1} [n]_r` with the sum in Horner form, not as the
/// quotient `(p^n - q^n)/(p - q)`, which cancels catastrophically when
/// `p - q` is small. `[0] = 0`, `[1] = 1`. Increasing in `n` only at `p = 1`;
/// for `p < 1` the values tend to 0 (and underflow for very large `n`).
///
/// ```
/// use pq_approx::{pq_number, PqParams};
///
/// let pq = PqParams::new(0.5, 0.4).unwrap();
/// assert!((pq_number(3, pq) - 0.61).abs() < 1e-15);
/// ```
pub fn pq_number(n: u32, params: PqParams) -> f64 {
    if n == 0 {
        return 0.0;
    }
    params.p().powi(n as i32 - 1) * pq_number_ratio(n, params.ratio())
}

/// The `(p,q)`-factorial `[n]! = [1][2]...[n]`, with `[0]! = 1`.
///
/// Plain-real value; underflows for large `n` when `p < 1` (the true value
/// carries `p^{n(n-1)/2}`). Use [`ln_pq_factorial`] past that range.
pub fn pq_factorial(n: u32, params: PqParams) -> f64 {
    let mut v = 1.0;
    for k in 1..=n {
        v *= pq_number(k, params);
    }
    v
}

/// `ln [n]!`, assembled as `ln(p) * n(n-1)/2 + sum_k ln [k]_r`.
pub fn ln_pq_factorial(n: u32, params: PqParams) -> f64 {
    let r = params.ratio();
    let ln_one_minus_r = ln_one_minus_pow(r, 1);
    let mut s = 0.0;
    for k in 1..=n {
        s += ln_one_minus_pow(r, k) - ln_one_minus_r;
    }
    let half_exp = n as i64 * (n as i64 - 1) / 2;
    half_exp as f64 * params.p().ln() + s
}

/// `ln` of the Gaussian (ratio-domain) binomial coefficient
/// `[n k]_r = prod_{i=1..k} (1 - r^{n-k+i})/(1 - r^i)`.
pub(crate) fn ln_gaussian_binomial(n: u32, k: u32, r: f64) -> f64 {
    let k = k.min(n - k);
    let mut s = 0.0;
    for i in 1..=k {
        s += ln_one_minus_pow(r, n - k + i) - ln_one_minus_pow(r, i);
    }
    s
}

/// `ln` of the `(p,q)`-binomial coefficient, via
/// `[n k]_{p,q} = p^{k(n-k)} [n k]_r`.
///
/// Fails when `k > n`.
pub fn ln_pq_binomial(n: u32, k: u32, params: PqParams) -> Result<f64> {
    if k > n {
        return Err(PqError::Domain(format!(
            "binomial index out of range: k = {k} > n = {n}"
        )));
    }
    let e = k as i64 * (n - k) as i64;
    Ok(e as f64 * params.p().ln() + ln_gaussian_binomial(n, k, params.ratio()))
}

/// The `(p,q)`-binomial coefficient `[n]! / ([n-k]! [k]!)`.
///
/// Symmetric in `k <-> n-k`. Computed through the log form, so it stays
/// accurate where the plain factorial ratio would under/overflow.
///
/// ```
/// use pq_approx::{pq_binomial, PqParams};
///
/// let pq = PqParams::new(0.5, 0.4).unwrap();
/// assert!((pq_binomial(4, 2, pq).unwrap() - 0.2501).abs() < 1e-12);
/// ```
pub fn pq_binomial(n: u32, k: u32, params: PqParams) -> Result<f64> {
    Ok(ln_pq_binomial(n, k, params)?.exp())
}

/// The `(p,q)`-power basis
/// `(x ⊖ a)^n = (x - a)(px - qa)(p²x - q²a) ... (p^{n-1}x - q^{n-1}a)`,
/// sign-tracked. `n = 0` gives `+1`; a zero factor gives sign 0 exactly.
///
/// The running points `p^j x` and `q^j a` are updated multiplicatively rather
/// than through `powi`, so consecutive factors share rounding history.
pub fn pq_power_basis(x: f64, a: f64, n: u32, params: PqParams) -> SignedLogValue {
    let mut sign: i8 = 1;
    let mut log_mag = 0.0;
    let mut px = x;
    let mut qa = a;
    for _ in 0..n {
        let factor = px - qa;
        if factor == 0.0 {
            return SignedLogValue::ZERO;
        }
        if factor < 0.0 {
            sign = -sign;
        }
        log_mag += factor.abs().ln();
        px *= params.p();
        qa *= params.q();
    }
    SignedLogValue::from_parts(sign, log_mag)
}
