//! `(p,q)`-Gamma and the two `(p,q)`-Beta variants.
//!
//! The standard Beta carries the prefactor `p^{(n-1)(2m+n-2)/2}` against the
//! Gamma ratio and is *not* symmetric in `(m, n)`; the rescaled ("commutative")
//! variant multiplies the integrand by `p^{m(m-1)/2}`, which makes the combined
//! exponent `(m+n-1)(m+n-2)/2` symmetric. Both exponent polynomials are always
//! even at integer arguments; that is asserted at runtime as a transcription
//! guard.

use crate::arith::{ln_pq_factorial, pq_factorial, pq_power_basis};
use crate::calculus::{pq_integral, IntegrationPolicy};
use crate::error::{PqError, Result};
use crate::params::PqParams;

/// Selects between the standard (non-commutative) and rescaled commutative
/// Beta forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaVariant {
    Standard,
    Commutative,
}

/// The `(p,q)`-Gamma function at a positive integer: `Γ(n) = [n-1]!`.
///
/// Only integer arguments are defined; `n = 0` is rejected.
pub fn pq_gamma(n: u32, params: PqParams) -> Result<f64> {
    if n == 0 {
        return Err(PqError::Domain(
            "the (p,q)-Gamma function is defined for positive integers only".into(),
        ));
    }
    Ok(pq_factorial(n - 1, params))
}

/// `ln Γ(n) = ln [n-1]!`.
pub fn ln_pq_gamma(n: u32, params: PqParams) -> Result<f64> {
    if n == 0 {
        return Err(PqError::Domain(
            "the (p,q)-Gamma function is defined for positive integers only".into(),
        ));
    }
    Ok(ln_pq_factorial(n - 1, params))
}

fn check_positive(m: u32, n: u32) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(PqError::Domain(format!(
            "Beta arguments must be positive integers, got ({m}, {n})"
        )));
    }
    Ok(())
}

/// `ln B(m, n)` in the closed form
/// `p^{(n-1)(2m+n-2)/2} Γ(m) Γ(n) / Γ(m+n)`.
pub fn ln_pq_beta_closed(m: u32, n: u32, params: PqParams) -> Result<f64> {
    check_positive(m, n)?;
    let (m_i, n_i) = (m as i64, n as i64);
    let e = (n_i - 1) * (2 * m_i + n_i - 2);
    assert!(e % 2 == 0, "Beta exponent (n-1)(2m+n-2) must be even");
    Ok(
        (e / 2) as f64 * params.p().ln() + ln_pq_gamma(m, params)? + ln_pq_gamma(n, params)?
            - ln_pq_gamma(m + n, params)?,
    )
}

/// The closed-form `(p,q)`-Beta function. Strictly positive.
///
/// ```
/// use pq_approx::{pq_beta_closed, PqParams};
///
/// let pq = PqParams::new(0.5, 0.4).unwrap();
/// // B(m, 1) = 1/[m]
/// assert!((pq_beta_closed(3, 1, pq).unwrap() - 1.0 / 0.61).abs() < 1e-12);
/// ```
pub fn pq_beta_closed(m: u32, n: u32, params: PqParams) -> Result<f64> {
    Ok(ln_pq_beta_closed(m, n, params)?.exp())
}

/// The `(p,q)`-Beta function evaluated from its defining integral
/// `∫_0^1 x^{m-1} (1 ⊖ qx)^{n-1} d_pq x`.
///
/// Serves as the independent series oracle for [`pq_beta_closed`]; the two
/// routes share no code beyond the parameter pair.
pub fn pq_beta_integral(
    m: u32,
    n: u32,
    params: PqParams,
    policy: IntegrationPolicy,
) -> Result<f64> {
    check_positive(m, n)?;
    pq_integral(
        |t| t.powi(m as i32 - 1) * pq_power_basis(1.0, params.q() * t, n - 1, params).to_real(),
        1.0,
        params,
        policy,
    )
}

/// `ln B~(m, n)` for the commutative variant,
/// `p^{(2mn+m²+n²-3m-3n+2)/2} Γ(m) Γ(n) / Γ(m+n)`.
///
/// Arguments are canonicalized to `(min, max)` before summation, so the
/// symmetry `B~(m,n) = B~(n,m)` holds bit-exactly, not merely within
/// rounding (float addition is commutative but not associative).
pub fn ln_pq_beta_commutative(m: u32, n: u32, params: PqParams) -> Result<f64> {
    check_positive(m, n)?;
    let (lo, hi) = (m.min(n), m.max(n));
    let (m_i, n_i) = (lo as i64, hi as i64);
    let e = 2 * m_i * n_i + m_i * m_i + n_i * n_i - 3 * m_i - 3 * n_i + 2;
    assert!(e % 2 == 0, "tilde-Beta exponent must be even");
    Ok(
        (e / 2) as f64 * params.p().ln() + ln_pq_gamma(lo, params)? + ln_pq_gamma(hi, params)?
            - ln_pq_gamma(lo + hi, params)?,
    )
}

/// The commutative `(p,q)`-Beta variant; symmetric in `(m, n)` exactly, by
/// construction of the exponent.
pub fn pq_beta_commutative(m: u32, n: u32, params: PqParams) -> Result<f64> {
    Ok(ln_pq_beta_commutative(m, n, params)?.exp())
}

/// Dispatch on [`BetaVariant`].
pub fn pq_beta(variant: BetaVariant, m: u32, n: u32, params: PqParams) -> Result<f64> {
    match variant {
        BetaVariant::Standard => pq_beta_closed(m, n, params),
        BetaVariant::Commutative => pq_beta_commutative(m, n, params),
    }
}
