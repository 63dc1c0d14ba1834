//! The `(p,q)`-derivative and the series-defined `(p,q)`-integral.

use crate::error::{PqError, Result};
use crate::params::PqParams;

/// Truncation policy for the infinite series behind the `(p,q)`-integral.
///
/// Summation stops once the current term is below `rel_tol` times the running
/// partial sum for three consecutive terms (terms may pass through zero when
/// the integrand oscillates, so one small term is not proof of convergence),
/// or fails with [`PqError::Convergence`] after `max_terms`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationPolicy {
    rel_tol: f64,
    max_terms: usize,
}

impl IntegrationPolicy {
    /// Requires `rel_tol` in `(0, 1e-3]` and `max_terms >= 16`.
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
            return Err(PqError::InvalidParams(format!(
                "rel_tol must lie in (0, 1e-3], got {rel_tol}"
            )));
        }
        if max_terms < 16 {
            return Err(PqError::InvalidParams(format!(
                "max_terms must be at least 16, got {max_terms}"
            )));
        }
        Ok(Self { rel_tol, max_terms })
    }

    #[inline]
    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    #[inline]
    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for IntegrationPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 20_000,
        }
    }
}

/// Sums `term(0) + term(1) + ...` under the policy's truncation rule.
/// `term` is called exactly once per index, in order, so it may carry
/// iterated state (geometric node updates).
pub(crate) fn sum_series(
    policy: IntegrationPolicy,
    mut term: impl FnMut(usize) -> f64,
) -> Result<f64> {
    let mut sum = 0.0;
    let mut consecutive = 0u32;
    for k in 0..policy.max_terms {
        let t = term(k);
        sum += t;
        if t.abs() <= policy.rel_tol * sum.abs() {
            consecutive += 1;
            if consecutive >= 3 {
                return Ok(sum);
            }
        } else {
            consecutive = 0;
        }
    }
    Err(PqError::Convergence {
        partial: sum,
        terms: policy.max_terms,
    })
}

/// The `(p,q)`-derivative `D f(x) = (f(px) - f(qx)) / ((p - q) x)`, `x != 0`.
///
/// For a polynomial of degree `d` this is a polynomial identity in `x`; the
/// only error is rounding.
///
/// ```
/// use pq_approx::{pq_derivative, PqParams};
///
/// let pq = PqParams::new(0.5, 0.4).unwrap();
/// // D(t^2)(x) = [2] x
/// let d = pq_derivative(|t| t * t, 1.0, pq).unwrap();
/// assert!((d - 0.9).abs() < 1e-15);
/// ```
pub fn pq_derivative(f: impl Fn(f64) -> f64, x: f64, params: PqParams) -> Result<f64> {
    if x == 0.0 {
        return Err(PqError::Domain(
            "the (p,q)-derivative is defined only for x != 0".into(),
        ));
    }
    Ok((f(params.p() * x) - f(params.q() * x)) / ((params.p() - params.q()) * x))
}

/// The `(p,q)`-integral on `[0, a]`:
/// `(p - q) a sum_{k>=0} (q^k / p^{k+1}) f(q^k a / p^{k+1})`.
///
/// Note the `k = 0` node is `a/p`, which exceeds `a` whenever `p < 1`: the
/// integrand must be defined on `[0, a/p]`, not just `[0, a]`.
///
/// Nodes are generated iteratively as `r^k a / p` with `r = q/p` (a single
/// running multiplication), never as separate powers `q^k` and `p^{k+1}`,
/// which both leave `f64` range long before their ratio does.
///
/// Fails with [`PqError::Convergence`] (carrying the truncated value) when the
/// policy's term budget runs out.
pub fn pq_integral(
    f: impl Fn(f64) -> f64,
    a: f64,
    params: PqParams,
    policy: IntegrationPolicy,
) -> Result<f64> {
    if a.is_nan() || a <= 0.0 {
        return Err(PqError::Domain(format!(
            "integration upper limit must be positive, got {a}"
        )));
    }
    let p = params.p();
    let r = params.ratio();
    let scale = (p - params.q()) * a;
    let mut rk = 1.0;
    let inner = sum_series(policy, |_| {
        let weight = rk / p;
        let node = weight * a;
        rk *= r;
        weight * f(node)
    });
    match inner {
        Ok(s) => Ok(scale * s),
        Err(PqError::Convergence { partial, terms }) => Err(PqError::Convergence {
            partial: scale * partial,
            terms,
        }),
        Err(e) => Err(e),
    }
}
