//! `(p,q)`-Bernstein basis and operators: the Bernstein polynomials, the
//! Bernstein-Durrmeyer integral variant, and its King-type modification.
//!
//! # Normalized evaluation
//!
//! Every formula here is rewritten in terms of the ratio `r = q/p` before any
//! floating-point work. Two identities drive this:
//!
//! * `[m]_{p,q} = p^{m-1} [m]_r` and `[n k]_{p,q} = p^{k(n-k)} [n k]_r`, so the
//!   basis collapses to the `p`-free form
//!   `b_{n,k}(1,x) = [n k]_r x^k prod_{j=0}^{n-k-1} (1 - r^j x)`.
//! * In the Durrmeyer weight `[n+1] p^{-(n-k+1)(n+k)/2} b_{n,k}(1,x) * integral`,
//!   the integer `p`-exponents of the prefactor, the kernel binomial, the
//!   kernel power basis and the series nodes cancel to exactly zero, leaving
//!
//!   `D_n(f,x) = b_{n,0}(1,x) f(0) + (1-r) [n+1]_r
//!        sum_{k=1}^n [n k-1]_r b_{n,k}(1,x) S_k`,
//!
//!   with `S_k = sum_m r^{mk} prod_{j=0}^{n-k} (1 - r^{m+1+j}) f(r^m / p)`
//!   on the series route, and
//!
//!   `D_n(f,x) = b_{n,0}(1,x) f(0) + sum_k b_{n,k}(1,x) sum_j c_j A_{k,j}`,
//!   `A_{k,j} = p^{-j} prod_{i=0}^{j-1}(1-r^{k+i}) / prod_{i=2}^{j+1}(1-r^{n+i})`,
//!
//!   on the closed-form Beta route for polynomials `f = sum_j c_j t^j`.
//!
//! The huge factor `p^{-(n-k+1)(n+k)/2}` (thousands of orders of magnitude at
//! `p = 0.5`, `n = 100`) is therefore never formed; nor is its tiny partner.
//! The raw formula with explicit prefactors only appears in tests, as an
//! independent oracle at small `n`.

use crate::arith::{
    ln_gaussian_binomial, one_minus_pow, pq_binomial, pq_number_ratio, pq_power_basis,
};
use crate::calculus::{sum_series, IntegrationPolicy};
use crate::error::{PqError, Result};
use crate::function::{FunctionForm, FunctionSpec};
use crate::params::PqParams;
use crate::signed_log::SignedLogValue;

/// The three operator families exposed by the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Bernstein,
    Durrmeyer,
    KingDurrmeyer,
}

/// Which route the Durrmeyer inner integrals take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralBackend {
    /// Per-monomial closed-form Beta expansion; exact up to rounding.
    /// Polynomials only.
    ClosedForm,
    /// Geometric-node series under an [`IntegrationPolicy`]; works for any
    /// registered function.
    Series,
}

fn require_positive_n(n: u32) -> Result<()> {
    if n == 0 {
        Err(PqError::Domain("operator order n must be positive".into()))
    } else {
        Ok(())
    }
}

/// The `(p,q)`-Bernstein basis function
/// `b_{n,k}(1,x) = [n k] p^{[k(k-1)-n(n-1)]/2} x^k (1 ⊖ x)^{n-k}`,
/// sign-tracked.
///
/// Evaluated in the equivalent `p`-free form
/// `[n k]_r x^k prod_{j<n-k} (1 - r^j x)`; nonnegative for `x` in `[0,1]`
/// (each factor `1 - r^j x >= 1 - r^j >= 0` there), possibly negative beyond.
pub fn bernstein_basis(n: u32, k: u32, x: f64, params: PqParams) -> Result<SignedLogValue> {
    require_positive_n(n)?;
    if k > n {
        return Err(PqError::Domain(format!(
            "basis index out of range: k = {k} > n = {n}"
        )));
    }
    let r = params.ratio();
    let mut sign: i8 = 1;
    let mut log_mag = ln_gaussian_binomial(n, k, r);
    if k > 0 {
        if x == 0.0 {
            return Ok(SignedLogValue::ZERO);
        }
        if x < 0.0 && k % 2 == 1 {
            sign = -sign;
        }
        log_mag += k as f64 * x.abs().ln();
    }
    for j in 0..(n - k) {
        let factor = 1.0 - r.powi(j as i32) * x;
        if factor == 0.0 {
            return Ok(SignedLogValue::ZERO);
        }
        if factor < 0.0 {
            sign = -sign;
        }
        log_mag += factor.abs().ln();
    }
    Ok(SignedLogValue::from_parts(sign, log_mag))
}

/// All basis values `b_{n,k}(1,u)` for `k = 0..=n` at one point, in plain
/// `f64` (safe: on `[0,1]` the values partition unity; for the King range the
/// magnitudes stay bounded for any practical order).
fn basis_row(n: u32, u: f64, params: PqParams) -> Vec<f64> {
    let r = params.ratio();
    let nn = n as usize;
    let mut rpow = Vec::with_capacity(nn);
    for j in 0..nn {
        rpow.push(r.powi(j as i32));
    }
    // prefix[m] = prod_{j=0}^{m-1} (1 - r^j u)
    let mut prefix = vec![1.0; nn + 1];
    for m in 1..=nn {
        prefix[m] = prefix[m - 1] * (1.0 - rpow[m - 1] * u);
    }
    let mut row = vec![0.0; nn + 1];
    let mut gb = 1.0; // [n k]_r
    let mut uk = 1.0; // u^k
    for k in 0..=nn {
        row[k] = gb * uk * prefix[nn - k];
        if k < nn {
            gb *= one_minus_pow(r, n - k as u32) / one_minus_pow(r, k as u32 + 1);
            uk *= u;
        }
    }
    row
}

/// The Bernstein sample node `p^{n-k} [k] / [n] = (1 - r^k)/(1 - r^n)`,
/// monotone in `k` from 0 to 1.
pub fn bernstein_node(n: u32, k: u32, params: PqParams) -> f64 {
    if k == n {
        return 1.0;
    }
    let r = params.ratio();
    one_minus_pow(r, k) / one_minus_pow(r, n)
}

/// The `(p,q)`-Bernstein polynomial
/// `B_n(f,x) = sum_k b_{n,k}(1,x) f(p^{n-k}[k]/[n])`.
///
/// Reproduces `e_0` and `e_1` exactly. Requires `x` in `[0,1]` and `f`
/// defined on `[0,1]` (the nodes fill that interval).
pub fn bernstein_apply(f: &FunctionSpec, n: u32, x: f64, params: PqParams) -> Result<f64> {
    require_positive_n(n)?;
    if !(0.0..=1.0).contains(&x) {
        return Err(PqError::Domain(format!(
            "Bernstein evaluation point must lie in [0,1], got {x}"
        )));
    }
    if !f.covers(0.0, 1.0) {
        let (lo, hi) = f.domain();
        return Err(PqError::OutsideDomain { x: 1.0, lo, hi });
    }
    let row = basis_row(n, x, params);
    let mut sum = 0.0;
    for (k, b) in row.iter().enumerate() {
        sum += b * f.eval_in(bernstein_node(n, k as u32, params));
    }
    Ok(sum)
}

/// The Durrmeyer integrand basis `b_{n,k}(t) = [n k] t^k (1 ⊖ qt)^{n-k}`
/// (no `p`-power prefactor; note the `q`-shift inside the power basis).
///
/// Raw plain-real evaluation, intended for moderate `n`; operator evaluation
/// uses the normalized internal form instead.
pub fn durrmeyer_kernel(n: u32, k: u32, t: f64, params: PqParams) -> Result<f64> {
    require_positive_n(n)?;
    if k > n {
        return Err(PqError::Domain(format!(
            "kernel index out of range: k = {k} > n = {n}"
        )));
    }
    Ok(pq_binomial(n, k, params)?
        * t.powi(k as i32)
        * pq_power_basis(1.0, params.q() * t, n - k, params).to_real())
}

/// `A_{k,j}` accumulation: weights `g(k) = sum_j c_j A_{k,j}` for the
/// closed-form route.
fn closed_form_weights(coeffs: &[f64], n: u32, params: PqParams) -> Vec<f64> {
    let r = params.ratio();
    let p = params.p();
    let mut weights = Vec::with_capacity(n as usize);
    for k in 1..=n {
        let mut a = 1.0; // A_{k,0} = 1
        let mut g = if coeffs.is_empty() { 0.0 } else { coeffs[0] };
        for (j, &c) in coeffs.iter().enumerate().skip(1) {
            let j = j as u32;
            a *= one_minus_pow(r, k + j - 1) / (p * one_minus_pow(r, n + j + 1));
            g += c * a;
        }
        weights.push(g);
    }
    weights
}

/// Series-route weights `(1-r) [n+1]_r [n k-1]_r S_k`.
fn series_weights(
    f: &FunctionSpec,
    n: u32,
    params: PqParams,
    policy: IntegrationPolicy,
) -> Result<Vec<f64>> {
    let r = params.ratio();
    let p = params.p();
    let mut rpow = Vec::with_capacity(n as usize + 2);
    for j in 0..=(n as usize + 1) {
        rpow.push(r.powi(j as i32));
    }
    let scale = (1.0 - r) * pq_number_ratio(n + 1, r);
    let mut weights = Vec::with_capacity(n as usize);
    let mut gb = 1.0; // [n k-1]_r, starting at [n 0]_r
    for k in 1..=n {
        let rk = rpow[k as usize];
        let mut rm = 1.0; // r^m
        let mut rmk = 1.0; // r^{mk}
        let s_k = sum_series(policy, |_| {
            let mut kernel = 1.0;
            for j in 0..=(n - k) {
                kernel *= 1.0 - rm * rpow[j as usize + 1];
            }
            let term = rmk * kernel * f.eval_in(rm / p);
            rm *= r;
            rmk *= rk;
            term
        })?;
        weights.push(scale * gb * s_k);
        gb *= one_minus_pow(r, n - k + 1) / one_minus_pow(r, k);
    }
    Ok(weights)
}

/// A Durrmeyer operator prepared for one `(f, n, p, q)`: the inner integrals
/// do not depend on the evaluation point, so they are computed once and the
/// operator can then be evaluated across a grid.
#[derive(Debug, Clone)]
pub struct DurrmeyerOperator {
    n: u32,
    params: PqParams,
    f_at_zero: f64,
    weights: Vec<f64>,
    backend: IntegralBackend,
}

impl DurrmeyerOperator {
    /// Prepares with the route implied by the function form: closed-form Beta
    /// expansion for polynomials, series integration for built-ins.
    pub fn new(
        f: &FunctionSpec,
        n: u32,
        params: PqParams,
        policy: IntegrationPolicy,
    ) -> Result<Self> {
        let backend = match f.form() {
            FunctionForm::Polynomial(_) => IntegralBackend::ClosedForm,
            FunctionForm::Builtin(_) => IntegralBackend::Series,
        };
        Self::with_backend(f, n, params, policy, backend)
    }

    /// Prepares with an explicit route. The closed form requires a
    /// polynomial; either route requires `f` to cover `[0, 1/p]`, because the
    /// integration nodes reach `1/p` (beyond 1 whenever `p < 1`).
    pub fn with_backend(
        f: &FunctionSpec,
        n: u32,
        params: PqParams,
        policy: IntegrationPolicy,
        backend: IntegralBackend,
    ) -> Result<Self> {
        require_positive_n(n)?;
        let reach = 1.0 / params.p();
        if !f.covers(0.0, reach) {
            let (lo, hi) = f.domain();
            return Err(PqError::OutsideDomain { x: reach, lo, hi });
        }
        let weights = match backend {
            IntegralBackend::ClosedForm => {
                let coeffs = f.coefficients().ok_or_else(|| {
                    PqError::Domain("the closed-form backend requires a polynomial function".into())
                })?;
                closed_form_weights(coeffs, n, params)
            }
            IntegralBackend::Series => series_weights(f, n, params, policy)?,
        };
        Ok(Self {
            n,
            params,
            f_at_zero: f.eval_in(0.0),
            weights,
            backend,
        })
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn backend(&self) -> IntegralBackend {
        self.backend
    }

    /// Evaluates `D_n(f, x)` for `x` in `[0,1]` (the positivity range).
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(PqError::Domain(format!(
                "Durrmeyer evaluation point must lie in [0,1], got {x}"
            )));
        }
        Ok(self.eval_at_basis_arg(x))
    }

    /// Shared evaluation core: the basis argument may exceed `[0,1]` for the
    /// King modification, in which case the basis values are sign-tracked by
    /// the row products.
    pub(crate) fn eval_at_basis_arg(&self, u: f64) -> f64 {
        let row = basis_row(self.n, u, self.params);
        let mut sum = row[0] * self.f_at_zero;
        for (w, b) in self.weights.iter().zip(&row[1..]) {
            sum += w * b;
        }
        sum
    }
}

/// One-shot `D_n(f, x)`.
///
/// ```
/// use pq_approx::{durrmeyer_apply, FunctionSpec, IntegrationPolicy, PqParams};
///
/// let pq = PqParams::new(0.5, 0.4).unwrap();
/// let e0 = FunctionSpec::constant(1.0);
/// let v = durrmeyer_apply(&e0, 6, 0.37, pq, IntegrationPolicy::default()).unwrap();
/// assert!((v - 1.0).abs() < 1e-11);
/// ```
pub fn durrmeyer_apply(
    f: &FunctionSpec,
    n: u32,
    x: f64,
    params: PqParams,
    policy: IntegrationPolicy,
) -> Result<f64> {
    DurrmeyerOperator::new(f, n, params, policy)?.eval(x)
}

/// The King rescaling `r_n(x) = [n+2] x / (p [n])`.
pub fn king_rescale(n: u32, x: f64, params: PqParams) -> f64 {
    x / king_positivity_end(n, params)
}

/// Right end of the interval the operator is stated on:
/// `[n+2]/(p[n]) = p (1 - r^{n+2}) / (1 - r^n)`.
pub fn king_interval_end(n: u32, params: PqParams) -> f64 {
    let r = params.ratio();
    params.p() * one_minus_pow(r, n + 2) / one_minus_pow(r, n)
}

/// Right end of the range where `r_n(x) <= 1`, i.e. where all basis weights
/// stay nonnegative: `p [n]/[n+2]`. Note this need not coincide with
/// [`king_interval_end`]; for small `p` it exceeds it, near `p = 1` it is
/// smaller. Evaluation is permitted on the stated interval with sign-tracked
/// weights either way.
pub fn king_positivity_end(n: u32, params: PqParams) -> f64 {
    let r = params.ratio();
    one_minus_pow(r, n) / (params.p() * one_minus_pow(r, n + 2))
}

/// The King-modified Durrmeyer operator `D*_n(f, x)`: the Durrmeyer basis
/// evaluated at `r_n(x)` instead of `x`, which restores exact reproduction of
/// `e_1`.
#[derive(Debug, Clone)]
pub struct KingOperator {
    inner: DurrmeyerOperator,
    interval_end: f64,
}

impl KingOperator {
    pub fn new(
        f: &FunctionSpec,
        n: u32,
        params: PqParams,
        policy: IntegrationPolicy,
    ) -> Result<Self> {
        let inner = DurrmeyerOperator::new(f, n, params, policy)?;
        let interval_end = king_interval_end(n, params);
        Ok(Self {
            inner,
            interval_end,
        })
    }

    pub fn interval_end(&self) -> f64 {
        self.interval_end
    }

    /// Evaluates at any `x >= 0`. The approximation statements live on
    /// `[0, [n+2]/(p[n])]` (see [`king_interval_end`]) and all weights are
    /// nonnegative only up to [`king_positivity_end`]; beyond that the
    /// sign-tracked basis keeps the value well-defined. For `p < 1` the
    /// stated interval shrinks as `n` grows, so a grid shared across several
    /// orders routinely steps past the larger orders' own interval.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(PqError::Domain(format!(
                "King evaluation point must be nonnegative, got {x}"
            )));
        }
        let u = king_rescale(self.inner.n, x, self.inner.params);
        Ok(self.inner.eval_at_basis_arg(u))
    }
}

/// One-shot `D*_n(f, x)`.
pub fn king_apply(
    f: &FunctionSpec,
    n: u32,
    x: f64,
    params: PqParams,
    policy: IntegrationPolicy,
) -> Result<f64> {
    KingOperator::new(f, n, params, policy)?.eval(x)
}
