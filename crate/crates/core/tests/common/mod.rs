//! Direct-definition oracles, intentionally independent of the library's
//! normalized evaluation paths: plain sums, plain products, explicit
//! `p`-power prefactors, and a separately written node series. Everything
//! here over/underflows for large orders; tests use it at small `n` only.

#![allow(dead_code)]

/// `[n]` as the literal sum `p^{n-1} + p^{n-2} q + ... + q^{n-1}`.
pub fn naive_number(n: u32, p: f64, q: f64) -> f64 {
    (0..n)
        .map(|i| p.powi((n - 1 - i) as i32) * q.powi(i as i32))
        .sum()
}

pub fn naive_factorial(n: u32, p: f64, q: f64) -> f64 {
    (1..=n).map(|k| naive_number(k, p, q)).product()
}

pub fn naive_binomial(n: u32, k: u32, p: f64, q: f64) -> f64 {
    naive_factorial(n, p, q) / (naive_factorial(n - k, p, q) * naive_factorial(k, p, q))
}

/// `(x ⊖ a)^n` as the literal factor product.
pub fn naive_power_basis(x: f64, a: f64, n: u32, p: f64, q: f64) -> f64 {
    (0..n)
        .map(|j| p.powi(j as i32) * x - q.powi(j as i32) * a)
        .product()
}

/// The geometric-node series with a fixed tight tolerance and a large cap.
pub fn naive_integral(f: impl Fn(f64) -> f64, a: f64, p: f64, q: f64) -> f64 {
    let r = q / p;
    let mut rk = 1.0;
    let mut sum = 0.0;
    let mut consecutive = 0;
    for _ in 0..200_000usize {
        let w = rk / p;
        let term = w * f(w * a);
        sum += term;
        if term.abs() <= 1e-15 * sum.abs() {
            consecutive += 1;
            if consecutive >= 3 {
                break;
            }
        } else {
            consecutive = 0;
        }
        rk *= r;
    }
    (p - q) * a * sum
}

/// `b_{n,k}(1,x)` with the explicit `p^{[k(k-1)-n(n-1)]/2}` prefactor.
pub fn raw_bernstein_basis(n: u32, k: u32, x: f64, p: f64, q: f64) -> f64 {
    let e = (k as i64 * (k as i64 - 1) - n as i64 * (n as i64 - 1)) / 2;
    naive_binomial(n, k, p, q)
        * p.powi(e as i32)
        * x.powi(k as i32)
        * naive_power_basis(1.0, x, n - k, p, q)
}

/// The Bernstein operator straight from its defining sum.
pub fn raw_bernstein(f: impl Fn(f64) -> f64, n: u32, x: f64, p: f64, q: f64) -> f64 {
    (0..=n)
        .map(|k| {
            let node = p.powi((n - k) as i32) * naive_number(k, p, q) / naive_number(n, p, q);
            raw_bernstein_basis(n, k, x, p, q) * f(node)
        })
        .sum()
}

/// The Durrmeyer operator straight from its defining formula: explicit
/// `[n+1] p^{-(n-k+1)(n+k)/2}` weights, raw kernel, raw node series.
pub fn raw_durrmeyer(f: impl Fn(f64) -> f64 + Copy, n: u32, x: f64, p: f64, q: f64) -> f64 {
    let mut total = raw_bernstein_basis(n, 0, x, p, q) * f(0.0);
    for k in 1..=n {
        let e = (n - k + 1) as i64 * (n + k) as i64;
        assert_eq!(e % 2, 0);
        let integral = naive_integral(
            |t| {
                naive_binomial(n, k - 1, p, q)
                    * t.powi(k as i32 - 1)
                    * naive_power_basis(1.0, q * t, n - k + 1, p, q)
                    * f(t)
            },
            1.0,
            p,
            q,
        );
        total += naive_number(n + 1, p, q)
            * p.powi(-(e / 2) as i32)
            * raw_bernstein_basis(n, k, x, p, q)
            * integral;
    }
    total
}

/// Composite Simpson quadrature on `[0, 1]`.
pub fn simpson01(f: impl Fn(f64) -> f64, intervals: usize) -> f64 {
    assert!(intervals.is_multiple_of(2));
    let h = 1.0 / intervals as f64;
    let mut sum = f(0.0) + f(1.0);
    for i in 1..intervals {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(i as f64 * h);
    }
    sum * h / 3.0
}

fn classical_binomial(n: u32, k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (n - k + i) as f64 / i as f64)
}

/// The p = q = 1 degeneration of the operator, with the classical basis and
/// classical quadrature:
/// `(n+1) sum_{k=1}^n b_{n,k}(x) int_0^1 b_{n,k-1}(t) f(t) dt + b_{n,0}(x) f(0)`.
pub fn classical_durrmeyer(f: impl Fn(f64) -> f64 + Copy, n: u32, x: f64) -> f64 {
    let b = |k: u32, t: f64| {
        classical_binomial(n, k) * t.powi(k as i32) * (1.0 - t).powi((n - k) as i32)
    };
    let mut total = b(0, x) * f(0.0);
    for k in 1..=n {
        // kernel index k-1, exponent n-k+1
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

/// Horner evaluation for test polynomials.
pub fn eval_poly(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}
