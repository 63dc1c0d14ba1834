//! User-selectable target/integrand functions: polynomials in ascending-degree
//! coefficient form, or named built-ins from a small registry.

use std::fmt;
use std::str::FromStr;

use crate::error::{PqError, Result};

/// Registry of named built-in functions.
///
/// Built-ins take the series-integration route in the Durrmeyer operator;
/// polynomials take the closed-form Beta route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// `9x² - 4x + 5`
    Quad,
    /// `(x+1)² sin(10πx/3)`
    Sinmix,
}

impl Builtin {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "quad" => Some(Self::Quad),
            "sinmix" => Some(Self::Sinmix),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Quad => "quad",
            Self::Sinmix => "sinmix",
        }
    }

    #[inline]
    fn eval(self, x: f64) -> f64 {
        match self {
            Self::Quad => 5.0 + x * (-4.0 + x * 9.0),
            Self::Sinmix => {
                let s = x + 1.0;
                s * s * (10.0 * std::f64::consts::PI * x / 3.0).sin()
            }
        }
    }

    /// Both built-ins are entire; the registry domain [0, 4] keeps Durrmeyer
    /// node overshoot (up to `1/p`) valid for every `p >= 0.25`.
    fn domain(self) -> (f64, f64) {
        (0.0, 4.0)
    }
}

/// Function body: polynomial coefficients (ascending degree) or a built-in.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionForm {
    Polynomial(Vec<f64>),
    Builtin(Builtin),
}

/// A function together with the closed interval it may be evaluated on.
///
/// Evaluation outside the domain fails rather than silently extrapolating:
/// the `(p,q)`-integral samples nodes up to `a/p > a`, and an out-of-domain
/// sample would corrupt results invisibly.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    form: FunctionForm,
    domain: (f64, f64),
}

/// Parse failure for the function mini-DSL, with the byte position of the
/// offending token.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for FunctionParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for FunctionParseError {}

impl FunctionSpec {
    /// Polynomial with ascending-degree coefficients, on the default domain
    /// [0, 2] (covers the Durrmeyer node reach `1/p` for `p >= 0.5`).
    pub fn polynomial(coefficients: Vec<f64>) -> Self {
        Self {
            form: FunctionForm::Polynomial(coefficients),
            domain: (0.0, 2.0),
        }
    }

    /// The monomial `e_m(t) = t^m`.
    pub fn monomial(m: usize) -> Self {
        let mut coeffs = vec![0.0; m + 1];
        coeffs[m] = 1.0;
        Self::polynomial(coeffs)
    }

    /// The constant function `c`.
    pub fn constant(c: f64) -> Self {
        Self::polynomial(vec![c])
    }

    /// Registry lookup. Unknown names fail with a `Domain` error.
    pub fn builtin(name: &str) -> Result<Self> {
        let b = Builtin::from_name(name).ok_or_else(|| {
            PqError::Domain(format!(
                "unknown builtin {name:?}; registry holds \"quad\" and \"sinmix\""
            ))
        })?;
        Ok(Self {
            form: FunctionForm::Builtin(b),
            domain: b.domain(),
        })
    }

    /// Replaces the evaluation domain.
    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        assert!(lo < hi, "degenerate domain [{lo}, {hi}]");
        self.domain = (lo, hi);
        self
    }

    pub fn form(&self) -> &FunctionForm {
        &self.form
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// Whether the domain contains `[lo, hi]`.
    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        self.domain.0 <= lo && hi <= self.domain.1
    }

    /// Ascending-degree coefficients when polynomial.
    pub fn coefficients(&self) -> Option<&[f64]> {
        match &self.form {
            FunctionForm::Polynomial(c) => Some(c),
            FunctionForm::Builtin(_) => None,
        }
    }

    /// Polynomial degree (highest index with any coefficient), when polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients().map(|c| c.len().saturating_sub(1))
    }

    /// Checked evaluation.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if x < self.domain.0 || x > self.domain.1 {
            return Err(PqError::OutsideDomain {
                x,
                lo: self.domain.0,
                hi: self.domain.1,
            });
        }
        Ok(self.eval_in(x))
    }

    /// Evaluation after the caller has established `x` is in domain.
    #[inline]
    pub(crate) fn eval_in(&self, x: f64) -> f64 {
        debug_assert!(x >= self.domain.0 && x <= self.domain.1);
        match &self.form {
            FunctionForm::Polynomial(coeffs) => {
                // Horner, highest degree first
                coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
            }
            FunctionForm::Builtin(b) => b.eval(x),
        }
    }

    /// DSL rendering that re-parses to an equal spec.
    pub fn describe(&self) -> String {
        match &self.form {
            FunctionForm::Polynomial(coeffs) => {
                let body: Vec<String> = coeffs.iter().map(|c| format!("{c}")).collect();
                format!("poly:{}", body.join(","))
            }
            FunctionForm::Builtin(b) => format!("builtin:{}", b.name()),
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = FunctionParseError;

    /// Grammar: `poly:<c0>,<c1>,...` (ascending-degree coefficients) or
    /// `builtin:<name>` with `name` in the registry.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix("poly:") {
            let base = "poly:".len();
            if rest.is_empty() {
                return Err(FunctionParseError {
                    position: base,
                    message: "expected at least one coefficient".into(),
                });
            }
            let mut coeffs = Vec::new();
            let mut offset = base;
            for piece in rest.split(',') {
                let trimmed = piece.trim();
                let value: f64 = trimmed.parse().map_err(|_| FunctionParseError {
                    position: offset,
                    message: format!("invalid coefficient {piece:?}"),
                })?;
                if !value.is_finite() {
                    return Err(FunctionParseError {
                        position: offset,
                        message: format!("coefficient {piece:?} is not finite"),
                    });
                }
                coeffs.push(value);
                offset += piece.len() + 1;
            }
            Ok(FunctionSpec::polynomial(coeffs))
        } else if let Some(name) = s.strip_prefix("builtin:") {
            FunctionSpec::builtin(name).map_err(|_| FunctionParseError {
                position: "builtin:".len(),
                message: format!(
                    "unknown builtin {name:?}; registry holds \"quad\" and \"sinmix\""
                ),
            })
        } else {
            Err(FunctionParseError {
                position: 0,
                message: "expected \"poly:<c0>,<c1>,...\" or \"builtin:<name>\"".into(),
            })
        }
    }
}
