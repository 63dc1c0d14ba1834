//! The `(p, q)` parameter pair.

use crate::error::{PqError, Result};

/// Smallest admissible gap `p - q`. The number and derivative definitions
/// divide by `p - q`; accuracy degrades as the gap shrinks, so construction
/// rejects pairs closer than this.
pub const MIN_GAP: f64 = 1e-6;

/// Validated parameter pair with `0 < q < p <= 1`.
///
/// Every quantity in this crate is parameterized by such a pair. The ratio
/// `r = q/p` lies in `(0, 1)` and drives all normalized evaluations.
///
/// ```
/// use pq_approx::PqParams;
///
/// let pq = PqParams::new(0.5, 0.4).unwrap();
/// assert_eq!(pq.ratio(), 0.8);
/// assert!(PqParams::new(0.4, 0.5).is_err()); // q < p is required
/// assert!(PqParams::new(0.5, 0.5).is_err()); // p = q is excluded
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PqParams {
    p: f64,
    q: f64,
}

impl PqParams {
    /// Validates `0 < q < p <= 1` and `p - q >= MIN_GAP`.
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !p.is_finite() || !q.is_finite() {
            return Err(PqError::InvalidParams(format!(
                "p and q must be finite, got p = {p}, q = {q}"
            )));
        }
        if !(q > 0.0 && q < p && p <= 1.0) {
            return Err(PqError::InvalidParams(format!(
                "require 0 < q < p <= 1, got p = {p}, q = {q}"
            )));
        }
        if p - q < MIN_GAP {
            return Err(PqError::InvalidParams(format!(
                "require p - q >= {MIN_GAP} (got {:.3e}); accuracy degrades as p -> q",
                p - q
            )));
        }
        Ok(Self { p, q })
    }

    #[inline]
    pub fn p(&self) -> f64 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> f64 {
        self.q
    }

    /// The ratio `r = q/p`, always in `(0, 1)`.
    #[inline]
    pub fn ratio(&self) -> f64 {
        self.q / self.p
    }
}
