//! Sign + log-magnitude representation for products with extreme dynamic range.

use std::ops::{Mul, MulAssign, Neg};

/// A real number stored as a sign in `{-1, 0, +1}` and the natural log of its
/// magnitude. Products of factors spanning thousands of orders of magnitude
/// (power-basis values, large-index binomials, `p`-power prefactors) stay
/// representable where a plain `f64` would over/underflow.
///
/// The log magnitude is ignored (and kept at `-inf`) when the sign is 0.
///
/// ```
/// use pq_approx::SignedLogValue;
///
/// let a = SignedLogValue::from_real(-2.0);
/// let b = SignedLogValue::from_real(3.0);
/// assert_eq!((a * b).to_real(), -6.0);
/// assert_eq!(SignedLogValue::from_real(0.0).sign(), 0);
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogValue {
    sign: i8,
    log_magnitude: f64,
}

impl SignedLogValue {
    pub const ZERO: Self = Self {
        sign: 0,
        log_magnitude: f64::NEG_INFINITY,
    };

    pub const ONE: Self = Self {
        sign: 1,
        log_magnitude: 0.0,
    };

    pub fn from_real(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else {
            Self {
                sign: if v > 0.0 { 1 } else { -1 },
                log_magnitude: v.abs().ln(),
            }
        }
    }

    /// Builds from parts; a zero sign forces the canonical `ZERO`.
    pub fn from_parts(sign: i8, log_magnitude: f64) -> Self {
        debug_assert!((-1..=1).contains(&sign));
        if sign == 0 {
            Self::ZERO
        } else {
            Self {
                sign,
                log_magnitude,
            }
        }
    }

    #[inline]
    pub fn sign(self) -> i8 {
        self.sign
    }

    #[inline]
    pub fn log_magnitude(self) -> f64 {
        self.log_magnitude
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// Converts back to `f64`. Magnitudes beyond the representable range
    /// saturate to `±inf` / `0` as usual for `exp`.
    pub fn to_real(self) -> f64 {
        match self.sign {
            0 => 0.0,
            1 => self.log_magnitude.exp(),
            _ => -self.log_magnitude.exp(),
        }
    }

    /// Integer power: multiplies the log magnitude, powers the sign.
    pub fn powi(self, e: u32) -> Self {
        if e == 0 {
            return Self::ONE;
        }
        if self.sign == 0 {
            return Self::ZERO;
        }
        let sign = if self.sign < 0 && e % 2 == 1 { -1 } else { 1 };
        Self::from_parts(sign, self.log_magnitude * e as f64)
    }
}

impl Mul for SignedLogValue {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            Self::ZERO
        } else {
            Self {
                sign: self.sign * rhs.sign,
                log_magnitude: self.log_magnitude + rhs.log_magnitude,
            }
        }
    }
}

impl MulAssign for SignedLogValue {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl Neg for SignedLogValue {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            sign: -self.sign,
            log_magnitude: self.log_magnitude,
        }
    }
}
