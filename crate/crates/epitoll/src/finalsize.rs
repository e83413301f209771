//! Epidemic final-size equation.
//!
//! For a homogeneously mixing population with basic reproductive number R0,
//! the fraction z ultimately infected satisfies z = 1 - exp(-R0 * z). Above
//! the R0 = 1 threshold that equation has a unique root in (0, 1); below it
//! the epidemic dies out and z = 0.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FinalSizeError {
    #[error("R0 must be positive, got {0}")]
    NonPositiveR0(f64),
    #[error("R0 must be finite, got {0}")]
    NonFiniteR0(f64),
}

/// Validated basic reproductive number: positive and finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct R0(f64);

impl R0 {
    pub fn new(value: f64) -> Result<Self, FinalSizeError> {
        if value.is_nan() || value <= 0.0 {
            return Err(FinalSizeError::NonPositiveR0(value));
        }
        if !value.is_finite() {
            return Err(FinalSizeError::NonFiniteR0(value));
        }
        Ok(Self(value))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Final attack rate: the fraction of the population ultimately infected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackRate(f64);

impl AttackRate {
    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Largest root z in [0, 1) of z = 1 - exp(-r0 * z); zero at or below threshold.
///
/// Bisection on [eps, 1 - eps], which brackets the supercritical root and
/// converges unconditionally; the residual |z - (1 - exp(-r0 z))| ends below
/// 1e-12.
pub fn attack_rate(r0: R0) -> AttackRate {
    let r = r0.value();
    if r <= 1.0 {
        return AttackRate(0.0);
    }

    let g = |z: f64| 1.0 - (-r * z).exp() - z;
    let mut lo = 1e-12;
    let mut hi = 1.0 - 1e-13;
    if g(lo) <= 0.0 {
        // Barely supercritical: the root sits below the bracket floor and the
        // residual contract is already met at zero.
        return AttackRate(0.0);
    }
    if g(hi) >= 0.0 {
        // Extremely large r0: the root is within 1e-13 of 1.
        return AttackRate(hi);
    }
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    AttackRate(0.5 * (lo + hi))
}
