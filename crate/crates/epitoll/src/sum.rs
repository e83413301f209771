//! Compensated floating-point accumulation.
//!
//! Table operations promise conservation of per-sex totals regardless of how
//! counts are regrouped. Naive `f64` summation breaks that promise by a few
//! ulps whenever the association order changes, so every accumulator in this
//! crate goes through [`Accumulator`], a Neumaier-style compensated sum. For
//! non-negative inputs whose true sum is representable (integer counts in
//! particular) the result equals the true sum exactly.

/// Running compensated sum (Kahan-Babuska/Neumaier variant).
#[derive(Debug, Clone, Copy, Default)]
pub struct Accumulator {
    sum: f64,
    compensation: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        // Recover the rounding error of `t` exactly; the branch keeps the
        // larger operand first as Fast2Sum requires.
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated sum of a sequence.
pub fn sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = Accumulator::new();
    for v in values {
        acc.add(v);
    }
    acc.total()
}
