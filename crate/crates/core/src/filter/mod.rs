//! Classical per-sample adaptive FIR filters: LMS, NLMS, affine projection
//! and exponentially weighted RLS.
//!
//! Each algorithm is available twice: as a free function that performs one
//! update on caller-owned coefficients (`lms_step`, `nlms_step`, `ap_step`,
//! `rls_step`), and as a stateful filter that owns its input history and
//! implements [`AdaptiveFilter`]. The stateful filters start from zero taps
//! and zero input prehistory, and abort with [`Error::Diverged`] as soon as
//! a coefficient stops being finite.

mod ap;
mod history;
mod linalg;
mod lms;
mod rls;

pub use self::ap::{ap_step, Ap, ApBlock};
pub use self::history::History;
pub use self::linalg::cholesky_solve;
pub use self::lms::{lms_step, nlms_step, Lms, Nlms};
pub use self::rls::{rls_init, rls_step, Rls, RlsState};

use crate::{Error, Result};

pub const DEFAULT_LMS_STEP: f64 = 0.002;
pub const DEFAULT_NLMS_STEP: f64 = 0.005;
pub const DEFAULT_AP_STEP: f64 = 0.005;
pub const DEFAULT_NLMS_DELTA: f64 = 1e-8;
pub const DEFAULT_AP_EPSILON: f64 = 1e-6;
pub const DEFAULT_AP_ORDER: usize = 4;
pub const DEFAULT_RLS_LAMBDA: f64 = 0.99;
pub const DEFAULT_RLS_DELTA_INIT: f64 = 1e3;

/// Result of consuming one `(input, desired)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutput {
    /// Filter output `y(n)`.
    pub output: f64,
    /// `d(n) - y(n)`.
    pub error: f64,
}

pub trait AdaptiveFilter: Send {
    /// Pushes `input` into the regressor, adapts towards `desired` and
    /// reports the output and error for this sample.
    fn step(&mut self, input: f64, desired: f64) -> Result<StepOutput>;

    fn coefficients(&self) -> &[f64];

    fn taps(&self) -> usize {
        self.coefficients().len()
    }

    /// Operation tally of the last step, for filters that keep one.
    fn multiply_count(&self) -> Option<crate::feds::MultiplyCount> {
        None
    }
}

/// `y = hᵀx`.
#[inline]
pub fn predict(h: &[f64], x: &[f64]) -> f64 {
    debug_assert_eq!(h.len(), x.len());
    h.iter().zip(x).map(|(a, b)| a * b).sum()
}

pub(crate) fn check_finite(h: &[f64], sample: usize) -> Result<()> {
    if h.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Diverged { sample })
    }
}

pub(crate) fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::config(format!("{name} must be positive, got {v}")))
    }
}

pub(crate) fn nonzero_taps(taps: usize) -> Result<()> {
    if taps == 0 {
        Err(Error::config("filter needs at least one tap"))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn predict_dot_product() {
        assert_eq!(predict(&[1.0, 2.0], &[3.0, 4.0]), 11.0);
        assert_eq!(predict(&[0.0; 3], &[5.0, -1.0, 2.0]), 0.0);
    }

    #[test]
    fn predict_matches_naive_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let h: Vec<f64> = (0..16).map(|_| rng.random_range(-1.0..1.0)).collect();
            let x: Vec<f64> = (0..16).map(|_| rng.random_range(-1.0..1.0)).collect();
            let mut naive = 0.0;
            for k in 0..16 {
                naive += h[k] * x[k];
            }
            let y = predict(&h, &x);
            assert!((y - naive).abs() <= 1e-15 * naive.abs().max(1.0));
        }
    }
}
