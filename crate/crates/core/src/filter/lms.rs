use super::{check_finite, nonzero_taps, positive, predict, AdaptiveFilter, History, StepOutput};
use crate::{Error, Result};

/// One LMS update: `h += μ·e·x` with `e = d − hᵀx`.
pub fn lms_step(h: &mut [f64], x: &[f64], desired: f64, mu: f64) -> StepOutput {
    let output = predict(h, x);
    let error = desired - output;
    let g = mu * error;
    h.iter_mut().zip(x).for_each(|(w, xi)| *w += g * xi);
    StepOutput { output, error }
}

/// One regularized NLMS update: `h += μ·e·x / (δ + ‖x‖²)`.
///
/// With `‖x‖² = 0` and `δ = 0` the update is skipped.
pub fn nlms_step(h: &mut [f64], x: &[f64], desired: f64, mu: f64, delta: f64) -> StepOutput {
    let output = predict(h, x);
    let error = desired - output;
    let norm = delta + x.iter().map(|v| v * v).sum::<f64>();
    if norm > 0.0 {
        let g = mu * error / norm;
        h.iter_mut().zip(x).for_each(|(w, xi)| *w += g * xi);
    }
    StepOutput { output, error }
}

#[derive(Debug, Clone)]
pub struct Lms {
    h: Vec<f64>,
    window: History,
    mu: f64,
    sample: usize,
}

impl Lms {
    pub fn new(taps: usize, mu: f64) -> Result<Self> {
        nonzero_taps(taps)?;
        positive("LMS step size", mu)?;
        Ok(Self {
            h: vec![0.0; taps],
            window: History::new(taps),
            mu,
            sample: 0,
        })
    }
}

impl AdaptiveFilter for Lms {
    fn step(&mut self, input: f64, desired: f64) -> Result<StepOutput> {
        self.window.push(input);
        let out = lms_step(&mut self.h, self.window.as_slice(), desired, self.mu);
        check_finite(&self.h, self.sample)?;
        self.sample += 1;
        Ok(out)
    }

    fn coefficients(&self) -> &[f64] {
        &self.h
    }
}

#[derive(Debug, Clone)]
pub struct Nlms {
    h: Vec<f64>,
    window: History,
    mu: f64,
    delta: f64,
    sample: usize,
}

impl Nlms {
    pub fn new(taps: usize, mu: f64, delta: f64) -> Result<Self> {
        nonzero_taps(taps)?;
        positive("NLMS step size", mu)?;
        if !(delta >= 0.0 && delta.is_finite()) {
            return Err(Error::config(format!("NLMS regularizer must be >= 0, got {delta}")));
        }
        Ok(Self {
            h: vec![0.0; taps],
            window: History::new(taps),
            mu,
            delta,
            sample: 0,
        })
    }
}

impl AdaptiveFilter for Nlms {
    fn step(&mut self, input: f64, desired: f64) -> Result<StepOutput> {
        self.window.push(input);
        let out = nlms_step(&mut self.h, self.window.as_slice(), desired, self.mu, self.delta);
        check_finite(&self.h, self.sample)?;
        self.sample += 1;
        Ok(out)
    }

    fn coefficients(&self) -> &[f64] {
        &self.h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lms_zero_error_is_fixed_point() {
        let mut h = [1.0, 1.0];
        let out = lms_step(&mut h, &[1.0, 2.0], 3.0, 0.1);
        assert_eq!(out.error, 0.0);
        assert_eq!(h, [1.0, 1.0]);
    }

    #[test]
    fn lms_single_active_tap() {
        let mut h = [0.0, 0.0];
        let out = lms_step(&mut h, &[1.0, 0.0], 2.0, 0.5);
        assert_eq!((out.output, out.error), (0.0, 2.0));
        assert_eq!(h, [1.0, 0.0]);
    }

    #[test]
    fn lms_scalar_recursion() {
        // M = 1, x ≡ 1, d ≡ 1: h_{n+1} = h_n + 0.1 (1 - h_n), so h_n = 1 - 0.9^n.
        let mut f = Lms::new(1, 0.1).unwrap();
        for n in 1..=3 {
            f.step(1.0, 1.0).unwrap();
            let expected = 1.0 - 0.9f64.powi(n);
            assert!((f.coefficients()[0] - expected).abs() < 1e-15);
        }
        assert!((f.coefficients()[0] - 0.271).abs() < 1e-15);
    }

    #[test]
    fn lms_divergence_names_sample() {
        let mut f = Lms::new(2, 1e200).unwrap();
        let err = (0..10).map(|_| f.step(1e200, 1e200)).find_map(|r| r.err()).unwrap();
        assert!(matches!(err, Error::Diverged { sample: 0 }));
    }

    #[test]
    fn nlms_full_step_annihilates() {
        let mut h = [0.0, 0.0];
        nlms_step(&mut h, &[2.0, 0.0], 4.0, 1.0, 0.0);
        assert_eq!(h, [2.0, 0.0]);
        assert_eq!(4.0 - predict(&h, &[2.0, 0.0]), 0.0);
    }

    #[test]
    fn nlms_zero_input_leaves_taps() {
        let mut h = [0.3, -0.2];
        nlms_step(&mut h, &[0.0, 0.0], 1.0, 1.0, 0.0);
        assert_eq!(h, [0.3, -0.2]);
    }

    #[test]
    fn nlms_joint_scaling_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let xs: Vec<f64> = (0..300).map(|_| rng.random_range(-1.0..1.0)).collect();
        let ds: Vec<f64> = (0..300).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut a = Nlms::new(6, 0.7, 0.0).unwrap();
        let mut b = Nlms::new(6, 0.7, 0.0).unwrap();
        for (x, d) in xs.iter().zip(&ds) {
            a.step(*x, *d).unwrap();
            b.step(10.0 * x, 10.0 * d).unwrap();
            for (p, q) in a.coefficients().iter().zip(b.coefficients()) {
                assert!((p - q).abs() <= 1e-12 * p.abs().max(1.0));
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Lms::new(0, 0.1).is_err());
        assert!(Lms::new(4, 0.0).is_err());
        assert!(Nlms::new(4, 0.5, -1.0).is_err());
    }
}
