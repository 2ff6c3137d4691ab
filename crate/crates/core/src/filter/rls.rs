use super::{check_finite, nonzero_taps, predict, AdaptiveFilter, History, StepOutput};
use crate::{Error, Result};

/// Inverse of the exponentially weighted input correlation matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RlsState {
    /// `C⁻¹(n)`, row-major `M×M`.
    pinv: Vec<f64>,
    taps: usize,
    lambda: f64,
    delta_init: f64,
    gain: Vec<f64>,
}

impl RlsState {
    pub fn inverse_correlation(&self) -> &[f64] {
        &self.pinv
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn delta_init(&self) -> f64 {
        self.delta_init
    }

    pub fn taps(&self) -> usize {
        self.taps
    }
}

/// `C⁻¹(0) = δ·I`, i.e. `C(0) = I/δ`. Requires `0 < λ ≤ 1` and `δ > 0`.
pub fn rls_init(taps: usize, lambda: f64, delta_init: f64) -> Result<RlsState> {
    nonzero_taps(taps)?;
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::config(format!("forgetting factor must lie in (0, 1], got {lambda}")));
    }
    if !(delta_init > 0.0 && delta_init.is_finite()) {
        return Err(Error::config(format!("RLS initialization must be positive, got {delta_init}")));
    }
    let mut pinv = vec![0.0; taps * taps];
    for i in 0..taps {
        pinv[i * taps + i] = delta_init;
    }
    Ok(RlsState {
        pinv,
        taps,
        lambda,
        delta_init,
        gain: vec![0.0; taps],
    })
}

/// One RLS update with the a priori error `e = d − hᵀx`.
///
/// `C(n) = λC(n−1) + xxᵀ` is tracked in inverse form through the rank-one
/// update, then `h += C⁻¹(n)·x·e`. The inverse is re-symmetrized after
/// every step.
pub fn rls_step(h: &mut [f64], state: &mut RlsState, x: &[f64], desired: f64) -> StepOutput {
    let m = state.taps;
    debug_assert_eq!(h.len(), m);
    let p = &mut state.pinv;
    // π = P x; P is symmetric so xᵀP = πᵀ.
    let pi = &mut state.gain;
    for i in 0..m {
        pi[i] = predict(&p[i * m..(i + 1) * m], x);
    }
    let denom = state.lambda + predict(x, pi);
    let output = predict(h, x);
    let error = desired - output;

    let inv_lambda = 1.0 / state.lambda;
    for i in 0..m {
        let ki = pi[i] / denom;
        for j in 0..m {
            p[i * m + j] = (p[i * m + j] - ki * pi[j]) * inv_lambda;
        }
    }
    for i in 0..m {
        for j in 0..i {
            let v = 0.5 * (p[i * m + j] + p[j * m + i]);
            p[i * m + j] = v;
            p[j * m + i] = v;
        }
    }
    // C⁻¹(n) x = π / denom.
    let g = error / denom;
    h.iter_mut().zip(pi.iter()).for_each(|(w, k)| *w += g * k);
    StepOutput { output, error }
}

#[derive(Debug, Clone)]
pub struct Rls {
    h: Vec<f64>,
    window: History,
    state: RlsState,
    sample: usize,
}

impl Rls {
    pub fn new(taps: usize, lambda: f64, delta_init: f64) -> Result<Self> {
        Ok(Self {
            h: vec![0.0; taps],
            window: History::new(taps.max(1)),
            state: rls_init(taps, lambda, delta_init)?,
            sample: 0,
        })
    }

    pub fn state(&self) -> &RlsState {
        &self.state
    }
}

impl AdaptiveFilter for Rls {
    fn step(&mut self, input: f64, desired: f64) -> Result<StepOutput> {
        self.window.push(input);
        let out = rls_step(&mut self.h, &mut self.state, self.window.as_slice(), desired);
        check_finite(&self.h, self.sample)?;
        check_finite(&self.state.pinv, self.sample)?;
        self.sample += 1;
        Ok(out)
    }

    fn coefficients(&self) -> &[f64] {
        &self.h
    }
}
