use super::{check_finite, cholesky_solve, nonzero_taps, positive, predict, AdaptiveFilter, History, StepOutput};
use crate::{Error, Result};

/// The `K` most recent regressors and desired samples.
///
/// Rows are read from one input history: row `i` is
/// `[x(n-i), ..., x(n-i-M+1)]`, so `history` must hold `M + K - 1` samples,
/// newest first.
#[derive(Debug, Clone, Copy)]
pub struct ApBlock<'a> {
    history: &'a [f64],
    taps: usize,
    desired: &'a [f64],
}

impl<'a> ApBlock<'a> {
    pub fn new(history: &'a [f64], taps: usize, desired: &'a [f64]) -> Result<Self> {
        if desired.is_empty() {
            return Err(Error::config("projection order must be at least 1"));
        }
        let need = taps + desired.len() - 1;
        if history.len() < need {
            return Err(Error::LengthMismatch {
                what: "projection history",
                got: history.len(),
                expected: need,
            });
        }
        Ok(Self {
            history,
            taps,
            desired,
        })
    }

    pub fn order(&self) -> usize {
        self.desired.len()
    }

    pub fn row(&self, i: usize) -> &'a [f64] {
        &self.history[i..i + self.taps]
    }

    pub fn desired(&self) -> &'a [f64] {
        self.desired
    }
}

/// Output and error vectors of one affine projection update.
#[derive(Debug, Clone, PartialEq)]
pub struct ApOutput {
    pub outputs: Vec<f64>,
    pub errors: Vec<f64>,
}

/// One affine projection update
/// `h += μ Xᵀ (εI + XXᵀ)⁻¹ (d − Xh)`.
///
/// The `K×K` system is solved by Cholesky factorization. If it is not
/// positive definite (`ε = 0` with rank-deficient `X`) `h` is left untouched.
pub fn ap_step(h: &mut [f64], block: &ApBlock<'_>, mu: f64, epsilon: f64) -> Result<ApOutput> {
    let k = block.order();
    let outputs: Vec<f64> = (0..k).map(|i| predict(h, block.row(i))).collect();
    let errors: Vec<f64> = block.desired().iter().zip(&outputs).map(|(d, y)| d - y).collect();

    let mut gram = vec![0.0; k * k];
    for i in 0..k {
        for j in 0..=i {
            let v = predict(block.row(i), block.row(j));
            gram[i * k + j] = v;
            gram[j * k + i] = v;
        }
        gram[i * k + i] += epsilon;
    }
    let mut coef = errors.clone();
    cholesky_solve(&mut gram, &mut coef)?;
    for (i, c) in coef.iter().enumerate() {
        let g = mu * c;
        h.iter_mut().zip(block.row(i)).for_each(|(w, x)| *w += g * x);
    }
    Ok(ApOutput { outputs, errors })
}

#[derive(Debug, Clone)]
pub struct Ap {
    h: Vec<f64>,
    inputs: History,
    desired: History,
    mu: f64,
    epsilon: f64,
    sample: usize,
}

impl Ap {
    pub fn new(taps: usize, order: usize, mu: f64, epsilon: f64) -> Result<Self> {
        nonzero_taps(taps)?;
        positive("AP step size", mu)?;
        if order == 0 {
            return Err(Error::config("projection order K must be at least 1"));
        }
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::config(format!("AP regularizer must be >= 0, got {epsilon}")));
        }
        if order > taps {
            log::warn!("projection order K={order} exceeds filter length M={taps}");
        }
        Ok(Self {
            h: vec![0.0; taps],
            inputs: History::new(taps + order - 1),
            desired: History::new(order),
            mu,
            epsilon,
            sample: 0,
        })
    }
}

impl AdaptiveFilter for Ap {
    fn step(&mut self, input: f64, desired: f64) -> Result<StepOutput> {
        self.inputs.push(input);
        self.desired.push(desired);
        let block = ApBlock::new(self.inputs.as_slice(), self.h.len(), self.desired.as_slice())?;
        let out = match ap_step(&mut self.h, &block, self.mu, self.epsilon) {
            Ok(out) => StepOutput {
                output: out.outputs[0],
                error: out.errors[0],
            },
            // Silent stretches make XXᵀ singular when ε = 0; keep the taps.
            Err(Error::NotPositiveDefinite { pivot }) => {
                log::debug!("sample {}: singular projection (pivot {pivot}), update skipped", self.sample);
                let output = predict(&self.h, block.row(0));
                StepOutput {
                    output,
                    error: desired - output,
                }
            }
            Err(e) => return Err(e),
        };
        check_finite(&self.h, self.sample)?;
        self.sample += 1;
        Ok(out)
    }

    fn coefficients(&self) -> &[f64] {
        &self.h
    }
}
