//! Slow reference implementations shared by the integration tests.

#![allow(dead_code)]

/// FEDS/FAP written directly over explicit length-`L` vectors.
///
/// Each P-iteration rebuilds `e = d − Xh`, scores every column with
/// `|<e, x_j>| / ‖x_j‖` and applies `h_j += μ <e, x_j> / ‖x_j‖²`.
#[derive(Debug, Clone)]
pub struct ExplicitPursuit {
    pub taps: usize,
    pub window: usize,
    pub iterations: usize,
    pub step: f64,
    pub greedy: bool,
    pub sigma_min: f64,
    pub h: Vec<f64>,
    pub counter: usize,
    xs: Vec<f64>,
    ds: Vec<f64>,
    /// Residual norms seen by the last sample, one per iteration plus the final one.
    pub residual_norms: Vec<f64>,
    pub selections: Vec<usize>,
}

impl ExplicitPursuit {
    pub fn new(taps: usize, window: usize, iterations: usize, step: f64, greedy: bool) -> Self {
        Self {
            taps,
            window,
            iterations,
            step,
            greedy,
            sigma_min: 1e-12,
            h: vec![0.0; taps],
            counter: 0,
            xs: Vec::new(),
            ds: Vec::new(),
            residual_norms: Vec::new(),
            selections: Vec::new(),
        }
    }

    /// `x_j(n)` as an explicit vector.
    pub fn column(&self, j: usize) -> Vec<f64> {
        let n = self.xs.len() as isize - 1;
        (0..self.window)
            .map(|i| {
                let t = n - j as isize - i as isize;
                if t >= 0 {
                    self.xs[t as usize]
                } else {
                    0.0
                }
            })
            .collect()
    }

    /// `d(n)` as an explicit vector.
    pub fn desired_vec(&self) -> Vec<f64> {
        let n = self.ds.len() as isize - 1;
        (0..self.window)
            .map(|i| {
                let t = n - i as isize;
                if t >= 0 {
                    self.ds[t as usize]
                } else {
                    0.0
                }
            })
            .collect()
    }

    pub fn residual(&self) -> Vec<f64> {
        let mut e = self.desired_vec();
        for k in 0..self.taps {
            let col = self.column(k);
            for (ei, ci) in e.iter_mut().zip(&col) {
                *ei -= self.h[k] * ci;
            }
        }
        e
    }

    pub fn step(&mut self, x: f64, d: f64) {
        self.xs.push(x);
        self.ds.push(d);
        self.residual_norms.clear();
        self.selections.clear();
        let cols: Vec<Vec<f64>> = (0..self.taps).map(|j| self.column(j)).collect();
        let norms: Vec<f64> = cols.iter().map(|c| dot(c, c)).collect();
        for _ in 0..self.iterations {
            let e = self.residual();
            self.residual_norms.push(dot(&e, &e).sqrt());
            let corr: Vec<f64> = cols.iter().map(|c| dot(&e, c)).collect();
            let j = if self.greedy {
                let mut best: Option<(usize, f64)> = None;
                for k in 0..self.taps {
                    if norms[k] <= self.sigma_min {
                        continue;
                    }
                    let score = corr[k].abs() / norms[k].sqrt();
                    if best.is_none_or(|(_, s)| score > s) {
                        best = Some((k, score));
                    }
                }
                best.map_or(0, |b| b.0)
            } else {
                let j = self.counter;
                self.counter = (self.counter + 1) % self.taps;
                j
            };
            self.selections.push(j);
            if norms[j] <= self.sigma_min {
                continue;
            }
            self.h[j] += self.step * corr[j] / norms[j];
        }
        let e = self.residual();
        self.residual_norms.push(dot(&e, &e).sqrt());
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `‖a − b‖ / max(‖b‖, floor)`.
pub fn rel_err(a: &[f64], b: &[f64], floor: f64) -> f64 {
    let num = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    num / dot(b, b).sqrt().max(floor)
}
