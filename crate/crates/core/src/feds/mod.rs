//! Sliding-window Euclidean direction search (FEDS) and matching-pursuit
//! affine projection (FAP).
//!
//! Both filters treat the `M` columns `x_j(n)` of the `L×M` data matrix as a
//! dictionary and improve the approximation `X(n)h ≈ d(n)` by `P`
//! single-coefficient updates per sample. An update on coefficient `j`
//! moves `h_j` by `μ` times the projection of the current residual onto
//! `x_j(n)`:
//!
//! ```text
//! c_j   = <d(n), x_j(n)> - Σ_k h_k <x_k(n), x_j(n)>   (= <e(n), x_j(n)>)
//! h_j  += μ c_j / ‖x_j(n)‖²
//! ```
//!
//! FEDS picks `j` cyclically; FAP picks the column with the largest
//! normalized correlation `|c_j| / ‖x_j(n)‖` (lowest index on ties).
//!
//! Nothing of length `L` is touched per sample. The inner products live in
//! a [`GramCache`] and the residual correlations `c` are carried across
//! samples through the rank-two change of the Gram matrix, so one sample
//! costs `O(M)` for the bookkeeping plus `O(M)` per coefficient update.

mod cache;

pub use self::cache::{GramCache, DEFAULT_REFRESH_PERIOD};

use std::fmt;
use std::str::FromStr;

use crate::filter::{AdaptiveFilter, StepOutput};
use crate::{Error, Result};

/// Columns with `‖x_j‖²` at or below this are never updated.
pub const DEFAULT_SIGMA_MIN: f64 = 1e-12;
pub const DEFAULT_STEP: f64 = 0.002;
pub const DEFAULT_WINDOW: usize = 25;
pub const DEFAULT_ITERATIONS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Cyclic coefficient selection.
    Feds,
    /// Maximum normalized residual correlation.
    Fap,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Feds => "FEDS",
            Mode::Fap => "FAP",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "feds" => Ok(Mode::Feds),
            "fap" | "fapa" => Ok(Mode::Fap),
            _ => Err(Error::config(format!("unknown selection mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FedsFapConfig {
    pub mode: Mode,
    /// `M`.
    pub taps: usize,
    /// `L`, must exceed `M`.
    pub window: usize,
    /// `P`, coefficient updates per sample.
    pub iterations: usize,
    pub step_size: f64,
    pub sigma_min: f64,
    /// See [`GramCache::with_refresh_period`].
    pub refresh_period: Option<usize>,
}

impl FedsFapConfig {
    pub fn new(mode: Mode, taps: usize) -> Self {
        Self {
            mode,
            taps,
            window: DEFAULT_WINDOW,
            iterations: DEFAULT_ITERATIONS,
            step_size: DEFAULT_STEP,
            sigma_min: DEFAULT_SIGMA_MIN,
            refresh_period: Some(DEFAULT_REFRESH_PERIOD),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.taps == 0 {
            return Err(Error::config("filter needs at least one tap"));
        }
        if self.window <= self.taps {
            return Err(Error::config(format!(
                "{} requires L > M (got L={}, M={})",
                self.mode, self.window, self.taps
            )));
        }
        if self.iterations == 0 {
            return Err(Error::config("P must be at least 1"));
        }
        if !(self.step_size.is_finite() && self.step_size > 0.0) {
            return Err(Error::config(format!("step size must be positive, got {}", self.step_size)));
        }
        if self.sigma_min.is_nan() || self.sigma_min < 0.0 {
            return Err(Error::config("sigma_min must be non-negative"));
        }
        Ok(())
    }
}

/// A coefficient choice for one update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionResult {
    pub index: usize,
    /// `<e, x_j>` at selection time.
    pub residual_corr: f64,
    /// `‖x_j‖²`.
    pub norm_sq: f64,
}

/// Multiplications (divisions included) spent by one sample.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MultiplyCount {
    /// Gram row, cross-correlation and residual-correlation recursions.
    pub cache_update: u64,
    /// All `P` selections and coefficient updates.
    pub p_iterations: u64,
    /// Columns scored by FAP selection (each costs two operations).
    pub score_evaluations: u64,
    /// Periodic from-scratch rebuild, zero on ordinary samples.
    pub refresh: u64,
}

impl MultiplyCount {
    /// Cost of an ordinary sample, excluding any rebuild.
    pub fn per_sample(&self) -> u64 {
        self.cache_update + self.p_iterations
    }

    pub fn total(&self) -> u64 {
        self.per_sample() + self.refresh
    }
}

/// `<d(n), x_j(n)> - Σ_k h_k <x_k(n), x_j(n)>`, the correlation between the
/// a priori residual `d(n) - X(n)h` and column `j`.
pub fn residual_correlation(cache: &GramCache, h: &[f64], j: usize) -> f64 {
    let acc: f64 = h.iter().enumerate().map(|(k, hk)| hk * cache.gram(k, j)).sum();
    cache.cross(j) - acc
}

/// Index maximizing `|c_j| / ‖x_j‖` among columns above `sigma_min`, with
/// `c` supplied by the caller. Lowest index wins ties. Returns a no-op
/// selection on column 0 when every column is degenerate.
fn argmax_normalized(cache: &GramCache, corr: &[f64], sigma_min: f64) -> (SelectionResult, u64) {
    let mut best: Option<(usize, f64)> = None;
    let mut scored = 0;
    for (j, c) in corr.iter().enumerate() {
        let g = cache.gram(j, j);
        if g <= sigma_min {
            continue;
        }
        scored += 1;
        let score = c * c / g;
        if best.is_none_or(|(_, s)| score > s) {
            best = Some((j, score));
        }
    }
    let sel = match best {
        Some((j, _)) => SelectionResult {
            index: j,
            residual_corr: corr[j],
            norm_sq: cache.gram(j, j),
        },
        None => SelectionResult {
            index: 0,
            residual_corr: 0.0,
            norm_sq: cache.gram(0, 0),
        },
    };
    (sel, scored)
}

/// FAP coefficient choice computed directly from the cache (`O(M²)`).
pub fn select_fap(cache: &GramCache, h: &[f64], sigma_min: f64) -> SelectionResult {
    let corr: Vec<f64> = (0..cache.taps()).map(|j| residual_correlation(cache, h, j)).collect();
    argmax_normalized(cache, &corr, sigma_min).0
}

/// Sliding-window FEDS/FAP adaptive filter.
#[derive(Debug, Clone)]
pub struct FedsFap {
    cfg: FedsFapConfig,
    h: Vec<f64>,
    cache: GramCache,
    /// `c_j = r_j - Σ_k h_k G[k][j]` for the current `h`.
    corr: Vec<f64>,
    counter: usize,
    sample: usize,
    last_count: MultiplyCount,
    last_selections: Vec<SelectionResult>,
}

impl FedsFap {
    pub fn new(cfg: FedsFapConfig) -> Result<Self> {
        cfg.validate()?;
        let cache = GramCache::new(cfg.taps, cfg.window)?.with_refresh_period(cfg.refresh_period);
        Ok(Self {
            h: vec![0.0; cfg.taps],
            corr: vec![0.0; cfg.taps],
            counter: 0,
            sample: 0,
            last_count: MultiplyCount::default(),
            last_selections: Vec::with_capacity(cfg.iterations),
            cache,
            cfg,
        })
    }

    pub fn config(&self) -> &FedsFapConfig {
        &self.cfg
    }

    pub fn cache(&self) -> &GramCache {
        &self.cache
    }

    /// Next index FEDS will visit.
    pub fn counter(&self) -> usize {
        self.counter
    }

    /// Maintained residual correlations for the current taps.
    pub fn residual_correlations(&self) -> &[f64] {
        &self.corr
    }

    /// Selections made during the last sample, in update order.
    pub fn last_selections(&self) -> &[SelectionResult] {
        &self.last_selections
    }

    /// Operation tally of the last sample.
    pub fn multiply_count(&self) -> MultiplyCount {
        self.last_count
    }

    /// Cyclic choice; advances the counter by one modulo `M`.
    pub fn select_feds(&mut self) -> SelectionResult {
        let j = self.counter;
        self.counter = (self.counter + 1) % self.cfg.taps;
        SelectionResult {
            index: j,
            residual_corr: self.corr[j],
            norm_sq: self.cache.gram(j, j),
        }
    }

    /// Runs the `P` coefficient updates for the current sample and returns
    /// the change they made to `hᵀx(n)`.
    fn p_iterate(&mut self) -> f64 {
        let m = self.cfg.taps;
        let mut mults = 0;
        let mut scored = 0;
        let mut dy = 0.0;
        self.last_selections.clear();
        for _ in 0..self.cfg.iterations {
            let sel = match self.cfg.mode {
                Mode::Feds => self.select_feds(),
                Mode::Fap => {
                    let (sel, n) = argmax_normalized(&self.cache, &self.corr, self.cfg.sigma_min);
                    scored += n;
                    sel
                }
            };
            self.last_selections.push(sel);
            if sel.norm_sq <= self.cfg.sigma_min {
                continue;
            }
            let j = sel.index;
            let delta = self.cfg.step_size * (sel.residual_corr / sel.norm_sq);
            self.h[j] += delta;
            for k in 0..m {
                self.corr[k] -= delta * self.cache.gram(j, k);
            }
            dy += delta * self.cache.input(j);
            mults += m as u64 + 3;
        }
        self.last_count.p_iterations = mults + 2 * scored;
        self.last_count.score_evaluations = scored;
        dy
    }
}

impl AdaptiveFilter for FedsFap {
    /// Slides the window, performs the `P` updates and reports
    /// `y = hᵀx(n)` with the updated taps.
    fn step(&mut self, input: f64, desired: f64) -> Result<StepOutput> {
        let (m, l) = (self.cfg.taps, self.cfg.window);
        let refreshed = self.cache.update(input, desired);
        let cache = &self.cache;

        // a priori output on the incoming and outgoing regressors
        let mut y_new = 0.0;
        let mut y_old = 0.0;
        for (j, hj) in self.h.iter().enumerate() {
            y_new += hj * cache.input(j);
            y_old += hj * cache.input(j + l);
        }
        if refreshed {
            for j in 0..m {
                self.corr[j] = residual_correlation(cache, &self.h, j);
            }
            self.last_count.refresh = cache.last_refresh_mults() + (m * m) as u64;
        } else {
            let a = desired - y_new;
            let b = cache.desired(l) - y_old;
            for j in 0..m {
                self.corr[j] += a * cache.input(j) - b * cache.input(j + l);
            }
            self.last_count.refresh = 0;
        }
        self.last_count.cache_update = cache.last_update_mults() + 4 * m as u64;

        let output = y_new + self.p_iterate();
        if !self.h.iter().all(|v| v.is_finite()) {
            return Err(Error::Diverged { sample: self.sample });
        }
        self.sample += 1;
        Ok(StepOutput {
            output,
            error: desired - output,
        })
    }

    fn coefficients(&self) -> &[f64] {
        &self.h
    }

    fn multiply_count(&self) -> Option<MultiplyCount> {
        Some(self.last_count)
    }
}
