//! Sliding-window inner products between the regressor columns and the
//! desired vector.
//!
//! With columns `x_j(n) = [x(n-j), ..., x(n-j-L+1)]` and
//! `d(n) = [d(n), ..., d(n-L+1)]` the cache holds
//!
//! ```text
//! G[k][j] = <x_k(n), x_j(n)>      r[j] = <d(n), x_j(n)>
//! ```
//!
//! The columns are shifted copies of one signal, so `G_n[k][j]` equals
//! `G_{n-min(k,j)}[0][|k-j|]`. Only the first row is computed at each
//! sample, by the boxcar recursion
//!
//! ```text
//! G_n[0][j] = G_{n-1}[0][j] + x(n)x(n-j) - x(n-L)x(n-j-L)
//! r_n[j]    = r_{n-1}[j]    + d(n)x(n-j) - d(n-L)x(n-j-L)
//! ```
//!
//! and the last `M` first rows are kept in a ring. Every entry `G[k][j]`
//! and `G[j][k]` reads the same stored value.

use crate::filter::History;
use crate::{Error, Result};

/// Samples between from-scratch recomputations of the cache.
pub const DEFAULT_REFRESH_PERIOD: usize = 1000;

#[derive(Debug, Clone)]
pub struct GramCache {
    taps: usize,
    window: usize,
    inputs: History,
    desired: History,
    /// `rows[s * taps + lag]` is `G_t[0][lag]` for the time `t` stored in slot `s`.
    rows: Vec<f64>,
    head: usize,
    cross: Vec<f64>,
    samples: usize,
    refresh_period: Option<usize>,
    last_mults: u64,
    last_refresh_mults: u64,
}

impl GramCache {
    pub fn new(taps: usize, window: usize) -> Result<Self> {
        if taps == 0 || window == 0 {
            return Err(Error::config("cache needs M >= 1 and L >= 1"));
        }
        Ok(Self {
            taps,
            window,
            inputs: History::new(2 * taps + window),
            desired: History::new(window + 1),
            rows: vec![0.0; taps * taps],
            head: taps - 1,
            cross: vec![0.0; taps],
            samples: 0,
            refresh_period: Some(DEFAULT_REFRESH_PERIOD),
            last_mults: 0,
            last_refresh_mults: 0,
        })
    }

    /// Sets how often the cache is rebuilt from the raw history; `None`
    /// disables rebuilding and leaves the recursions to accumulate rounding.
    pub fn with_refresh_period(mut self, period: Option<usize>) -> Self {
        self.refresh_period = period.filter(|&p| p > 0);
        self
    }

    pub fn taps(&self) -> usize {
        self.taps
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn samples_seen(&self) -> usize {
        self.samples
    }

    /// `x(n - lag)`, zero before the first sample.
    #[inline]
    pub fn input(&self, lag: usize) -> f64 {
        self.inputs.get(lag)
    }

    /// `d(n - lag)`, zero before the first sample.
    #[inline]
    pub fn desired(&self, lag: usize) -> f64 {
        self.desired.get(lag)
    }

    #[inline]
    fn slot(&self, back: usize) -> usize {
        (self.head + self.taps - back) % self.taps
    }

    /// `<x_k(n), x_j(n)>`.
    #[inline]
    pub fn gram(&self, k: usize, j: usize) -> f64 {
        let (lo, hi) = if k <= j { (k, j) } else { (j, k) };
        self.rows[self.slot(lo) * self.taps + (hi - lo)]
    }

    /// `<d(n), x_j(n)>`.
    #[inline]
    pub fn cross(&self, j: usize) -> f64 {
        self.cross[j]
    }

    pub fn cross_vector(&self) -> &[f64] {
        &self.cross
    }

    /// Dense row-major copy of `G`.
    pub fn gram_matrix(&self) -> Vec<f64> {
        let m = self.taps;
        let mut out = vec![0.0; m * m];
        for k in 0..m {
            for j in 0..m {
                out[k * m + j] = self.gram(k, j);
            }
        }
        out
    }

    /// Multiplications spent by the last [`update`](Self::update), excluding
    /// any rebuild.
    pub fn last_update_mults(&self) -> u64 {
        self.last_mults
    }

    /// Multiplications spent by a rebuild during the last update (zero when
    /// none happened).
    pub fn last_refresh_mults(&self) -> u64 {
        self.last_refresh_mults
    }

    /// Slides the window by one sample. Returns `true` when the cache was
    /// rebuilt from history at this sample.
    pub fn update(&mut self, x_new: f64, d_new: f64) -> bool {
        let (m, l) = (self.taps, self.window);
        self.inputs.push(x_new);
        self.desired.push(d_new);
        self.samples += 1;

        let prev = self.head;
        self.head = (self.head + 1) % m;
        let d_old = self.desired.get(l);
        let x_old = self.inputs.get(l);
        for lag in 0..m {
            let add = x_new * self.inputs.get(lag) - x_old * self.inputs.get(lag + l);
            self.rows[self.head * m + lag] = self.rows[prev * m + lag] + add;
            self.cross[lag] += d_new * self.inputs.get(lag) - d_old * self.inputs.get(lag + l);
        }
        self.last_mults = 4 * m as u64;

        match self.refresh_period {
            Some(p) if self.samples.is_multiple_of(p) => {
                self.refresh();
                true
            }
            _ => {
                self.last_refresh_mults = 0;
                false
            }
        }
    }

    /// Recomputes every stored inner product directly from the history.
    pub fn refresh(&mut self) {
        let (m, l) = (self.taps, self.window);
        for back in 0..m {
            let slot = self.slot(back);
            for lag in 0..m {
                let v: f64 = (0..l)
                    .map(|i| self.inputs.get(back + i) * self.inputs.get(back + lag + i))
                    .sum();
                self.rows[slot * m + lag] = v;
            }
        }
        for j in 0..m {
            self.cross[j] = (0..l).map(|i| self.desired.get(i) * self.inputs.get(j + i)).sum();
        }
        self.last_refresh_mults = ((m * m + m) * l) as u64;
    }
}
