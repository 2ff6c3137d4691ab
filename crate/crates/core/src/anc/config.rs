use std::fmt;
use std::str::FromStr;

use crate::feds::{self, FedsFap, FedsFapConfig, Mode};
use crate::filter::{self, AdaptiveFilter, Ap, Lms, Nlms, Rls};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Lms,
    Nlms,
    Ap,
    Feds,
    Fap,
    Rls,
}

impl Algorithm {
    /// Comparison table order.
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Lms,
        Algorithm::Nlms,
        Algorithm::Ap,
        Algorithm::Feds,
        Algorithm::Fap,
        Algorithm::Rls,
    ];

    /// Lowercase name accepted on the command line.
    pub fn key(self) -> &'static str {
        match self {
            Algorithm::Lms => "lms",
            Algorithm::Nlms => "nlms",
            Algorithm::Ap => "ap",
            Algorithm::Feds => "feds",
            Algorithm::Fap => "fap",
            Algorithm::Rls => "rls",
        }
    }

    fn default_step(self) -> Option<f64> {
        match self {
            Algorithm::Lms => Some(filter::DEFAULT_LMS_STEP),
            Algorithm::Nlms => Some(filter::DEFAULT_NLMS_STEP),
            Algorithm::Ap => Some(filter::DEFAULT_AP_STEP),
            Algorithm::Feds | Algorithm::Fap => Some(feds::DEFAULT_STEP),
            Algorithm::Rls => None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Lms => "LMS",
            Algorithm::Nlms => "NLMS",
            Algorithm::Ap => "APA",
            Algorithm::Feds => "FEDS",
            Algorithm::Fap => "FAPA",
            Algorithm::Rls => "RLS",
        })
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lms" => Ok(Algorithm::Lms),
            "nlms" => Ok(Algorithm::Nlms),
            "ap" | "apa" => Ok(Algorithm::Ap),
            "feds" => Ok(Algorithm::Feds),
            "fap" | "fapa" => Ok(Algorithm::Fap),
            "rls" => Ok(Algorithm::Rls),
            _ => Err(Error::config(format!(
                "unknown algorithm `{s}` (lms | nlms | ap | feds | fap | rls)"
            ))),
        }
    }
}

/// Algorithm choice and parameters.
///
/// Optional fields fall back to the per-algorithm defaults when unset.
/// Setting a field the chosen algorithm does not use is not an error;
/// [`AlgoConfig::validate`] reports it as a warning.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgoConfig {
    pub algorithm: Algorithm,
    /// `M`.
    pub taps: usize,
    /// `μ`; unused by RLS.
    pub step_size: Option<f64>,
    /// `λ` (RLS).
    pub forgetting: Option<f64>,
    /// `δ` (NLMS).
    pub nlms_delta: Option<f64>,
    /// `ε` (AP).
    pub ap_epsilon: Option<f64>,
    /// `K` (AP).
    pub ap_order: Option<usize>,
    /// `L` (FEDS, FAP).
    pub window: Option<usize>,
    /// `P` (FEDS, FAP).
    pub iterations: Option<usize>,
    /// `C⁻¹(0) = δ_init·I` (RLS).
    pub rls_delta_init: Option<f64>,
    /// Recorded with results; the filters themselves are deterministic.
    pub seed: u64,
}

pub const DEFAULT_TAPS: usize = 8;

impl AlgoConfig {
    pub fn new(algorithm: Algorithm, taps: usize) -> Self {
        Self {
            algorithm,
            taps,
            step_size: None,
            forgetting: None,
            nlms_delta: None,
            ap_epsilon: None,
            ap_order: None,
            window: None,
            iterations: None,
            rls_delta_init: None,
            seed: 0,
        }
    }

    /// The experiment defaults: `M = 8`, `L = 25`, `P = 8`, `λ = 0.99`,
    /// `μ = 0.002` for LMS/FEDS/FAP and `0.005` for NLMS/AP.
    pub fn defaults_for(algorithm: Algorithm) -> Self {
        Self::new(algorithm, DEFAULT_TAPS)
    }

    pub fn step_size(&self) -> Option<f64> {
        self.step_size.or(self.algorithm.default_step())
    }

    pub fn forgetting(&self) -> f64 {
        self.forgetting.unwrap_or(filter::DEFAULT_RLS_LAMBDA)
    }

    pub fn nlms_delta(&self) -> f64 {
        self.nlms_delta.unwrap_or(filter::DEFAULT_NLMS_DELTA)
    }

    pub fn ap_epsilon(&self) -> f64 {
        self.ap_epsilon.unwrap_or(filter::DEFAULT_AP_EPSILON)
    }

    pub fn ap_order(&self) -> usize {
        self.ap_order.unwrap_or(filter::DEFAULT_AP_ORDER)
    }

    pub fn window(&self) -> usize {
        self.window.unwrap_or(feds::DEFAULT_WINDOW)
    }

    pub fn iterations(&self) -> usize {
        self.iterations.unwrap_or(feds::DEFAULT_ITERATIONS)
    }

    pub fn rls_delta_init(&self) -> f64 {
        self.rls_delta_init.unwrap_or(filter::DEFAULT_RLS_DELTA_INIT)
    }

    /// Names of set fields the chosen algorithm ignores.
    pub fn ignored_fields(&self) -> Vec<&'static str> {
        use Algorithm::*;
        let a = self.algorithm;
        let mut out = Vec::new();
        let mut check = |set: bool, used: bool, name| {
            if set && !used {
                out.push(name);
            }
        };
        check(self.step_size.is_some(), a != Rls, "mu");
        check(self.forgetting.is_some(), a == Rls, "lambda");
        check(self.rls_delta_init.is_some(), a == Rls, "delta-init");
        check(self.nlms_delta.is_some(), a == Nlms, "delta");
        check(self.ap_epsilon.is_some(), a == Ap, "epsilon");
        check(self.ap_order.is_some(), a == Ap, "k");
        check(self.window.is_some(), matches!(a, Feds | Fap), "l");
        check(self.iterations.is_some(), matches!(a, Feds | Fap), "p");
        out
    }

    /// Checks the parameters the algorithm uses and returns warnings for
    /// the ones it ignores.
    pub fn validate(&self) -> Result<Vec<String>> {
        self.build()?;
        Ok(self
            .ignored_fields()
            .into_iter()
            .map(|f| format!("{} ignores --{f}", self.algorithm))
            .collect())
    }

    fn feds_config(&self, mode: Mode) -> FedsFapConfig {
        FedsFapConfig {
            window: self.window(),
            iterations: self.iterations(),
            step_size: self.step_size().unwrap_or(feds::DEFAULT_STEP),
            ..FedsFapConfig::new(mode, self.taps)
        }
    }

    pub fn build(&self) -> Result<Box<dyn AdaptiveFilter>> {
        let m = self.taps;
        let mu = self.step_size().unwrap_or(0.0);
        Ok(match self.algorithm {
            Algorithm::Lms => Box::new(Lms::new(m, mu)?),
            Algorithm::Nlms => Box::new(Nlms::new(m, mu, self.nlms_delta())?),
            Algorithm::Ap => Box::new(Ap::new(m, self.ap_order(), mu, self.ap_epsilon())?),
            Algorithm::Rls => Box::new(Rls::new(m, self.forgetting(), self.rls_delta_init())?),
            Algorithm::Feds => Box::new(FedsFap::new(self.feds_config(Mode::Feds))?),
            Algorithm::Fap => Box::new(FedsFap::new(self.feds_config(Mode::Fap))?),
        })
    }

    /// One-line `key=value` record of every parameter in effect.
    pub fn describe(&self) -> String {
        let mut s = format!("algo={} m={}", self.algorithm.key(), self.taps);
        match self.algorithm {
            Algorithm::Lms => s += &format!(" mu={}", self.step_size().unwrap_or_default()),
            Algorithm::Nlms => s += &format!(" mu={} delta={}", self.step_size().unwrap_or_default(), self.nlms_delta()),
            Algorithm::Ap => {
                s += &format!(
                    " mu={} k={} epsilon={}",
                    self.step_size().unwrap_or_default(),
                    self.ap_order(),
                    self.ap_epsilon()
                )
            }
            Algorithm::Rls => s += &format!(" lambda={} delta_init={}", self.forgetting(), self.rls_delta_init()),
            Algorithm::Feds | Algorithm::Fap => {
                s += &format!(
                    " mu={} l={} p={}",
                    self.step_size().unwrap_or_default(),
                    self.window(),
                    self.iterations()
                )
            }
        }
        s + &format!(" seed={}", self.seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn experiment_defaults() {
        assert_eq!(AlgoConfig::defaults_for(Algorithm::Lms).step_size(), Some(0.002));
        assert_eq!(AlgoConfig::defaults_for(Algorithm::Nlms).step_size(), Some(0.005));
        assert_eq!(AlgoConfig::defaults_for(Algorithm::Ap).step_size(), Some(0.005));
        assert_eq!(AlgoConfig::defaults_for(Algorithm::Fap).step_size(), Some(0.002));
        let fap = AlgoConfig::defaults_for(Algorithm::Feds);
        assert_eq!((fap.taps, fap.window(), fap.iterations()), (8, 25, 8));
        assert_eq!(AlgoConfig::defaults_for(Algorithm::Rls).forgetting(), 0.99);
        for a in Algorithm::ALL {
            assert!(AlgoConfig::defaults_for(a).validate().unwrap().is_empty());
        }
    }

    #[test]
    fn irrelevant_fields_warn() {
        let mut c = AlgoConfig::defaults_for(Algorithm::Nlms);
        c.window = Some(30);
        c.forgetting = Some(0.9);
        let w = c.validate().unwrap();
        assert_eq!(w.len(), 2);
        assert!(w[0].contains("--lambda"));
    }

    #[test]
    fn invalid_combinations() {
        let mut c = AlgoConfig::defaults_for(Algorithm::Feds);
        c.window = Some(4);
        assert!(c.validate().unwrap_err().to_string().contains("requires L > M"));
        let mut c = AlgoConfig::defaults_for(Algorithm::Fap);
        c.iterations = Some(0);
        assert!(c.validate().is_err());
        let mut c = AlgoConfig::defaults_for(Algorithm::Ap);
        c.ap_order = Some(0);
        assert!(c.validate().is_err());
        let mut c = AlgoConfig::defaults_for(Algorithm::Rls);
        c.forgetting = Some(1.5);
        assert!(c.validate().is_err());
    }

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.key().parse::<Algorithm>().unwrap(), a);
            assert_eq!(a.to_string().parse::<Algorithm>().unwrap(), a);
        }
        assert!("kalman".parse::<Algorithm>().is_err());
    }
}
