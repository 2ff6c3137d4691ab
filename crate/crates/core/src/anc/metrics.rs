use crate::{Error, Result};

/// `10·log10(Σ clean² / Σ (contaminated − clean)²)` over samples from
/// `skip` on. A noise-free segment gives `+∞`.
pub fn snr_db(clean: &[f64], contaminated: &[f64], skip: usize) -> Result<f64> {
    if clean.len() != contaminated.len() {
        return Err(Error::LengthMismatch {
            what: "contaminated signal",
            got: contaminated.len(),
            expected: clean.len(),
        });
    }
    if skip >= clean.len() {
        return Err(Error::config(format!(
            "warm-up skip {skip} leaves nothing of {} samples",
            clean.len()
        )));
    }
    let (mut signal, mut noise) = (0.0, 0.0);
    for (s, c) in clean[skip..].iter().zip(&contaminated[skip..]) {
        signal += s * s;
        noise += (c - s) * (c - s);
    }
    if signal == 0.0 {
        return Err(Error::SilentReference);
    }
    if noise == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (signal / noise).log10())
}

/// Centered moving average. For an even `window` the average at `i` covers
/// `i - window/2 ..= i + window/2 - 1`; near the edges only the available
/// samples are averaged.
pub fn smooth_mse(curve: &[f64], window: usize) -> Vec<f64> {
    let window = window.max(1);
    let mut prefix = Vec::with_capacity(curve.len() + 1);
    prefix.push(0.0);
    let mut acc = 0.0;
    for v in curve {
        acc += v;
        prefix.push(acc);
    }
    let n = curve.len();
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(window / 2);
            let hi = (i + (window - 1) / 2).min(n - 1);
            (prefix[hi + 1] - prefix[lo]) / (hi + 1 - lo) as f64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal};

    #[test]
    fn clean_copy_is_infinite() {
        let s = [0.1, -0.2, 0.3];
        assert_eq!(snr_db(&s, &s, 0).unwrap(), f64::INFINITY);
    }

    #[test]
    fn equal_powers_give_zero_db() {
        let s = [1.0, -1.0, 1.0, -1.0];
        let c = [2.0, -2.0, 0.0, 0.0];
        assert_eq!(snr_db(&s, &c, 0).unwrap(), 0.0);
    }

    #[test]
    fn sine_plus_white_noise_at_ten_db() {
        // Unit-amplitude sine has power 1/2; noise variance 1/20 gives 10 dB.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let noise = Normal::new(0.0, 0.05f64.sqrt()).unwrap();
        let clean: Vec<f64> = (0..100_000).map(|n| (0.01 * n as f64).sin()).collect();
        let noisy: Vec<f64> = clean.iter().map(|s| s + noise.sample(&mut rng)).collect();
        let snr = snr_db(&clean, &noisy, 0).unwrap();
        assert!((snr - 10.0).abs() < 0.1, "{snr}");
    }

    #[test]
    fn errors() {
        assert!(matches!(snr_db(&[0.0, 0.0], &[1.0, 1.0], 0), Err(Error::SilentReference)));
        assert!(snr_db(&[1.0], &[1.0, 2.0], 0).is_err());
        assert!(snr_db(&[1.0, 2.0], &[1.0, 2.0], 2).is_err());
    }

    #[test]
    fn skip_ignores_warm_up() {
        let s = [1.0, 1.0, 1.0, 1.0];
        let c = [5.0, 5.0, 2.0, 2.0];
        assert_eq!(snr_db(&s, &c, 2).unwrap(), 0.0);
    }

    #[test]
    fn smoothing_identity_and_constant() {
        let c = [0.3, 1.0, -2.0, 4.0];
        assert_eq!(smooth_mse(&c, 1), c.to_vec());
        assert!(smooth_mse(&[0.7; 9], 4).iter().all(|v| (v - 0.7).abs() < 1e-15));
    }

    #[test]
    fn smoothing_step_ramps_by_quarters() {
        let step = [0.0, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0];
        let got = smooth_mse(&step, 4);
        assert_eq!(got, vec![0.0, 0.0, 0.0, 0.25, 0.5, 0.75, 1.0, 1.0]);
    }
}
