use adaptive_anc::anc::{run_anc, run_anc_with, sweep, AlgoConfig, Algorithm, RunOptions, SweepParam};
use adaptive_anc::signal::{synth_anc_scenario, NoiseKind, Scenario, SynthSpec};

fn scenario(taps: Vec<f64>, samples: usize) -> Scenario {
    synth_anc_scenario(&SynthSpec {
        channel_taps: taps,
        num_samples: samples,
        ..SynthSpec::default()
    })
    .unwrap()
}

fn mean_sq(v: impl Iterator<Item = f64>) -> f64 {
    let (s, n) = v.fold((0.0, 0usize), |(s, n), x| (s + x * x, n + 1));
    s / n as f64
}

#[test]
fn error_power_splits_into_signal_and_residual_noise() {
    let sc = synth_anc_scenario(&SynthSpec {
        num_samples: 40_000,
        noise_kind: NoiseKind::Ar1(0.5),
        ..SynthSpec::default()
    })
    .unwrap();
    for algo in [Algorithm::Nlms, Algorithm::Rls, Algorithm::Fap] {
        let r = run_anc(&AlgoConfig::defaults_for(algo), &sc.primary, &sc.reference, Some(&sc.clean)).unwrap();
        let half = sc.clean.len() / 2;
        let s = &sc.clean.samples()[half..];
        let p = &sc.primary.samples()[half..];
        let y = &r.noise_estimate[half..];
        let e = mean_sq(r.denoised.samples()[half..].iter().copied());
        let parts = mean_sq(s.iter().copied()) + mean_sq(p.iter().zip(s).zip(y).map(|((p, s), y)| p - s - y));
        assert!(((e - parts) / parts).abs() < 0.05, "{algo}: {e} vs {parts}");
    }
}

#[test]
fn identity_channel_is_learned() {
    // NLMS at μ=0.5 settles near 4.8 dB output SNR whatever the input level,
    // so the noise has to be strong for the improvement to exceed 20 dB.
    let sc = synth_anc_scenario(&SynthSpec {
        channel_taps: vec![1.0],
        input_snr_db: -20.0,
        ..SynthSpec::default()
    })
    .unwrap();
    let mut cfg = AlgoConfig::defaults_for(Algorithm::Nlms);
    cfg.step_size = Some(0.5);
    let opts = RunOptions {
        snr_out_skip_fraction: 0.5,
        ..RunOptions::default()
    };
    let r = run_anc_with(&cfg, &sc.primary, &sc.reference, Some(&sc.clean), &opts).unwrap();
    let snr = r.snr.unwrap();
    assert!(snr.snri >= 20.0, "{snr:?}");
    assert_eq!(snr.snri, snr.snr_out - snr.snr_in);
}

#[test]
fn runs_are_bit_identical() {
    let sc = scenario(vec![0.6, -0.3, 0.2, 0.1], 5_000);
    for algo in Algorithm::ALL {
        let cfg = AlgoConfig::defaults_for(algo);
        let a = run_anc(&cfg, &sc.primary, &sc.reference, Some(&sc.clean)).unwrap();
        let b = run_anc(&cfg, &sc.primary, &sc.reference, Some(&sc.clean)).unwrap();
        assert_eq!(a.denoised, b.denoised);
        assert_eq!(a.final_taps, b.final_taps);
        assert_eq!(a.mse_smoothed, b.mse_smoothed);
        assert_eq!(a.snr, b.snr);
    }
}

#[test]
fn every_algorithm_improves_the_default_scenario() {
    let sc = scenario(adaptive_anc::signal::default_channel(8, 0), 20_000);
    for algo in Algorithm::ALL {
        let r = run_anc(&AlgoConfig::defaults_for(algo), &sc.primary, &sc.reference, Some(&sc.clean)).unwrap();
        assert!(r.snr.unwrap().snri > 0.0, "{algo}");
    }
}

#[test]
fn window_sweep_records_invalid_rows() {
    let sc = scenario(vec![0.5, 0.25], 3_000);
    let base = AlgoConfig::defaults_for(Algorithm::Feds);
    let rows = sweep(&base, SweepParam::Window, &[4.0, 8.0, 30.0], &sc, &RunOptions::default(), true).unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].outcome.as_ref().unwrap_err().contains("requires L > M"));
    assert!(rows[1].outcome.is_err());
    assert!(rows[2].snri().is_some());
}
