use adaptive_anc::filter::{ap_step, nlms_step, rls_init, rls_step, Ap, ApBlock, Lms, Nlms, Rls};
use adaptive_anc::AdaptiveFilter;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let den: f64 = b.iter().map(|y| y * y).sum::<f64>().sqrt().max(1e-300);
    num / den
}

fn regressor(xs: &[f64], n: usize, m: usize) -> Vec<f64> {
    (0..m).map(|k| if n >= k { xs[n - k] } else { 0.0 }).collect()
}

#[test]
fn rls_unit_forgetting_matches_regularized_normal_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (m, n, delta) = (2, 50, 1e6);
    let xs: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let ds: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();

    let mut h = vec![0.0; m];
    let mut st = rls_init(m, 1.0, delta).unwrap();
    let mut a = DMatrix::<f64>::identity(m, m) / delta;
    let mut b = DVector::<f64>::zeros(m);
    for (i, &d) in ds.iter().enumerate() {
        let x = regressor(&xs, i, m);
        rls_step(&mut h, &mut st, &x, d);
        let xv = DVector::from_vec(x);
        a += &xv * xv.transpose();
        b += &xv * d;
    }
    let want = a.lu().solve(&b).unwrap();
    assert!(rel_diff(&h, want.as_slice()) < 1e-6);
}

#[test]
fn rls_inverse_stays_symmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut f = Rls::new(5, 0.99, 1e3).unwrap();
    for _ in 0..2000 {
        f.step(rng.sample(StandardNormal), rng.sample(StandardNormal)).unwrap();
        let p = f.state().inverse_correlation();
        let scale = p.iter().fold(0.0f64, |s, v| s.max(v.abs()));
        for i in 0..5 {
            for j in 0..5 {
                assert!((p[i * 5 + j] - p[j * 5 + i]).abs() <= 1e-10 * scale);
            }
        }
    }
}

fn scaled_trajectories(mut make: impl FnMut(f64) -> Box<dyn AdaptiveFilter>, c: f64, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = make(1.0);
    let mut b = make(c);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let x: f64 = rng.sample(StandardNormal);
        let d: f64 = rng.sample(StandardNormal);
        a.step(x, d).unwrap();
        b.step(c * x, c * d).unwrap();
        worst = worst.max(rel_diff(b.coefficients(), a.coefficients()));
    }
    worst
}

#[test]
fn joint_scaling_leaves_trajectories_unchanged() {
    for &c in &[10.0, 0.1, 3.7] {
        let nlms = scaled_trajectories(|_| Box::new(Nlms::new(4, 0.5, 0.0).unwrap()), c, 1);
        assert!(nlms < 1e-10, "nlms c={c}: {nlms}");
        let ap = scaled_trajectories(|_| Box::new(Ap::new(4, 3, 0.5, 0.0).unwrap()), c, 2);
        assert!(ap < 1e-10, "ap c={c}: {ap}");
        let rls = scaled_trajectories(|s| Box::new(Rls::new(4, 0.99, 1e2 / (s * s)).unwrap()), c, 3);
        assert!(rls < 1e-10, "rls c={c}: {rls}");
    }
}

#[test]
fn nlms_scaling_by_ten_matches_to_1e12() {
    let worst = scaled_trajectories(|_| Box::new(Nlms::new(3, 0.3, 0.0).unwrap()), 10.0, 9);
    assert!(worst < 1e-12);
}

#[test]
fn projection_of_order_one_is_nlms() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let m = rng.random_range(1..8);
        let x: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        let h0: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        let d: f64 = rng.random_range(-1.0..1.0);
        let mu = rng.random_range(0.01..1.0);
        let mut a = h0.clone();
        let mut b = h0.clone();
        nlms_step(&mut a, &x, d, mu, 0.0);
        let dv = [d];
        ap_step(&mut b, &ApBlock::new(&x, m, &dv).unwrap(), mu, 0.0).unwrap();
        for (p, q) in a.iter().zip(&b) {
            assert!((p - q).abs() <= 1e-14 * p.abs().max(1.0));
        }
    }
}

#[test]
fn full_nlms_step_annihilates_a_posteriori_error() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..1000 {
        let m = rng.random_range(1..16);
        let x: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut h: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        let d: f64 = rng.random_range(-1.0..1.0);
        nlms_step(&mut h, &x, d, 1.0, 0.0);
        let post: f64 = d - h.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>();
        assert!(post.abs() < 1e-12);
    }
}

fn misalignment_after(mut f: Box<dyn AdaptiveFilter>, w: &[f64], samples: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut xs = vec![0.0; w.len()];
    for _ in 0..samples {
        xs.rotate_right(1);
        xs[0] = rng.sample(StandardNormal);
        let d: f64 = w.iter().zip(&xs).map(|(a, b)| a * b).sum();
        f.step(xs[0], d).unwrap();
    }
    rel_diff(f.coefficients(), w)
}

#[test]
fn every_filter_identifies_a_noiseless_system() {
    use adaptive_anc::anc::{AlgoConfig, Algorithm};
    let w = [0.8, -0.5, 0.3, 0.2, -0.1, 0.05, 0.4, -0.25];
    for algo in Algorithm::ALL {
        let cfg = AlgoConfig::new(algo, w.len());
        let mis = misalignment_after(cfg.build().unwrap(), &w, 100_000);
        assert!(mis < 1e-2, "{algo}: {mis}");
    }
}

#[test]
fn lms_scalar_recursion() {
    let mut f = Lms::new(1, 0.1).unwrap();
    let mut h = 0.0;
    for _ in 0..3 {
        f.step(1.0, 1.0).unwrap();
        h += 0.1 * (1.0 - h);
        assert!((f.coefficients()[0] - h).abs() < 1e-15);
    }
}
