use mfo_lab::*;
use mfo_logic::random::random_sentence;
use mfo_logic::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pool(seed: u64, count: usize) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_sentence(&mut rng, Signature::Toto, 2)).collect()
}

#[test]
fn complement_sums_to_one() {
    for (i, f) in pool(1, 30).into_iter().enumerate() {
        let n = 3 + i % 4;
        for q in [0.3, 1.0, 1.7] {
            let a = exact_sat_prob(&f, n, q).unwrap();
            let b = exact_sat_prob(&f.clone().not(), n, q).unwrap();
            assert!((a + b - 1.0).abs() < 1e-12, "{f} n={n} q={q}");
        }
    }
}

#[test]
fn reversal_duality() {
    for f in pool(2, 30) {
        let g = reverse_formula(&f).unwrap();
        for n in 1..=6 {
            for q in [0.4, 2.5] {
                let a = exact_sat_prob(&f, n, q).unwrap();
                let b = exact_sat_prob(&g, n, 1.0 / q).unwrap();
                assert!((a - b).abs() < 1e-12, "{f} n={n} q={q}");
            }
        }
    }
}

#[test]
fn rational_mode_matches_float() {
    use num_traits::ToPrimitive;
    let q = mfo_core::rational(3, 4);
    for f in pool(3, 10) {
        let exact = exact_sat_prob_rational(&f, 5, &q).unwrap().to_f64().unwrap();
        assert!((exact - exact_sat_prob(&f, 5, 0.75).unwrap()).abs() < 1e-13);
    }
}

#[test]
fn monte_carlo_agrees_with_exact() {
    let samples = 2000;
    for (i, f) in pool(4, 50).into_iter().enumerate() {
        let n = 2 + i % 5;
        let q = [0.5, 1.0, 1.8][i % 3];
        let exact = exact_sat_prob(&f, n, q).unwrap();
        let cfg = ExperimentConfig {
            sentence: f.clone(),
            schedule: QSchedule::Fixed(q),
            sizes: vec![n],
            samples,
            seed: 100 + i as u64,
            workers: 1,
        };
        let est = estimate_sat_prob(&cfg).unwrap()[0].estimate;
        // half-width at the true p, so a degenerate p̂ cannot hide a miss
        let hw = 1.96 * (exact * (1.0 - exact) / samples as f64).sqrt();
        assert!((est.p_hat - exact).abs() <= 4.0 * hw + 1e-12, "{f} n={n} q={q}: {} vs {exact}", est.p_hat);
    }
}

#[test]
fn results_do_not_depend_on_workers() {
    let cfg = |workers| ExperimentConfig {
        sentence: parse("exists x. exists y. (x <1 y & y <2 x)", Signature::Toto).unwrap(),
        schedule: QSchedule::OneMinusCOverN(1.0),
        sizes: vec![5, 20, 40],
        samples: 5000,
        seed: 77,
        workers,
    };
    let one = estimate_sat_prob(&cfg(1)).unwrap();
    for w in [2, 4] {
        assert_eq!(estimate_sat_prob(&cfg(w)).unwrap(), one);
    }
}

#[test]
fn coupling_bound_small_n() {
    for n in 2..=7usize {
        let nf = n as f64;
        for q in [1.0 - nf.powi(-4), 1.0 + nf.powi(-4), 1.0 - nf.powi(-2), 1.0 + nf.powi(-2)] {
            assert!(tv_exact_mallows(n, q, 1.0).unwrap() <= coupling_bound(n, q).unwrap() + 1e-15);
        }
    }
    // n = 4, q = 1 - 4^-4
    let q = 1.0 - 4f64.powi(-4);
    let bound: f64 = (1..=4).map(|i| tv_tgeo_uniform(4 - i + 1, q).unwrap()).sum();
    assert!(tv_exact_mallows(4, q, 1.0).unwrap() <= bound);
}

#[test]
fn tv_is_symmetric_and_bounded() {
    for n in 1..=5 {
        let a = tv_exact_mallows(n, 0.3, 2.0).unwrap();
        assert!((a - tv_exact_mallows(n, 2.0, 0.3).unwrap()).abs() < 1e-15);
        assert!((0.0..=1.0).contains(&a));
    }
}

#[test]
fn cycle_distance_is_stable_in_sample_size() {
    let a = poisson_cycle_estimate(300, 2, 20_000, 5).unwrap();
    let b = poisson_cycle_estimate(300, 2, 40_000, 6).unwrap();
    assert!((a.distance - b.distance).abs() < 3.0 * a.half_width_95.max(b.half_width_95));
}

#[test]
fn first_regeneration_mean() {
    let m = mean_first_regeneration(0.5, 10_000, 8).unwrap();
    let again = mean_first_regeneration(0.5, 10_000, 9).unwrap();
    assert!(m.is_finite() && m < 20.0);
    assert!((m - again).abs() < 0.5);
}

#[test]
fn displacement_bound() {
    let r = displacement_bound_check(100, 0.5, 10_000, 12).unwrap();
    assert!(r.holds, "{r:?}");
    assert_eq!(r.bound, 2.0);
    // n = 2: E|Π(1) - 1| = q / (1 + q) against min(2q/(1-q), 1)
    for q in [0.1, 0.5, 0.9] {
        let mean = exact_first_displacement(2, q).unwrap();
        assert!((mean - q / (1.0 + q)).abs() < 1e-15);
        assert!(mean <= (2.0 * q / (1.0 - q)).min(1.0));
    }
}

#[test]
fn chain_state_records() {
    let t = chain_trace(0.3, 2, 10, 4).unwrap();
    let recs: Vec<String> =
        t.states.iter().map(|s| serde_json::to_string(&mfo_lab::chain::ChainRecord::from(s)).unwrap()).collect();
    assert_eq!(recs.len(), 10);
    assert!(recs[0].starts_with("{\"n\":1,"));
}
