use std::collections::HashMap;

use mfo_core::*;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pushforward<F>(n: usize, q: &BigRational, f: F) -> HashMap<Permutation, BigRational>
where
    F: Fn(&Permutation) -> Permutation,
{
    let mut law: HashMap<Permutation, BigRational> = HashMap::new();
    for p in all_permutations(n) {
        *law.entry(f(&p)).or_insert_with(BigRational::zero) += mallows_pmf_exact(&p, q);
    }
    law
}

fn exact_law(n: usize, q: &BigRational) -> HashMap<Permutation, BigRational> {
    all_permutations(n).map(|p| (p.clone(), mallows_pmf_exact(&p, q))).collect()
}

#[test]
fn s6_inversion_identities() {
    for p in all_permutations(6) {
        let inv = p.inversions();
        assert_eq!(p.inverse().inversions(), inv);
        assert_eq!(p.reverse().inversions(), 15 - inv);
        assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(6));
    }
}

#[test]
fn window_rank_pushforward_is_mallows() {
    for q in [rational(1, 2), rational(2, 1)] {
        let target = exact_law(3, &q);
        for start in 1..=4 {
            let law = pushforward(6, &q, |p| p.window_rank(start, 3).unwrap());
            assert_eq!(law, target, "start={start}");
        }
    }
}

#[test]
fn reverse_and_inverse_pushforwards() {
    for (a, b) in [(1, 3), (2, 1), (3, 5)] {
        let q = rational(a, b);
        let q_inv = rational(b, a);
        assert_eq!(pushforward(5, &q, |p| p.reverse()), exact_law(5, &q_inv));
        assert_eq!(pushforward(5, &q, |p| p.reverse_positions()), exact_law(5, &q_inv));
        assert_eq!(pushforward(5, &q, |p| p.inverse()), exact_law(5, &q));
    }
}

#[test]
fn float_pmf_agrees_with_rational() {
    let q = rational(3, 7);
    let m = MallowsParams::new(6, 3.0 / 7.0).unwrap();
    for p in all_permutations(6) {
        let exact = mallows_pmf_exact(&p, &q);
        let approx = num_traits::ToPrimitive::to_f64(&exact).unwrap();
        assert!((m.pmf(&p).unwrap() - approx).abs() < 1e-15);
    }
}

fn empirical_tv(params: &MallowsParams, draws: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: HashMap<Permutation, usize> = HashMap::new();
    for _ in 0..draws {
        *counts.entry(params.sample(&mut rng)).or_default() += 1;
    }
    0.5 * all_permutations(params.n())
        .map(|p| {
            let c = counts.get(&p).copied().unwrap_or(0) as f64 / draws as f64;
            (c - params.pmf(&p).unwrap()).abs()
        })
        .sum::<f64>()
}

#[test]
fn sampler_law_small_n() {
    for q in [0.5, 1.0, 2.0] {
        let params = MallowsParams::new(4, q).unwrap();
        assert!(empirical_tv(&params, 200_000, 17) < 0.01, "q={q}");
    }
}

#[test]
fn sampler_at_q_matches_reversed_sampler_at_inverse_q() {
    // sampling at 1/q and reversing is an independent route to Mallows(n, q)
    let q = 2.0;
    let direct = MallowsParams::new(4, q).unwrap();
    let via = MallowsParams::new(4, 1.0 / q).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let draws = 200_000;
    let mut counts: HashMap<Permutation, usize> = HashMap::new();
    for _ in 0..draws {
        *counts.entry(via.sample(&mut rng).reverse()).or_default() += 1;
    }
    let tv = 0.5
        * all_permutations(4)
            .map(|p| (counts.get(&p).copied().unwrap_or(0) as f64 / draws as f64 - direct.pmf(&p).unwrap()).abs())
            .sum::<f64>();
    assert!(tv < 0.01);
}

#[test]
fn stream_prefix_law() {
    let draws = 200_000;
    let params = MallowsParams::new(4, 0.5).unwrap();
    let mut counts: HashMap<Permutation, usize> = HashMap::new();
    for s in 0..draws {
        let mut stream = RegenerativeStream::new(0.5, rng::replica_rng(99, &[s])).unwrap();
        *counts.entry(stream.prefix_rank(4)).or_default() += 1;
    }
    let tv = 0.5
        * all_permutations(4)
            .map(|p| (counts.get(&p).copied().unwrap_or(0) as f64 / draws as f64 - params.pmf(&p).unwrap()).abs())
            .sum::<f64>();
    assert!(tv < 0.01, "{tv}");
}

#[test]
fn wowzer_inverse_monotonicity() {
    // W(x) < y  =>  x < log**(y)
    let ys: Vec<BigNat> = (0..=70u64)
        .map(BigNat::from)
        .chain([65535u64, 65536, 65537, 1 << 40].map(BigNat::from))
        .chain([tower(5).unwrap()])
        .collect();
    for x in 0..=3usize {
        let wx = wowzer(x).unwrap();
        for y in &ys {
            if &wx < y {
                assert!(x < log_star_star(y), "x={x} y={y}");
            }
        }
    }
}

#[test]
fn composed_inequality_at_three() {
    // W(m) + 3 < T(W(m)) at m = 3, i.e. T(65536) >= 65540
    let w3 = wowzer(3).unwrap();
    let lhs = BigNat(w3.value() + 4u32);
    let height = w3.to_u64().unwrap() as usize;
    assert!(tower_ge(height, &lhs));
    // the same comparison one level down is also strict
    let t4 = tower(4).unwrap();
    assert!(tower(5).unwrap() > BigNat(t4.value() + 3u32));
}

proptest! {
    #[test]
    fn rank_of_sorted_is_identity(v in proptest::collection::vec(any::<i32>(), 0..40)) {
        let mut xs: Vec<i64> = v.into_iter().map(i64::from).collect();
        xs.sort_unstable();
        xs.dedup();
        let p = rank_integers(&xs).unwrap();
        prop_assert_eq!(p, Permutation::identity(xs.len()));
    }

    #[test]
    fn text_round_trip(seed in any::<u64>(), n in 0usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = MallowsParams::new(n, 0.8).unwrap().sample(&mut rng);
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
    }

    #[test]
    fn cycle_counts_weighted_sum(seed in any::<u64>(), n in 0usize..50) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = MallowsParams::new(n, 1.0).unwrap().sample(&mut rng);
        let s: usize = p.cycle_counts().iter().enumerate().map(|(i, c)| (i + 1) * c).sum();
        prop_assert_eq!(s, n);
    }
}
