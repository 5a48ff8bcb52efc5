//! Distance between small-cycle counts of a uniform permutation and
//! independent `Poisson(1/i)` variables.
//!
//! Each coordinate is truncated to `0..=CYCLE_CAP`, the top value collecting
//! all counts `>= CYCLE_CAP`.

use std::collections::BTreeMap;

use mfo_core::rng::replica_rng;
use mfo_core::{all_permutations, MallowsParams, Permutation};

use crate::error::LabError;
use crate::exact::check_exact_budget;
use crate::montecarlo::BLOCK;

pub const CYCLE_CAP: usize = 10;

/// `P(Poisson(λ) = k)` for `k < CYCLE_CAP`, then the overflow mass.
fn truncated_poisson(lambda: f64) -> [f64; CYCLE_CAP + 1] {
    let mut pmf = [0.0; CYCLE_CAP + 1];
    let mut term = (-lambda).exp();
    let mut below = 0.0;
    for (k, slot) in pmf.iter_mut().enumerate().take(CYCLE_CAP) {
        *slot = term;
        below += term;
        term *= lambda / (k + 1) as f64;
    }
    pmf[CYCLE_CAP] = (1.0 - below).max(0.0);
    pmf
}

fn cell(p: &Permutation, b: usize) -> Vec<u8> {
    let counts = p.cycle_counts();
    (0..b).map(|i| counts.get(i).copied().unwrap_or(0).min(CYCLE_CAP) as u8).collect()
}

/// TV between a law on cells (given on its support) and the truncated
/// Poisson product; cells outside the support contribute their Poisson mass.
fn tv_against_poisson(law: &BTreeMap<Vec<u8>, f64>, b: usize) -> f64 {
    let marginals: Vec<_> = (1..=b).map(|i| truncated_poisson(1.0 / i as f64)).collect();
    let mut diff = 0.0;
    let mut covered = 0.0;
    for (c, &mass) in law {
        let poisson: f64 = c.iter().zip(&marginals).map(|(&k, m)| m[k as usize]).product();
        diff += (mass - poisson).abs();
        covered += poisson;
    }
    0.5 * (diff + (1.0 - covered).max(0.0))
}

fn check_b(n: usize, b: usize) -> Result<(), LabError> {
    if b == 0 || b > n {
        return Err(LabError::Invalid(format!("need 1 <= b <= n, got b = {b}, n = {n}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CycleDistance {
    pub distance: f64,
    /// `1.96 · ½ Σ_c sqrt(p̂_c (1 - p̂_c) / N)`; bounds the noise of the
    /// plug-in estimate from above.
    pub half_width_95: f64,
    pub samples: usize,
}

/// Monte Carlo estimate of `d_TV((C_1..C_b), ⊗ Poisson(1/i))` under uniform `Π_n`.
pub fn poisson_cycle_estimate(n: usize, b: usize, samples: usize, seed: u64) -> Result<CycleDistance, LabError> {
    check_b(n, b)?;
    if samples == 0 {
        return Err(LabError::Invalid("samples must be at least 1".into()));
    }
    let params = MallowsParams::new(n, 1.0)?;
    let mut counts: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for block in 0..samples.div_ceil(BLOCK) {
        let mut rng = replica_rng(seed, &[block as u64]);
        for _ in 0..BLOCK.min(samples - block * BLOCK) {
            *counts.entry(cell(&params.sample(&mut rng), b)).or_insert(0) += 1;
        }
    }
    let total = samples as f64;
    let law: BTreeMap<Vec<u8>, f64> = counts.into_iter().map(|(c, k)| (c, k as f64 / total)).collect();
    let spread: f64 = law.values().map(|&p| (p * (1.0 - p) / total).sqrt()).sum();
    Ok(CycleDistance { distance: tv_against_poisson(&law, b), half_width_95: 1.96 * 0.5 * spread, samples })
}

/// The distance from [`poisson_cycle_estimate`].
pub fn poisson_cycle_distance(n: usize, b: usize, samples: usize, seed: u64) -> Result<f64, LabError> {
    Ok(poisson_cycle_estimate(n, b, samples, seed)?.distance)
}

/// The same distance with the exact uniform law over `S_n`, `n <= 8`.
pub fn poisson_cycle_distance_exact(n: usize, b: usize) -> Result<f64, LabError> {
    check_b(n, b)?;
    check_exact_budget(n)?;
    let mut law: BTreeMap<Vec<u8>, f64> = BTreeMap::new();
    let count = (1..=n).product::<usize>() as f64;
    for p in all_permutations(n) {
        *law.entry(cell(&p, b)).or_insert(0.0) += 1.0 / count;
    }
    Ok(tv_against_poisson(&law, b))
}
