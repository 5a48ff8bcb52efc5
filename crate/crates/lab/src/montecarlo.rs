//! Monte Carlo satisfaction probabilities.
//!
//! Samples are split into fixed blocks of [`BLOCK`] draws. Block `b` at size
//! index `s` draws from `replica_rng(seed, [s, b])`, and only integer counts
//! are reduced, so the result does not depend on the worker count.

use mfo_core::rng::replica_rng;
use mfo_core::{MallowsParams, Permutation};
use mfo_logic::{CompiledFormula, Formula};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::LabError;
use crate::schedule::QSchedule;

pub const BLOCK: usize = 1024;

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub sentence: Formula,
    pub schedule: QSchedule,
    pub sizes: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), LabError> {
        if self.samples == 0 {
            return Err(LabError::Invalid("samples must be at least 1".into()));
        }
        if self.sizes.is_empty() {
            return Err(LabError::Invalid("sizes must be nonempty".into()));
        }
        if self.workers == 0 {
            return Err(LabError::Invalid("workers must be at least 1".into()));
        }
        if !self.sentence.is_sentence() {
            let names: Vec<&str> = self.sentence.free_vars().iter().map(|v| v.name()).collect();
            return Err(LabError::NotSentence(names.join(",")));
        }
        for &n in &self.sizes {
            self.schedule.q_at(n)?;
        }
        Ok(())
    }
}

/// Normal-approximation interval: `half_width_95 = 1.96 sqrt(p̂ (1 - p̂) / N)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SatEstimate {
    pub p_hat: f64,
    pub half_width_95: f64,
    pub samples: usize,
}

impl SatEstimate {
    pub fn from_count(hits: usize, samples: usize) -> SatEstimate {
        let p_hat = hits as f64 / samples as f64;
        let half_width_95 = 1.96 * (p_hat * (1.0 - p_hat) / samples as f64).sqrt();
        SatEstimate { p_hat, half_width_95, samples }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SizeEstimate {
    pub n: usize,
    pub q: f64,
    pub estimate: SatEstimate,
}

/// Runs `job(block_index, draws)` for every block in a pool of `workers`
/// threads and sums the results.
pub(crate) fn run_blocks<F>(samples: usize, workers: usize, job: F) -> Result<usize, LabError>
where
    F: Fn(u64, usize) -> Result<usize, LabError> + Sync,
{
    let blocks = samples.div_ceil(BLOCK);
    let size = |b: usize| BLOCK.min(samples - b * BLOCK);
    if workers <= 1 {
        return (0..blocks).map(|b| job(b as u64, size(b))).sum();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| LabError::Invalid(format!("thread pool: {e}")))?;
    pool.install(|| (0..blocks).into_par_iter().map(|b| job(b as u64, size(b))).sum())
}

/// Number of draws `Π ~ Mallows(n, q)` among `samples` for which `test` holds.
pub fn count_hits<F>(n: usize, q: f64, samples: usize, seed: u64, path: u64, workers: usize, test: F) -> Result<usize, LabError>
where
    F: Fn(&Permutation) -> bool + Sync,
{
    let params = MallowsParams::new(n, q)?;
    run_blocks(samples, workers, |b, draws| {
        let mut rng = replica_rng(seed, &[path, b]);
        Ok((0..draws).filter(|_| test(&params.sample(&mut rng))).count())
    })
}

/// One estimate per entry of `config.sizes`, in the same order.
pub fn estimate_sat_prob(config: &ExperimentConfig) -> Result<Vec<SizeEstimate>, LabError> {
    config.validate()?;
    let compiled = CompiledFormula::new(&config.sentence);
    let mut out = Vec::with_capacity(config.sizes.len());
    for (s, &n) in config.sizes.iter().enumerate() {
        let q = config.schedule.q_at(n)?;
        let params = MallowsParams::new(n, q)?;
        let hits = run_blocks(config.samples, config.workers, |b, draws| {
            let mut rng = replica_rng(config.seed, &[s as u64, b]);
            let mut eval = compiled.evaluator();
            let mut hits = 0;
            for _ in 0..draws {
                if eval.check(&params.sample(&mut rng), &[])? {
                    hits += 1;
                }
            }
            Ok(hits)
        })?;
        out.push(SizeEstimate { n, q, estimate: SatEstimate::from_count(hits, config.samples) });
    }
    Ok(out)
}
