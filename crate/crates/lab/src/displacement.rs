use mfo_core::rng::replica_rng;
use mfo_core::MallowsParams;
use serde::Serialize;

use crate::error::LabError;
use crate::montecarlo::BLOCK;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DisplacementReport {
    pub mean: f64,
    pub std_err: f64,
    /// `min(2q / (1 - q), n - 1)`
    pub bound: f64,
    pub holds: bool,
}

/// Empirical `E|Π(1) - 1|` against the displacement bound, with a margin of
/// three standard errors.
pub fn displacement_bound_check(n: usize, q: f64, samples: usize, seed: u64) -> Result<DisplacementReport, LabError> {
    if !(q > 0.0 && q < 1.0) {
        return Err(LabError::Invalid(format!("displacement bound needs 0 < q < 1, got {q}")));
    }
    if n == 0 || samples < 2 {
        return Err(LabError::Invalid("need n >= 1 and at least two samples".into()));
    }
    let params = MallowsParams::new(n, q)?;
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for block in 0..samples.div_ceil(BLOCK) {
        let mut rng = replica_rng(seed, &[block as u64]);
        for _ in 0..BLOCK.min(samples - block * BLOCK) {
            let x = (params.sample(&mut rng).image(1) - 1) as f64;
            sum += x;
            sum_sq += x * x;
        }
    }
    let k = samples as f64;
    let mean = sum / k;
    let var = ((sum_sq - k * mean * mean) / (k - 1.0)).max(0.0);
    let std_err = (var / k).sqrt();
    let bound = (2.0 * q / (1.0 - q)).min((n - 1) as f64);
    Ok(DisplacementReport { mean, std_err, bound, holds: mean <= bound + 3.0 * std_err })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_q_is_near_identity() {
        let r = displacement_bound_check(50, 0.01, 5000, 2).unwrap();
        assert!(r.holds);
        assert!(r.mean < 0.05);
    }

    #[test]
    fn rejects_bad_q() {
        assert!(displacement_bound_check(5, 1.0, 10, 0).is_err());
        assert!(displacement_bound_check(5, 0.5, 1, 0).is_err());
    }
}
