//! Truncated geometric law `TGeo(m, p)` on `{1, .., m}`.
//!
//! `P(k) = p (1-p)^(k-1) / (1 - (1-p)^m)`, valid for `p < 1`, `p != 0`. Writing
//! `q = 1 - p`, negative `p` (i.e. `q > 1`) gives an increasing mass function.

use rand::Rng;

use crate::error::CoreError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedGeometric {
    m: usize,
    p: f64,
}

impl TruncatedGeometric {
    pub fn new(m: usize, p: f64) -> Result<Self, CoreError> {
        if m == 0 {
            return Err(CoreError::EmptySupport);
        }
        if !p.is_finite() || p >= 1.0 {
            return Err(CoreError::InvalidP(p));
        }
        if p == 0.0 {
            return Err(CoreError::UseUniformBranch);
        }
        Ok(TruncatedGeometric { m, p })
    }

    /// `TGeo(m, 1 - q)`, the law of the insertion variables of `Mallows(n, q)`.
    pub fn from_q(m: usize, q: f64) -> Result<Self, CoreError> {
        if !(q.is_finite() && q > 0.0) {
            return Err(CoreError::InvalidQ(q));
        }
        Self::new(m, 1.0 - q)
    }

    pub fn support_size(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        1.0 - self.p
    }

    pub fn pmf(&self, k: usize) -> f64 {
        if k == 0 || k > self.m {
            return 0.0;
        }
        let q = self.q();
        if q > 1.0 {
            // mirror onto 1/q so no power of q overflows
            return decreasing_pmf(self.m, 1.0 / q, self.m + 1 - k);
        }
        decreasing_pmf(self.m, q, k)
    }

    /// The whole mass function, index `k - 1` holding `P(k)`.
    pub fn pmf_vec(&self) -> Vec<f64> {
        (1..=self.m).map(|k| self.pmf(k)).collect()
    }

    /// Inverse-CDF draw.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let q = self.q();
        if q > 1.0 {
            return self.m + 1 - sample_decreasing(self.m, 1.0 / q, rng);
        }
        sample_decreasing(self.m, q, rng)
    }
}

/// `(1-q) q^(k-1) / (1-q^m)` for `0 < q < 1`.
fn decreasing_pmf(m: usize, q: f64, k: usize) -> f64 {
    let ln_q = q.ln();
    // 1 - q^m = -expm1(m ln q), accurate for q near 1
    let denom = -(m as f64 * ln_q).exp_m1();
    let one_minus_q = -ln_q.exp_m1();
    one_minus_q * ((k - 1) as f64 * ln_q).exp() / denom
}

/// Smallest `k` with `(1 - q^k)/(1 - q^m) > U`, `0 < q < 1`.
fn sample_decreasing<R: Rng + ?Sized>(m: usize, q: f64, rng: &mut R) -> usize {
    let u: f64 = rng.gen();
    let ln_q = q.ln();
    let x = (u * (m as f64 * ln_q).exp_m1()).ln_1p() / ln_q;
    (x.ceil() as usize).clamp(1, m)
}

/// Convenience wrapper with the same contract as [`TruncatedGeometric::new`].
pub fn sample_truncated_geometric<R: Rng + ?Sized>(m: usize, p: f64, rng: &mut R) -> Result<usize, CoreError> {
    Ok(TruncatedGeometric::new(m, p)?.sample(rng))
}

/// Unbounded `Geo(1 - q)` on `{1, 2, ..}`: `P(k) = (1-q) q^(k-1)`, `0 < q < 1`.
pub(crate) fn sample_geometric<R: Rng + ?Sized>(q: f64, rng: &mut R) -> usize {
    // P(K > k) = q^k; K = ceil(ln(1-U) / ln q) with 1-U in (0, 1]
    let u: f64 = rng.gen();
    let x = (-u).ln_1p() / q.ln();
    (x.ceil() as usize).max(1)
}
