//! The Mallows distribution `P(π) = q^inv(π) / Z(n, q)` on `S_n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::CoreError;
use crate::perm::Permutation;
use crate::tgeo::TruncatedGeometric;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MallowsParams {
    n: usize,
    q: f64,
}

impl MallowsParams {
    pub fn new(n: usize, q: f64) -> Result<Self, CoreError> {
        if !(q.is_finite() && q > 0.0) {
            return Err(CoreError::InvalidQ(q));
        }
        Ok(MallowsParams { n, q })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn normalizing_constant(&self) -> f64 {
        normalizing_constant(self.n, self.q)
    }

    /// `q^inv(p) / Z(n, q)`.
    pub fn pmf(&self, p: &Permutation) -> Result<f64, CoreError> {
        if p.len() != self.n {
            return Err(CoreError::LengthMismatch { expected: self.n, got: p.len() });
        }
        if self.q == 1.0 {
            return Ok((-ln_factorial(self.n)).exp());
        }
        let ln_w = p.inversions() as f64 * self.q.ln();
        Ok((ln_w - ln_normalizing_constant(self.n, self.q)).exp())
    }

    /// One draw by sequential insertion.
    ///
    /// For `q != 1` the `i`-th image is the `Z_i`-th smallest unused value with
    /// `Z_i ~ TGeo(n - i + 1, 1 - q)`. For `q == 1` exactly, each `Z_i` is
    /// uniform and the unused values may be kept in any order, which makes the
    /// draw a Fisher–Yates shuffle.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        if self.q == 1.0 {
            return sample_uniform(self.n, rng);
        }
        let mut unused = OrderStatisticSet::full(self.n);
        let mut images = Vec::with_capacity(self.n);
        for i in 1..=self.n {
            let m = self.n - i + 1;
            let z = TruncatedGeometric::from_q(m, self.q).expect("q validated").sample(rng);
            images.push(unused.take_kth(z));
        }
        Permutation::from_images_unchecked(images)
    }
}

/// Convenience wrapper over [`MallowsParams::sample`].
pub fn sample_mallows<R: Rng + ?Sized>(params: &MallowsParams, rng: &mut R) -> Permutation {
    params.sample(rng)
}

fn sample_uniform<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut unused: Vec<usize> = (1..=n).collect();
    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        let idx = rng.gen_range(0..n - i);
        images.push(unused.swap_remove(idx));
    }
    Permutation::from_images_unchecked(images)
}

/// `Z(n, q) = Σ_σ q^inv(σ)`, via `Π_{i=1}^n (1 - q^i)/(1 - q)`; `n!` at `q = 1`.
pub fn normalizing_constant(n: usize, q: f64) -> f64 {
    if q == 1.0 {
        return (1..=n).map(|i| i as f64).product();
    }
    (1..=n).map(|i| q_integer(i, q)).product()
}

/// `ln Z(n, q)`, finite where `Z` itself would overflow.
pub fn ln_normalizing_constant(n: usize, q: f64) -> f64 {
    if q == 1.0 {
        return ln_factorial(n);
    }
    (1..=n).map(|i| ln_q_integer(i, q)).sum()
}

/// `[i]_q = (1 - q^i) / (1 - q) = 1 + q + .. + q^(i-1)`.
fn q_integer(i: usize, q: f64) -> f64 {
    let ln_q = q.ln();
    (i as f64 * ln_q).exp_m1() / ln_q.exp_m1()
}

fn ln_q_integer(i: usize, q: f64) -> f64 {
    let ln_q = q.ln();
    if q < 1.0 {
        (-(i as f64 * ln_q).exp_m1()).ln() - (-ln_q.exp_m1()).ln()
    } else {
        // ln(q^i - 1) = i ln q + ln(1 - q^-i)
        let x = i as f64 * ln_q;
        x + (-(-x).exp()).ln_1p() - ln_q.exp_m1().ln()
    }
}

fn ln_factorial(n: usize) -> f64 {
    (1..=n).map(|i| (i as f64).ln()).sum()
}

/// Exact `Z(n, q)` for rational `q`.
pub fn normalizing_constant_exact(n: usize, q: &BigRational) -> BigRational {
    let mut z = BigRational::one();
    for i in 1..=n {
        let mut factor = BigRational::zero();
        let mut pow = BigRational::one();
        for _ in 0..i {
            factor += &pow;
            pow *= q;
        }
        z *= factor;
    }
    z
}

/// Exact `q^inv(p) / Z(n, q)` for rational `q`.
pub fn mallows_pmf_exact(p: &Permutation, q: &BigRational) -> BigRational {
    inversion_weight_exact(p, q) / normalizing_constant_exact(p.len(), q)
}

/// `q^inv(p)` as an exact rational.
pub fn inversion_weight_exact(p: &Permutation, q: &BigRational) -> BigRational {
    let inv = p.inversions();
    let numer = q.numer().pow(inv as u32);
    let denom = q.denom().pow(inv as u32);
    BigRational::new(numer, denom)
}

/// `num / den` as a [`BigRational`].
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Order-statistic set over `{1, .., n}` backed by a Fenwick tree.
struct OrderStatisticSet {
    tree: Vec<usize>,
    top_bit: usize,
}

impl OrderStatisticSet {
    fn full(n: usize) -> Self {
        let mut tree = vec![0; n + 1];
        for i in 1..=n {
            tree[i] += 1;
            let parent = i + (i & i.wrapping_neg());
            if parent <= n {
                tree[parent] += tree[i];
            }
        }
        let top_bit = if n == 0 { 0 } else { 1 << (usize::BITS - 1 - n.leading_zeros()) };
        OrderStatisticSet { tree, top_bit }
    }

    /// Removes and returns the `k`-th smallest remaining element (1-based).
    fn take_kth(&mut self, mut k: usize) -> usize {
        let n = self.tree.len() - 1;
        let mut pos = 0;
        let mut step = self.top_bit;
        while step > 0 {
            let next = pos + step;
            if next <= n && self.tree[next] < k {
                pos = next;
                k -= self.tree[next];
            }
            step >>= 1;
        }
        let value = pos + 1;
        let mut i = value;
        while i <= n {
            self.tree[i] -= 1;
            i += i & i.wrapping_neg();
        }
        value
    }
}
