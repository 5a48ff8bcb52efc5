//! Lazily extended permutation of the naturals with i.i.d. `Geo(1 - q)` shifts.
//!
//! `Π(i)` is the `Z_i`-th smallest natural number not among `Π(1), .., Π(i-1)`.
//! A time `t` is a regeneration time when `Π({1..t}) = {1..t}`, which happens
//! exactly when the running maximum of the images equals `t`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::CoreError;
use crate::perm::{rank_distinct, Permutation};
use crate::tgeo::sample_geometric;

#[derive(Debug, Clone)]
pub struct RegenerativeStream {
    q: f64,
    z_record: Vec<usize>,
    images: Vec<usize>,
    running_max: usize,
    // unused values below running_max, increasing
    holes: Vec<usize>,
    regeneration_times: Vec<usize>,
    regen_cursor: usize,
    rng: ChaCha8Rng,
}

impl RegenerativeStream {
    pub fn new(q: f64, rng: ChaCha8Rng) -> Result<Self, CoreError> {
        if !(q > 0.0 && q < 1.0) {
            return Err(CoreError::NotRecurrent(q));
        }
        Ok(RegenerativeStream {
            q,
            z_record: Vec::new(),
            images: Vec::new(),
            running_max: 0,
            holes: Vec::new(),
            regeneration_times: vec![0],
            regen_cursor: 0,
            rng,
        })
    }

    pub fn from_seed(q: f64, seed: u64) -> Result<Self, CoreError> {
        Self::new(q, ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Number of images drawn so far.
    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn z_record(&self) -> &[usize] {
        &self.z_record
    }

    pub fn running_max(&self) -> usize {
        self.running_max
    }

    /// All regeneration times found so far, starting with `T_0 = 0`.
    pub fn regeneration_times(&self) -> &[usize] {
        &self.regeneration_times
    }

    /// Draws images until at least `upto` are known.
    pub fn extend(&mut self, upto: usize) {
        while self.images.len() < upto {
            self.step();
        }
    }

    fn step(&mut self) {
        let z = sample_geometric(self.q, &mut self.rng);
        self.z_record.push(z);
        let value = take_shifted(&mut self.holes, &mut self.running_max, z);
        self.images.push(value);
        let t = self.images.len();
        if self.running_max == t {
            self.regeneration_times.push(t);
        }
    }

    /// `rk(Π(1), .., Π(n))`, extending the stream as needed.
    pub fn prefix_rank(&mut self, n: usize) -> Permutation {
        self.extend(n);
        rank_distinct(&self.images[..n])
    }

    /// The next regeneration time after the one last returned by this method
    /// (after `T_0 = 0` on the first call).
    pub fn next_regeneration(&mut self) -> usize {
        while self.regeneration_times.len() <= self.regen_cursor + 1 {
            self.step();
        }
        self.regen_cursor += 1;
        self.regeneration_times[self.regen_cursor]
    }

    /// `R_n`: the last regeneration time `<= n`.
    pub fn last_regeneration(&mut self, n: usize) -> usize {
        self.extend(n);
        let idx = self.regeneration_times.partition_point(|&t| t <= n);
        self.regeneration_times[idx - 1]
    }
}

fn take_shifted(holes: &mut Vec<usize>, running_max: &mut usize, z: usize) -> usize {
    if z <= holes.len() {
        return holes.remove(z - 1);
    }
    let value = *running_max + (z - holes.len());
    holes.extend(*running_max + 1..value);
    *running_max = value;
    value
}

/// The shifted construction run on a finite `z` sequence: image `i` is the
/// `z_i`-th smallest value not yet used.
pub fn shifted_images(zs: &[usize]) -> Vec<usize> {
    let mut holes = Vec::new();
    let mut max = 0;
    zs.iter().map(|&z| take_shifted(&mut holes, &mut max, z.max(1))).collect()
}

/// `rk` of [`shifted_images`]: the pattern contributed by a tail of `z`s
/// following a regeneration time.
pub fn tail_rank(zs: &[usize]) -> Permutation {
    rank_distinct(&shifted_images(zs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_recurrent_q() {
        for q in [0.0, 1.0, 1.5, -0.2, f64::NAN] {
            assert!(RegenerativeStream::from_seed(q, 1).is_err());
        }
    }

    #[test]
    fn shifted_examples() {
        assert_eq!(shifted_images(&[1, 1, 1]), vec![1, 2, 3]);
        assert_eq!(shifted_images(&[2, 1, 1]), vec![2, 1, 3]);
        assert_eq!(shifted_images(&[3, 2, 1, 1]), vec![3, 2, 1, 4]);
        assert_eq!(shifted_images(&[2, 2, 1]), vec![2, 3, 1]);
    }

    #[test]
    fn prefix_injective_and_regenerations_definitional() {
        for seed in 0..50 {
            let mut s = RegenerativeStream::from_seed(0.6, seed).unwrap();
            s.extend(300);
            let mut seen = std::collections::HashSet::new();
            assert!(s.images().iter().all(|&v| seen.insert(v)));
            let times = s.regeneration_times();
            assert_eq!(times[0], 0);
            assert!(times.windows(2).all(|w| w[0] < w[1]));
            let mut max = 0;
            for (i, &v) in s.images().iter().enumerate() {
                max = max.max(v);
                assert_eq!(times.contains(&(i + 1)), max == i + 1);
            }
            if s.z_record()[0] == 1 {
                assert_eq!(times[1], 1);
            }
        }
    }

    #[test]
    fn next_regeneration_walks_times() {
        let mut s = RegenerativeStream::from_seed(0.5, 3).unwrap();
        let a = s.next_regeneration();
        let b = s.next_regeneration();
        assert!(0 < a && a < b);
        assert_eq!(s.images()[..b].iter().max(), Some(&b));
        assert_eq!(s.last_regeneration(b), b);
        assert_eq!(s.last_regeneration(b - 1), a);
    }

    #[test]
    fn prefix_splits_at_regeneration() {
        for seed in 0..30 {
            let mut s = RegenerativeStream::from_seed(0.5, seed).unwrap();
            s.extend(40);
            for n in 1..=40 {
                let r = s.last_regeneration(n);
                let head = s.prefix_rank(r);
                let tail = tail_rank(&s.z_record()[r..n]);
                assert_eq!(s.prefix_rank(n), head.direct_sum(&tail));
            }
        }
    }
}
