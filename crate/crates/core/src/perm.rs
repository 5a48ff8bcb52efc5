//! One-line permutations of `[n] = {1, .., n}` and the algebra on them.

use std::fmt;
use std::str::FromStr;

use crate::error::CoreError;

/// A permutation in one-line notation: `images[i - 1] = π(i)`.
///
/// The empty permutation (`n = 0`) is a valid value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` is a bijection of `[n]`.
    pub fn new(images: Vec<usize>) -> Result<Self, CoreError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(CoreError::NotAPermutation(images));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Skips validation. Callers must guarantee the bijection invariant.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn empty() -> Self {
        Permutation { images: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `π(i)` for `1 <= i <= n`.
    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    /// Number of pairs `i < j` with `π(i) > π(j)`.
    ///
    /// Merge-sort count, `O(n log n)`.
    pub fn inversions(&self) -> u64 {
        let mut buf = self.images.clone();
        let mut scratch = vec![0; buf.len()];
        count_inversions(&mut buf, &mut scratch)
    }

    /// `σ` with `π ∘ σ = id`.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    /// `r_n ∘ π`, i.e. `i ↦ n - π(i) + 1`.
    pub fn reverse(&self) -> Permutation {
        let n = self.len();
        Permutation { images: self.images.iter().map(|&v| n - v + 1).collect() }
    }

    /// `π ∘ r_n`, the one-line notation read backwards.
    pub fn reverse_positions(&self) -> Permutation {
        let mut images = self.images.clone();
        images.reverse();
        Permutation { images }
    }

    /// `π ⊕ σ`: `π` on the first `n` points, `σ` shifted by `n` on the rest.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let n = self.len();
        let mut images = Vec::with_capacity(n + other.len());
        images.extend_from_slice(&self.images);
        images.extend(other.images.iter().map(|&v| v + n));
        Permutation { images }
    }

    /// `rk(π(1), .., π(j))`.
    pub fn prefix_rank(&self, j: usize) -> Result<Permutation, CoreError> {
        if j > self.len() {
            return Err(CoreError::PrefixOutOfRange { j, n: self.len() });
        }
        Ok(rank_distinct(&self.images[..j]))
    }

    /// `rk(π(i), .., π(i + m - 1))` for a window of consecutive positions.
    pub fn window_rank(&self, start: usize, m: usize) -> Result<Permutation, CoreError> {
        if start == 0 || start + m > self.len() + 1 {
            return Err(CoreError::PrefixOutOfRange { j: start + m - 1, n: self.len() });
        }
        Ok(rank_distinct(&self.images[start - 1..start - 1 + m]))
    }

    /// `C_1, .., C_n`: entry `k - 1` counts the `k`-cycles.
    pub fn cycle_counts(&self) -> Vec<usize> {
        let n = self.len();
        let mut counts = vec![0; n];
        let mut visited = vec![false; n];
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !visited[cur] {
                visited[cur] = true;
                cur = self.images[cur] - 1;
                len += 1;
            }
            counts[len - 1] += 1;
        }
        counts
    }

    /// Fixed points, `C_1`.
    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &v)| i + 1 == v).count()
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, CoreError> {
        if self.len() != other.len() {
            return Err(CoreError::LengthMismatch { expected: self.len(), got: other.len() });
        }
        Ok(Permutation { images: other.images.iter().map(|&v| self.images[v - 1]).collect() })
    }
}

fn count_inversions(xs: &mut [usize], scratch: &mut [usize]) -> u64 {
    let n = xs.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let (left, right) = xs.split_at_mut(mid);
    let mut inv = count_inversions(left, &mut scratch[..mid]) + count_inversions(right, &mut scratch[mid..]);
    let (mut i, mut j, mut k) = (0, 0, 0);
    while i < left.len() && j < right.len() {
        if left[i] <= right[j] {
            scratch[k] = left[i];
            i += 1;
        } else {
            scratch[k] = right[j];
            inv += (left.len() - i) as u64;
            j += 1;
        }
        k += 1;
    }
    scratch[k..k + left.len() - i].copy_from_slice(&left[i..]);
    k += left.len() - i;
    scratch[k..k + right.len() - j].copy_from_slice(&right[j..]);
    xs.copy_from_slice(&scratch[..n]);
    inv
}

/// Rank of a slice of distinct integers; no validation.
pub(crate) fn rank_distinct<T: Ord + Copy>(xs: &[T]) -> Permutation {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_unstable_by_key(|&i| xs[i]);
    let mut images = vec![0; xs.len()];
    for (r, &i) in order.iter().enumerate() {
        images[i] = r + 1;
    }
    Permutation { images }
}

/// `rk(x_1, .., x_n)`: `output(i)` is the position of `x_i` in sorted order.
pub fn rank(xs: &[f64]) -> Result<Permutation, CoreError> {
    if xs.iter().any(|x| x.is_nan()) {
        return Err(CoreError::NotDistinct);
    }
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_unstable_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    if order.windows(2).any(|w| xs[w[0]] == xs[w[1]]) {
        return Err(CoreError::NotDistinct);
    }
    let mut images = vec![0; xs.len()];
    for (r, &i) in order.iter().enumerate() {
        images[i] = r + 1;
    }
    Ok(Permutation { images })
}

/// Rank of distinct integers; duplicates are an error.
pub fn rank_integers(xs: &[i64]) -> Result<Permutation, CoreError> {
    let mut sorted = xs.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(CoreError::NotDistinct);
    }
    Ok(rank_distinct(xs))
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut next = Some((1..=n).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        if next_lexicographic(&mut succ) {
            next = Some(succ);
        }
        Some(Permutation { images: cur })
    })
}

fn next_lexicographic(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = CoreError;

    /// Comma-separated one-line notation, e.g. `2,3,1`. The empty string is `S_0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Permutation::empty());
        }
        let images = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| CoreError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::new(images)
    }
}
