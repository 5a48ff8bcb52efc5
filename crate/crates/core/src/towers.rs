//! Towers of twos, wowzers and their discrete inverses `log*`, `log**`.
//!
//! `T(0) = 1, T(i) = 2^T(i-1)` and `W(0) = 1, W(i) = T(W(i-1))`. Only
//! `T(0..=5)` and `W(0..=3)` are materialised; comparisons against larger
//! values go through [`tower_ge`], which never builds the tower.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::CoreError;

pub const MAX_TOWER: usize = 5;
pub const MAX_WOWZER: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigNat(pub BigUint);

impl BigNat {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for BigNat {
    fn from(v: u64) -> Self {
        BigNat(BigUint::from(v))
    }
}

impl From<BigUint> for BigNat {
    fn from(v: BigUint) -> Self {
        BigNat(v)
    }
}

impl fmt::Display for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for BigNat {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(CoreError::Parse(s.to_string()));
        }
        BigUint::parse_bytes(s.as_bytes(), 10)
            .map(BigNat)
            .ok_or_else(|| CoreError::Parse(s.to_string()))
    }
}

/// `T(n)` for `n <= 5`.
pub fn tower(n: usize) -> Result<BigNat, CoreError> {
    if n > MAX_TOWER {
        return Err(CoreError::TooLarge(format!("T({n})")));
    }
    let mut v = BigUint::one();
    for _ in 0..n {
        let e = v.to_u64().expect("exponent fits for n <= 5");
        v = BigUint::one() << e;
    }
    Ok(BigNat(v))
}

/// `W(n)` for `n <= 3`; `W(4) = T(65536)` has no binary representation.
pub fn wowzer(n: usize) -> Result<BigNat, CoreError> {
    if n > MAX_WOWZER {
        return Err(CoreError::TooLarge(format!("W({n})")));
    }
    let mut v = BigNat::from(1);
    for _ in 0..n {
        let h = v.to_u64().expect("height small") as usize;
        v = tower(h)?;
    }
    Ok(v)
}

/// `ceil(log2 x)` for `x >= 1`.
fn ceil_log2(x: &BigUint) -> BigUint {
    debug_assert!(!x.is_zero());
    BigUint::from((x - 1u32).bits())
}

/// `T(height) >= x`, decided without building `T(height)`.
///
/// For `h >= 1` and `x >= 2`, `2^T(h-1) >= x` iff `T(h-1) >= ceil(log2 x)`.
pub fn tower_ge(height: usize, x: &BigNat) -> bool {
    let mut h = height;
    let mut x = x.0.clone();
    loop {
        if x <= BigUint::one() {
            return true;
        }
        if h == 0 {
            return false;
        }
        x = ceil_log2(&x);
        h -= 1;
    }
}

/// `min { k : T(k) >= x }`.
pub fn log_star(x: &BigNat) -> usize {
    (0..).find(|&k| tower_ge(k, x)).expect("towers are unbounded")
}

/// `min { k : W(k) >= x }`.
pub fn log_star_star(x: &BigNat) -> usize {
    if x.0 <= BigUint::one() {
        return 0;
    }
    // W(k) = T(W(k-1)); the heights W(0..=3) are small integers and
    // T(W(3)) = T(65536) exceeds every value that fits in memory
    let mut height = 1usize;
    for k in 1..=MAX_WOWZER + 1 {
        if tower_ge(height, x) {
            return k;
        }
        height = wowzer(k).expect("k <= 3").to_u64().expect("small") as usize;
    }
    unreachable!("T(65536) exceeds any representable value")
}
