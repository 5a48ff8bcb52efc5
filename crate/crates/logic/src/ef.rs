//! `d`-round Ehrenfeucht–Fraïssé types of permutations.
//!
//! The type of a tuple `a⃗` with `r` rounds left is the digest of its atomic
//! diagram together with the set of `(r-1)`-round types of all one-element
//! extensions. Two permutations are `≡_d` exactly when the empty tuple has the
//! same `d`-round type in both.

use std::fmt;

use mfo_core::Permutation;
use sha2::{Digest, Sha256};

use crate::error::LogicError;
use crate::formula::Signature;

pub const MAX_EF_DEPTH: usize = 4;
/// Largest number of `d`-tuples explored; `12^4`.
pub const MAX_EF_TUPLES: usize = 20_736;

/// Canonical label of a `≡_d` class.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EfType([u8; 32]);

impl EfType {
    pub fn bytes(&self) -> &[u8; 32] {
        &self.0
    }

    pub fn short_hex(&self) -> String {
        self.0[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for EfType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EfType({})", self.short_hex())
    }
}

impl fmt::Display for EfType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

fn check_budget(n: usize, d: usize) -> Result<(), LogicError> {
    let within = d <= MAX_EF_DEPTH && n.checked_pow(d as u32).is_some_and(|t| t <= MAX_EF_TUPLES);
    if within {
        Ok(())
    } else {
        Err(LogicError::EfBudget { n, d })
    }
}

/// The `d`-round type of `p` in the given signature.
///
/// Budget: `d <= 4` and `n^d <= 12^4`.
pub fn ef_type(p: &Permutation, d: usize, sig: Signature) -> Result<EfType, LogicError> {
    check_budget(p.len(), d)?;
    let mut tuple = Vec::with_capacity(d);
    Ok(EfType(tuple_type(p.images(), sig, &mut tuple, d)))
}

/// `p ≡_d s`.
pub fn ef_equivalent(p: &Permutation, s: &Permutation, d: usize, sig: Signature) -> Result<bool, LogicError> {
    Ok(ef_type(p, d, sig)? == ef_type(s, d, sig)?)
}

fn tuple_type(images: &[usize], sig: Signature, tuple: &mut Vec<usize>, rounds: usize) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update([rounds as u8, tuple.len() as u8, sig as u8]);
    h.update(diagram(images, sig, tuple));
    if rounds > 0 {
        let mut children: Vec<[u8; 32]> = (1..=images.len())
            .map(|a| {
                tuple.push(a);
                let t = tuple_type(images, sig, tuple, rounds - 1);
                tuple.pop();
                t
            })
            .collect();
        children.sort_unstable();
        children.dedup();
        h.update((children.len() as u32).to_le_bytes());
        for c in &children {
            h.update(c);
        }
    }
    h.finalize().into()
}

/// Atomic diagram of the tuple: one byte per ordered pair.
fn diagram(images: &[usize], sig: Signature, tuple: &[usize]) -> Vec<u8> {
    let mut out = Vec::with_capacity(tuple.len() * tuple.len());
    for &a in tuple {
        for &b in tuple {
            let pa = images[a - 1];
            let pb = images[b - 1];
            let bits = match sig {
                Signature::Toob => (a == b) as u8 | ((pa == b) as u8) << 1,
                Signature::Toto => (a == b) as u8 | ((a < b) as u8) << 1 | ((pa < pb) as u8) << 2,
            };
            out.push(bits);
        }
    }
    out
}
