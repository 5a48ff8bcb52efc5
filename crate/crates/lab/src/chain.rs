//! The chain `M_n = ([Π_{R_n}]_d, (Z_{R_n+1}, .., Z_n))` along a regenerative
//! stream, where `R_n` is the last regeneration time `<= n`.

use std::collections::{BTreeMap, HashMap};

use mfo_core::rng::derive_seed;
use mfo_core::{tail_rank, Permutation, RegenerativeStream};
use mfo_logic::{ef_equivalent, ef_type, EfType, Signature};
use serde::Serialize;

use crate::error::LabError;

/// Snapshots up to this `n` are checked against the EF identity.
pub const VERIFY_MAX_N: usize = 10;
pub const MAX_CHAIN_DEPTH: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainState {
    pub n: usize,
    pub class_label: EfType,
    pub tail: Vec<usize>,
}

/// First permutation seen in each class.
#[derive(Debug, Default, Clone)]
pub struct ClassRegistry {
    reps: HashMap<EfType, Permutation>,
}

impl ClassRegistry {
    pub fn new() -> ClassRegistry {
        ClassRegistry::default()
    }

    pub fn register(&mut self, p: &Permutation, d: usize, sig: Signature) -> Result<EfType, LabError> {
        let t = ef_type(p, d, sig)?;
        self.reps.entry(t).or_insert_with(|| p.clone());
        Ok(t)
    }

    pub fn rep(&self, t: &EfType) -> Option<&Permutation> {
        self.reps.get(t)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct ChainTrace {
    pub states: Vec<ChainState>,
    pub regeneration_times: Vec<usize>,
    /// Number of snapshots checked against the EF identity.
    pub verified: usize,
}

fn check_params(q: f64, d: usize) -> Result<(), LabError> {
    if !(q > 0.0 && q < 1.0) {
        return Err(LabError::Invalid(format!("chain needs 0 < q < 1, got {q}")));
    }
    if d > MAX_CHAIN_DEPTH {
        return Err(LabError::Budget { what: "d", value: d, limit: MAX_CHAIN_DEPTH });
    }
    Ok(())
}

/// `M_1, .., M_{n_max}` in TOTO along `stream`.
///
/// For `n <= VERIFY_MAX_N` each snapshot is checked:
/// `rk(Π(1..n)) ≡_d rep(class) ⊕ rk(tail)`. Every regeneration time must
/// carry an empty tail.
pub fn trace_stream(
    stream: &mut RegenerativeStream,
    d: usize,
    n_max: usize,
    registry: &mut ClassRegistry,
) -> Result<ChainTrace, LabError> {
    check_params(stream.q(), d)?;
    let sig = Signature::Toto;
    stream.extend(n_max);
    let mut states = Vec::with_capacity(n_max);
    let mut verified = 0;
    let mut current: Option<(usize, EfType)> = None;
    for n in 1..=n_max {
        let r = stream.last_regeneration(n);
        let label = match current {
            Some((cr, t)) if cr == r => t,
            _ => {
                let t = registry.register(&stream.prefix_rank(r), d, sig)?;
                current = Some((r, t));
                t
            }
        };
        let tail = stream.z_record()[r..n].to_vec();
        let regenerated = stream.regeneration_times().binary_search(&n).is_ok();
        if regenerated && !tail.is_empty() {
            return Err(LabError::Verification(format!("nonempty tail at regeneration time {n}")));
        }
        if n <= VERIFY_MAX_N {
            let rep = registry.rep(&label).expect("registered");
            let rebuilt = rep.direct_sum(&tail_rank(&tail));
            if !ef_equivalent(&stream.prefix_rank(n), &rebuilt, d, sig)? {
                return Err(LabError::Verification(format!("prefix {n} is not {d}-equivalent to rep ⊕ rk(tail)")));
            }
            verified += 1;
        }
        states.push(ChainState { n, class_label: label, tail });
    }
    let times = stream.regeneration_times().iter().copied().filter(|&t| t <= n_max).collect();
    Ok(ChainTrace { states, regeneration_times: times, verified })
}

/// [`trace_stream`] on a fresh stream seeded with `seed`.
pub fn chain_trace(q: f64, d: usize, n_max: usize, seed: u64) -> Result<ChainTrace, LabError> {
    check_params(q, d)?;
    let mut stream = RegenerativeStream::from_seed(q, seed)?;
    trace_stream(&mut stream, d, n_max, &mut ClassRegistry::new())
}

/// What [`chain_occupancy`] counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Occupancy {
    /// `[Π_{R_n}]_d`
    Class,
    /// `[Π_{R_n}]_d` and `n - R_n`
    ClassAndTailLength,
    /// The whole state `M_n`.
    State,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum OccupancyKey {
    Class(EfType),
    ClassAndTailLength(EfType, usize),
    State(EfType, Vec<usize>),
}

/// Empirical law of `M_n`, or of a projection of it, at each of `times`
/// over `runs` streams. Stream `r` is seeded with `derive_seed(seed, [r])`.
pub fn chain_occupancy(
    q: f64,
    d: usize,
    times: &[usize],
    runs: usize,
    seed: u64,
    kind: Occupancy,
) -> Result<Vec<BTreeMap<OccupancyKey, f64>>, LabError> {
    check_params(q, d)?;
    if runs == 0 {
        return Err(LabError::Invalid("runs must be at least 1".into()));
    }
    let mut counts = vec![BTreeMap::new(); times.len()];
    let n_max = times.iter().copied().max().unwrap_or(0);
    for r in 0..runs {
        let mut stream = RegenerativeStream::from_seed(q, derive_seed(seed, &[r as u64]))?;
        stream.extend(n_max);
        for (law, &n) in counts.iter_mut().zip(times) {
            let rn = stream.last_regeneration(n);
            let label = ef_type(&stream.prefix_rank(rn), d, Signature::Toto)?;
            let key = match kind {
                Occupancy::Class => OccupancyKey::Class(label),
                Occupancy::ClassAndTailLength => OccupancyKey::ClassAndTailLength(label, n - rn),
                Occupancy::State => OccupancyKey::State(label, stream.z_record()[rn..n].to_vec()),
            };
            *law.entry(key).or_insert(0usize) += 1;
        }
    }
    Ok(counts
        .into_iter()
        .map(|law| law.into_iter().map(|(k, c)| (k, c as f64 / runs as f64)).collect())
        .collect())
}

/// `½ Σ |a - b|` over the union of supports.
pub fn tv_between<K: Ord + Clone>(a: &BTreeMap<K, f64>, b: &BTreeMap<K, f64>) -> f64 {
    let mut sum = 0.0;
    for (k, &pa) in a {
        sum += (pa - b.get(k).copied().unwrap_or(0.0)).abs();
    }
    for (k, &pb) in b {
        if !a.contains_key(k) {
            sum += pb;
        }
    }
    0.5 * sum
}

/// Sample mean of `T_1` over `streams` independent streams.
pub fn mean_first_regeneration(q: f64, streams: usize, seed: u64) -> Result<f64, LabError> {
    if streams == 0 {
        return Err(LabError::Invalid("streams must be at least 1".into()));
    }
    let mut total = 0u64;
    for r in 0..streams {
        let mut s = RegenerativeStream::from_seed(q, derive_seed(seed, &[r as u64]))?;
        total += s.next_regeneration() as u64;
    }
    Ok(total as f64 / streams as f64)
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainRecord {
    pub n: usize,
    pub class: String,
    pub tail: Vec<usize>,
}

impl From<&ChainState> for ChainRecord {
    fn from(s: &ChainState) -> ChainRecord {
        ChainRecord { n: s.n, class: s.class_label.short_hex(), tail: s.tail.clone() }
    }
}
