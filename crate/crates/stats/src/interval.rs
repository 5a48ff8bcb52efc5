//! Position intervals and sequences of pairwise-disjoint intervals.

use std::fmt;
use std::str::FromStr;

use crate::error::StatsError;

/// `{lo, .., hi}` with `1 <= lo <= hi`, or the empty interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Interval {
    Empty,
    Range { lo: usize, hi: usize },
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Result<Interval, StatsError> {
        if lo == 0 || lo > hi {
            return Err(StatsError::Invalid(format!("bad interval {lo}-{hi}")));
        }
        Ok(Interval::Range { lo, hi })
    }

    /// `{lo, .., hi}`, empty when `lo > hi`.
    pub fn span(lo: usize, hi: usize) -> Interval {
        if lo > hi || lo == 0 {
            Interval::Empty
        } else {
            Interval::Range { lo, hi }
        }
    }

    /// `[j] = {1, .., j}`.
    pub fn prefix(j: usize) -> Interval {
        Interval::span(1, j)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Interval::Empty)
    }

    pub fn len(&self) -> usize {
        match *self {
            Interval::Empty => 0,
            Interval::Range { lo, hi } => hi - lo + 1,
        }
    }

    pub fn bounds(&self) -> Option<(usize, usize)> {
        match *self {
            Interval::Empty => None,
            Interval::Range { lo, hi } => Some((lo, hi)),
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        match *self {
            Interval::Empty => false,
            Interval::Range { lo, hi } => lo <= i && i <= hi,
        }
    }

    pub fn positions(&self) -> std::ops::RangeInclusive<usize> {
        match *self {
            // an empty inclusive range
            Interval::Empty => 1..=0,
            Interval::Range { lo, hi } => lo..=hi,
        }
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        match (self.bounds(), other.bounds()) {
            (Some((a, b)), Some((c, d))) => a <= d && c <= b,
            _ => false,
        }
    }

    /// Drop the largest element.
    pub fn without_max(&self) -> Interval {
        match *self {
            Interval::Empty => Interval::Empty,
            Interval::Range { lo, hi } => Interval::span(lo, hi - 1),
        }
    }

    pub(crate) fn check_within(&self, n: usize) -> Result<(), StatsError> {
        match *self {
            Interval::Range { hi, .. } if hi > n => Err(StatsError::OutOfRange { pos: hi, n }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Empty => write!(f, "{{}}"),
            Interval::Range { lo, hi } => write!(f, "{lo}-{hi}"),
        }
    }
}

impl FromStr for Interval {
    type Err = StatsError;

    /// `lo-hi`, a single position `i`, or `{}` for the empty interval.
    fn from_str(s: &str) -> Result<Interval, StatsError> {
        let s = s.trim();
        if s == "{}" {
            return Ok(Interval::Empty);
        }
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| StatsError::Parse(format!("bad interval {s:?}")));
        match s.split_once('-') {
            Some((a, b)) => Interval::new(num(a)?, num(b)?),
            None => {
                let i = num(s)?;
                Interval::new(i, i)
            }
        }
    }
}

/// Ordered pairwise-disjoint intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalSeq(Vec<Interval>);

impl IntervalSeq {
    pub fn new(items: Vec<Interval>) -> Result<IntervalSeq, StatsError> {
        for (i, a) in items.iter().enumerate() {
            for b in &items[i + 1..] {
                if a.overlaps(b) {
                    let (lo, hi) = (a.bounds().unwrap(), b.bounds().unwrap());
                    return Err(StatsError::Overlap(lo.0.max(hi.0)));
                }
            }
        }
        Ok(IntervalSeq(items))
    }

    pub fn empty() -> IntervalSeq {
        IntervalSeq(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn items(&self) -> &[Interval] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<&Interval> {
        self.0.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.0.iter()
    }

    /// Concatenation; fails if the result is not disjoint.
    pub fn concat(&self, other: &IntervalSeq) -> Result<IntervalSeq, StatsError> {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        IntervalSeq::new(v)
    }
}

impl fmt::Display for IntervalSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        for (i, iv) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl FromStr for IntervalSeq {
    type Err = StatsError;

    fn from_str(s: &str) -> Result<IntervalSeq, StatsError> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(IntervalSeq::empty());
        }
        IntervalSeq::new(s.split(',').map(str::parse).collect::<Result<_, _>>()?)
    }
}
