//! Simple directed graphs on vertices `0..n`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::StatsError;

/// No self-loops, no parallel arcs. Vertex `v` is aligned with entry `v` of
/// the interval sequence the graph was induced on.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DirectedGraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl DirectedGraph {
    pub fn new(n: usize) -> DirectedGraph {
        DirectedGraph { n, arcs: BTreeSet::new() }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<DirectedGraph, StatsError> {
        let mut g = DirectedGraph::new(n);
        for (u, v) in arcs {
            g.add_arc(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Returns whether the arc was new.
    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<bool, StatsError> {
        if u >= self.n || v >= self.n {
            return Err(StatsError::Invalid(format!("arc ({u}, {v}) outside {} vertices", self.n)));
        }
        if u == v {
            return Err(StatsError::Invalid(format!("self-loop at {u}")));
        }
        Ok(self.arcs.insert((u, v)))
    }

    pub fn remove_arc(&mut self, u: usize, v: usize) -> bool {
        self.arcs.remove(&(u, v))
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.arcs.range((u, 0)..(u + 1, 0)).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arcs.iter().filter(|a| a.1 == v).count()
    }
}

impl fmt::Display for DirectedGraph {
    /// First line `n`, then one 1-based `u v` per arc.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for (u, v) in &self.arcs {
            writeln!(f, "{} {}", u + 1, v + 1)?;
        }
        Ok(())
    }
}

impl FromStr for DirectedGraph {
    type Err = StatsError;

    fn from_str(s: &str) -> Result<DirectedGraph, StatsError> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let bad = |l: &str| StatsError::Parse(format!("bad graph line {l:?}"));
        let first = lines.next().ok_or_else(|| StatsError::Parse("missing vertex count".into()))?;
        let n: usize = first.parse().map_err(|_| bad(first))?;
        let mut g = DirectedGraph::new(n);
        for l in lines {
            let mut it = l.split_whitespace().map(|t| t.parse::<usize>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) if u >= 1 && v >= 1 => {
                    g.add_arc(u - 1, v - 1)?;
                }
                _ => return Err(bad(l)),
            }
        }
        Ok(g)
    }
}
