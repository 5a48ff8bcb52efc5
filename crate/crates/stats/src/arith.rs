//! Digraphs encoding doubling, powers of two, towers and wowzers on an
//! ordered vertex set, and the parity test for `log** log** N` built on them.
//!
//! Vertex `v` (0-based) stands for the number `v + 1`.

use mfo_core::towers::{MAX_TOWER, MAX_WOWZER};
use mfo_core::{log_star_star, tower, wowzer, BigNat};

use crate::error::StatsError;
use crate::graph::DirectedGraph;

/// The four relations `R_D, R_E, R_T, R_W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithGraphs {
    pub d: DirectedGraph,
    pub e: DirectedGraph,
    pub t: DirectedGraph,
    pub w: DirectedGraph,
}

impl ArithGraphs {
    pub fn vertex_count(&self) -> usize {
        self.d.vertex_count()
    }

    pub fn graphs(&self) -> [&DirectedGraph; 4] {
        [&self.d, &self.e, &self.t, &self.w]
    }
}

/// Builds the relations on `n` vertices by the defining recursions:
/// `1 -> 2` in each, then `D: (i, j) -> (i+1, j+2)` and for the others
/// `(i, j') -> (i+1, j)` whenever `j' -> j` in the previous relation.
pub fn ground_truth_graphs(n: usize) -> ArithGraphs {
    let mut d = DirectedGraph::new(n);
    if n >= 2 {
        d.add_arc(0, 1).expect("valid");
        let mut cur = (0, 1);
        while cur.1 + 2 < n {
            cur = (cur.0 + 1, cur.1 + 2);
            d.add_arc(cur.0, cur.1).expect("valid");
        }
    }
    let e = lift(&d, n);
    let t = lift(&e, n);
    let w = lift(&t, n);
    ArithGraphs { d, e, t, w }
}

fn lift(prev: &DirectedGraph, n: usize) -> DirectedGraph {
    let mut g = DirectedGraph::new(n);
    if n < 2 {
        return g;
    }
    g.add_arc(0, 1).expect("valid");
    let mut cur = (0, 1);
    // prev is a partial function, so each step has at most one successor
    while let Some((_, next)) = prev.arcs().find(|&(a, _)| a == cur.1) {
        if cur.0 + 1 >= n {
            break;
        }
        cur = (cur.0 + 1, next);
        g.add_arc(cur.0, cur.1).expect("valid");
    }
    g
}

fn pow2(i: u64) -> Option<u64> {
    1u64.checked_shl(i as u32).filter(|_| i < 64)
}

fn tower_u64(i: u64) -> Option<u64> {
    if i as usize > MAX_TOWER {
        return None;
    }
    tower(i as usize).ok()?.to_u64()
}

fn wowzer_u64(i: u64) -> Option<u64> {
    if i as usize > MAX_WOWZER {
        return None;
    }
    wowzer(i as usize).ok()?.to_u64()
}

fn matches_function(g: &DirectedGraph, f: impl Fn(u64) -> Option<u64>) -> bool {
    let n = g.vertex_count() as u64;
    let expected = (1..=n).filter_map(|i| f(i).filter(|&j| j <= n).map(|j| ((i - 1) as usize, (j - 1) as usize)));
    let expected: Vec<(usize, usize)> = expected.collect();
    expected.len() == g.arc_count() && expected.iter().all(|&(a, b)| g.has_arc(a, b))
}

/// For all `i, j` in `[N]`: `D(i,j) ⇔ j = 2i`, `E(i,j) ⇔ j = 2^i`,
/// `T(i,j) ⇔ j = T(i)` and `W(i,j) ⇔ j = W(i)`.
pub fn arith_check(d: &DirectedGraph, e: &DirectedGraph, t: &DirectedGraph, w: &DirectedGraph) -> Result<bool, StatsError> {
    let n = d.vertex_count();
    for g in [e, t, w] {
        if g.vertex_count() != n {
            return Err(StatsError::VertexMismatch(n, g.vertex_count()));
        }
    }
    Ok(matches_function(d, |i| i.checked_mul(2))
        && matches_function(e, pow2)
        && matches_function(t, tower_u64)
        && matches_function(w, wowzer_u64))
}

/// Whether `log** log** N` is even.
pub fn even_size_oracle(n: &BigNat) -> bool {
    let inner = log_star_star(n);
    log_star_star(&BigNat::from(inner as u64)) % 2 == 0
}

/// Reads the parity of `log** log** N` off graphs that pass [`arith_check`].
///
/// Let `x` be the largest vertex with `x = W(y)` and `y = W(z)`. If `x = N`
/// the answer is whether `z` is even, otherwise whether `z + 1` is. With no
/// such `x` (only when `N <= 3`) the answer is `N <= 2`.
pub fn even_size_graph_check(g: &ArithGraphs, n: usize) -> Result<bool, StatsError> {
    if g.vertex_count() != n {
        return Err(StatsError::VertexMismatch(n, g.vertex_count()));
    }
    if !arith_check(&g.d, &g.e, &g.t, &g.w)? {
        return Err(StatsError::ArithFailed);
    }
    let found = (0..n).rev().find_map(|x| {
        g.w.arcs().filter(|a| a.1 == x).find_map(|(y, _)| g.w.arcs().find(|a| a.1 == y).map(|(z, _)| (x, z)))
    });
    let Some((x, z)) = found else {
        return Ok(n <= 2);
    };
    let z_even = g.d.arcs().any(|a| a.1 == z);
    Ok(if x + 1 == n { z_even } else { !z_even })
}

/// The directed-matching test: every arc goes from `part_b` to `part_a`,
/// every `part_b` vertex has outdegree 1, every `part_a` vertex indegree at
/// most 1, and some `part_a` vertex has indegree 0.
pub fn matching_check(g: &DirectedGraph, part_a: &[usize], part_b: &[usize]) -> Result<bool, StatsError> {
    let n = g.vertex_count();
    let mut side = vec![None; n];
    for (&v, s) in part_a.iter().map(|v| (v, 'a')).chain(part_b.iter().map(|v| (v, 'b'))) {
        if v >= n || side[v].is_some() {
            return Err(StatsError::NotPartition(n));
        }
        side[v] = Some(s);
    }
    if side.iter().any(Option::is_none) {
        return Err(StatsError::NotPartition(n));
    }
    let arcs_ok = g.arcs().all(|(u, v)| side[u] == Some('b') && side[v] == Some('a'));
    let out_ok = part_b.iter().all(|&b| g.out_degree(b) == 1);
    let in_ok = part_a.iter().all(|&a| g.in_degree(a) <= 1);
    let free_a = part_a.iter().any(|&a| g.in_degree(a) == 0);
    Ok(arcs_ok && out_ok && in_ok && free_a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_passes_checker() {
        for n in [0, 1, 2, 3, 16, 40] {
            let g = ground_truth_graphs(n);
            assert!(arith_check(&g.d, &g.e, &g.t, &g.w).unwrap(), "N = {n}");
        }
        let g = ground_truth_graphs(16);
        // 16 = T(3) = 2^4 and 4 = W(2)
        assert!(g.t.has_arc(2, 15) && g.e.has_arc(3, 15) && g.w.has_arc(1, 3));
    }

    #[test]
    fn perturbations_are_rejected() {
        let mut g = ground_truth_graphs(16);
        g.d.remove_arc(0, 1);
        assert!(!arith_check(&g.d, &g.e, &g.t, &g.w).unwrap());
        let mut g = ground_truth_graphs(16);
        g.w.add_arc(4, 2).unwrap();
        assert!(!arith_check(&g.d, &g.e, &g.t, &g.w).unwrap());
        let g = ground_truth_graphs(4);
        assert!(arith_check(&g.d, &g.e, &g.t, &DirectedGraph::new(5)).is_err());
    }

    #[test]
    fn oracle_examples() {
        let even = |n: u64| even_size_oracle(&BigNat::from(n));
        // log** 4 = 2 and log** 2 = 1
        assert!(!even(4));
        assert!(even(5));
        assert!(!even(3));
        assert!(even(65537));
        assert!(even(1) && even(2));
    }

    #[test]
    fn matching_examples() {
        // A = {0, 1, 2}, B = {3, 4}
        let a = [0, 1, 2];
        let b = [3, 4];
        let mut g = DirectedGraph::from_arcs(5, [(3, 0), (4, 1)]).unwrap();
        assert!(matching_check(&g, &a, &b).unwrap());
        g.add_arc(3, 2).unwrap();
        assert!(!matching_check(&g, &a, &b).unwrap());
        let perfect = DirectedGraph::from_arcs(4, [(2, 0), (3, 1)]).unwrap();
        assert!(!matching_check(&perfect, &[0, 1], &[2, 3]).unwrap());
        let reversed = DirectedGraph::from_arcs(5, [(0, 3), (1, 4)]).unwrap();
        assert!(!matching_check(&reversed, &a, &b).unwrap());
        assert!(matching_check(&g, &[0, 1], &b).is_err());
    }
}
