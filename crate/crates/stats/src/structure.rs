//! Interval statistics on a fixed permutation: `W_k`, `S(I, J)`, the
//! `x`/`y` pair, induced arcs and graphs, minimal intervals, `J₁` and `K₁`.
//!
//! Position sets are slices of 1-based positions.

use std::collections::BTreeSet;

use mfo_core::Permutation;

use crate::arith::{matching_check, ArithGraphs};
use crate::error::StatsError;
use crate::graph::DirectedGraph;
use crate::interval::{Interval, IntervalSeq};

fn check_positions(p: &Permutation, set: &[usize]) -> Result<(), StatsError> {
    let n = p.len();
    match set.iter().find(|&&x| x == 0 || x > n) {
        Some(&pos) => Err(StatsError::OutOfRange { pos, n }),
        None => Ok(()),
    }
}

fn check_disjoint(a: &[usize], b: &[usize]) -> Result<(), StatsError> {
    let b: BTreeSet<usize> = b.iter().copied().collect();
    match a.iter().filter(|x| b.contains(x)).min() {
        Some(&x) => Err(StatsError::Overlap(x)),
        None => Ok(()),
    }
}

pub fn positions(iv: &Interval) -> Vec<usize> {
    iv.positions().collect()
}

/// `W_k(A) = { i : p(i), .., p(i)+k-1 all lie in p[A] }`, ascending.
pub fn w_set(p: &Permutation, a: &[usize], k: usize) -> Result<Vec<usize>, StatsError> {
    if k == 0 {
        return Err(StatsError::Invalid("k must be at least 1".into()));
    }
    check_positions(p, a)?;
    Ok(w_set_unchecked(p, a, k))
}

pub(crate) fn w_set_unchecked(p: &Permutation, a: &[usize], k: usize) -> Vec<usize> {
    let n = p.len();
    // hit[v] for values v in p[A]
    let mut hit = vec![false; n + 2];
    for &x in a {
        hit[p.image(x)] = true;
    }
    let mut out: Vec<usize> = a
        .iter()
        .copied()
        .filter(|&i| {
            let v = p.image(i);
            v + k - 1 <= n && (v..v + k).all(|w| hit[w])
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn w_count(p: &Permutation, a: &[usize], k: usize) -> Result<usize, StatsError> {
    w_set(p, a, k).map(|w| w.len())
}

/// `S(I, J) = { p(x) : x in I, p(x)+1 in p(J) }`.
pub fn s_set(p: &Permutation, i: &[usize], j: &[usize]) -> Result<BTreeSet<usize>, StatsError> {
    check_positions(p, i)?;
    check_positions(p, j)?;
    check_disjoint(i, j)?;
    Ok(s_set_unchecked(p, i, j))
}

fn s_set_unchecked(p: &Permutation, i: &[usize], j: &[usize]) -> BTreeSet<usize> {
    let mut in_j = vec![false; p.len() + 2];
    for &y in j {
        in_j[p.image(y)] = true;
    }
    i.iter().map(|&x| p.image(x)).filter(|&v| in_j[v + 1]).collect()
}

/// `(x(I, J), y(I, J))`, or `None` when `S(I, J)` is empty.
pub fn xy_pair(p: &Permutation, i: &[usize], j: &[usize]) -> Result<Option<(usize, usize)>, StatsError> {
    check_positions(p, i)?;
    check_positions(p, j)?;
    check_disjoint(i, j)?;
    Ok(xy_pair_unchecked(p, i, j))
}

pub(crate) fn xy_pair_unchecked(p: &Permutation, i: &[usize], j: &[usize]) -> Option<(usize, usize)> {
    let inv = p.inverse();
    let s = s_set_unchecked(p, i, j);
    let x = i.iter().copied().filter(|&x| s.contains(&p.image(x))).min()?;
    Some((x, inv.image(p.image(x) + 1)))
}

fn check_seq_against(p: &Permutation, ical: &IntervalSeq, j: &Interval) -> Result<(), StatsError> {
    j.check_within(p.len())?;
    for iv in ical.iter() {
        iv.check_within(p.len())?;
        if iv.overlaps(j) {
            let (a, b) = (iv.bounds().unwrap(), j.bounds().unwrap());
            return Err(StatsError::Overlap(a.0.max(b.0)));
        }
    }
    Ok(())
}

/// `e(Ical; J)` as a pair of indices into `ical`. `None` when some
/// `S(I_l, J)` is empty or `ical` is empty. A single vertex yields `(0, 0)`.
pub fn induced_edge(p: &Permutation, ical: &IntervalSeq, j: &Interval) -> Result<Option<(usize, usize)>, StatsError> {
    check_seq_against(p, ical, j)?;
    Ok(induced_edge_unchecked(p, ical.items(), j))
}

pub(crate) fn induced_edge_unchecked(p: &Permutation, ical: &[Interval], j: &Interval) -> Option<(usize, usize)> {
    let jp = positions(j);
    let mut ys = Vec::with_capacity(ical.len());
    for iv in ical {
        ys.push(xy_pair_unchecked(p, &positions(iv), &jp)?.1);
    }
    let lo = (0..ys.len()).min_by_key(|&l| ys[l])?;
    let hi = (0..ys.len()).max_by_key(|&l| ys[l])?;
    Some((lo, hi))
}

/// `H(Ical; Jcal)`: vertices are the entries of `ical`, arcs the defined
/// `e(Ical; J_l)`. Loops from a one-vertex `ical` are dropped.
pub fn induced_graph(p: &Permutation, ical: &IntervalSeq, jcal: &IntervalSeq) -> Result<DirectedGraph, StatsError> {
    for j in jcal.iter() {
        check_seq_against(p, ical, j)?;
    }
    Ok(induced_graph_unchecked(p, ical.items(), jcal.items()))
}

pub(crate) fn induced_graph_unchecked(p: &Permutation, ical: &[Interval], jcal: &[Interval]) -> DirectedGraph {
    let mut g = DirectedGraph::new(ical.len());
    for j in jcal {
        if let Some((u, v)) = induced_edge_unchecked(p, ical, j) {
            if u != v {
                g.add_arc(u, v).expect("valid arc");
            }
        }
    }
    g
}

/// `I_k(J)`: the gaps strictly between consecutive points of `W_k(J)`.
/// Adjacent points leave an explicit empty interval.
pub fn minimal_intervals(p: &Permutation, j: &Interval, k: usize) -> Result<IntervalSeq, StatsError> {
    if k == 0 {
        return Err(StatsError::Invalid("k must be at least 1".into()));
    }
    j.check_within(p.len())?;
    Ok(IntervalSeq::new(minimal_intervals_unchecked(p, j, k)).expect("gaps are disjoint"))
}

pub(crate) fn minimal_intervals_unchecked(p: &Permutation, j: &Interval, k: usize) -> Vec<Interval> {
    let w = w_set_unchecked(p, &positions(j), k);
    w.windows(2).map(|t| Interval::span(t[0] + 1, t[1] - 1)).collect()
}

/// Smallest `j` with `w_2([j]) >= 1`; `None` stands for infinity.
pub fn j1(p: &Permutation) -> Option<usize> {
    let inv = p.inverse();
    (1..p.len()).map(|m| inv.image(m).max(inv.image(m + 1))).min()
}

/// `J₁` of the rank of the first `J₁(p)` images.
pub fn k1(p: &Permutation) -> Result<usize, StatsError> {
    let j = j1(p).ok_or_else(|| StatsError::Undefined(format!("K1 needs n >= 2, got n = {}", p.len())))?;
    Ok(j1(&p.prefix_rank(j)?).expect("a prefix of length J1 contains a consecutive pair"))
}

/// `w_{k+1}(I) = 0` and `w_{k-1}(I_l) > 0` for every `I_l` in `I_k(I)`.
pub fn admissible(p: &Permutation, i: &Interval, k: usize) -> Result<bool, StatsError> {
    if k < 2 {
        return Err(StatsError::Invalid("admissibility needs k >= 2".into()));
    }
    i.check_within(p.len())?;
    let none_longer = w_set_unchecked(p, &positions(i), k + 1).is_empty();
    Ok(none_longer
        && minimal_intervals_unchecked(p, i, k).iter().all(|g| !w_set_unchecked(p, &positions(g), k - 1).is_empty()))
}

/// The graphs `H(I_k(I); I_k(J))` for `J = J_D, J_E, J_T, J_W`.
pub fn arith_graphs_on(p: &Permutation, i: &Interval, js: &[Interval; 4], k: usize) -> Result<ArithGraphs, StatsError> {
    i.check_within(p.len())?;
    let ical = minimal_intervals_unchecked(p, i, k);
    let mut gs = Vec::with_capacity(4);
    for j in js {
        j.check_within(p.len())?;
        gs.push(induced_graph_unchecked(p, &ical, &minimal_intervals_unchecked(p, j, k)));
    }
    let [d, e, t, w]: [DirectedGraph; 4] = gs.try_into().expect("four graphs");
    Ok(ArithGraphs { d, e, t, w })
}

/// `H((I_k(I), I_k(I')); I_k(J))` with the vertex indices of each side.
pub fn bigger_graph(
    p: &Permutation,
    i: &Interval,
    i2: &Interval,
    j: &Interval,
    k: usize,
) -> Result<(DirectedGraph, Vec<usize>, Vec<usize>), StatsError> {
    for iv in [i, i2, j] {
        iv.check_within(p.len())?;
    }
    if i.overlaps(i2) {
        return Err(StatsError::Overlap(i.bounds().unwrap().0.max(i2.bounds().unwrap().0)));
    }
    let mut ical = minimal_intervals_unchecked(p, i, k);
    let n_a = ical.len();
    ical.extend(minimal_intervals_unchecked(p, i2, k));
    let g = induced_graph_unchecked(p, &ical, &minimal_intervals_unchecked(p, j, k));
    let m = ical.len();
    Ok((g, (0..n_a).collect(), (n_a..m).collect()))
}

/// Some interval `J` (possibly empty) whose graph on `(I_k(I), I_k(I'))`
/// passes [`matching_check`] with `A = I_k(I)`, `B = I_k(I')`.
pub fn bigger_witness(p: &Permutation, i: &Interval, i2: &Interval, k: usize) -> Result<Option<Interval>, StatsError> {
    let n = p.len();
    let candidates = std::iter::once(Interval::Empty)
        .chain((1..=n).flat_map(|a| (a..=n).map(move |b| Interval::Range { lo: a, hi: b })));
    for j in candidates {
        let (g, a, b) = bigger_graph(p, i, i2, &j, k)?;
        if matching_check(&g, &a, &b)? {
            return Ok(Some(j));
        }
    }
    Ok(None)
}
