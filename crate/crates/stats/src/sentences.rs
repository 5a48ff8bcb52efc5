//! TOTO formulas for the statistics of this crate and the sentences built
//! from them.
//!
//! Intervals are pairs of variables `(a, b)` meaning `{a, .., b}`; a pair
//! with `a > b` is empty. A vertex of `I_k(I)` is named by the point of
//! `W_k(I)` just left of it.

use mfo_logic::{relativize_to_witness, reverse_formula, succ_formula_with, Formula, FreshVars, Var};

/// A set of positions described by a formula in one position variable.
#[derive(Debug, Clone)]
pub enum Region {
    /// `{a, .., b}`.
    Interval(Var, Var),
    /// `{1, .., b}`.
    Prefix(Var),
    /// The gap of `I_k(base)` to the right of the `W_k(base)` point `u`.
    Gap { base: Box<Region>, k: usize, u: Var },
}

impl Region {
    pub fn interval(a: impl Into<Var>, b: impl Into<Var>) -> Region {
        Region::Interval(a.into(), b.into())
    }

    pub fn gap(&self, k: usize, u: Var) -> Region {
        Region::Gap { base: Box::new(self.clone()), k, u }
    }
}

/// The vertex set of `(I_k(R_1), .., I_k(R_m))`.
#[derive(Debug, Clone)]
pub struct VertexSet {
    pub parts: Vec<Region>,
    pub k: usize,
}

/// Builds formulas with bound variables drawn from a private supply, so
/// that caller-chosen free variables are never captured.
pub struct Builder {
    fresh: FreshVars,
}

impl Default for Builder {
    fn default() -> Builder {
        Builder::new()
    }
}

impl Builder {
    pub fn new() -> Builder {
        Builder { fresh: FreshVars::new("v") }
    }

    pub fn var(&mut self) -> Var {
        self.fresh.next()
    }

    pub fn succ1(&mut self, k: usize, x: Var, y: Var) -> Formula {
        succ_formula_with(1, k, x, y, &mut self.fresh).expect("k >= 1")
    }

    pub fn succ2(&mut self, k: usize, x: Var, y: Var) -> Formula {
        succ_formula_with(2, k, x, y, &mut self.fresh).expect("k >= 1")
    }

    /// `x` lies in `r`.
    pub fn member(&mut self, r: &Region, x: Var) -> Formula {
        match r {
            Region::Interval(a, b) => Formula::le1(*a, x).and(Formula::le1(x, *b)),
            Region::Prefix(b) => Formula::le1(x, *b),
            Region::Gap { base, k, u } => {
                let t = self.var();
                let blocked = Formula::lt1(*u, t).and(Formula::le1(t, x)).and(self.in_w(*k, base, t));
                let s = self.var();
                let closing = Formula::lt1(x, s).and(self.in_w(*k, base, s));
                Formula::conj([Formula::lt1(*u, x), Formula::exists(t, blocked).not(), Formula::exists(s, closing)])
                    .expect("nonempty")
            }
        }
    }

    /// `i` in `W_k(r)`: `i` and the positions holding `p(i)+1, .., p(i)+k-1`
    /// all lie in `r`.
    pub fn in_w(&mut self, k: usize, r: &Region, i: Var) -> Formula {
        let mut parts = vec![self.member(r, i)];
        for j in 1..k {
            let c = self.var();
            let body = self.succ2(j, i, c).and(self.member(r, c));
            parts.push(Formula::exists(c, body));
        }
        Formula::conj(parts).expect("nonempty")
    }

    /// `u` names a vertex of `I_k(r)`: a point of `W_k(r)` with another to its right.
    pub fn gap_start(&mut self, k: usize, r: &Region, u: Var) -> Formula {
        let t = self.var();
        let right = Formula::lt1(u, t).and(self.in_w(k, r, t));
        self.in_w(k, r, u).and(Formula::exists(t, right))
    }

    pub fn vertex(&mut self, vs: &VertexSet, u: Var) -> Formula {
        let parts: Vec<Formula> = vs.parts.iter().map(|r| self.gap_start(vs.k, r, u)).collect();
        Formula::disj(parts).unwrap_or_else(|| Formula::lt1(u, u))
    }

    /// `x` lies in the vertex interval named by `u`.
    pub fn in_vertex(&mut self, vs: &VertexSet, u: Var, x: Var) -> Formula {
        let parts: Vec<Formula> = vs
            .parts
            .iter()
            .map(|r| {
                let g = r.gap(vs.k, u);
                self.gap_start(vs.k, r, u).and(self.member(&g, x))
            })
            .collect();
        Formula::disj(parts).unwrap_or_else(|| Formula::lt1(u, u))
    }

    /// `z = y(I_u, J)`.
    pub fn y_of(&mut self, vs: &VertexSet, u: Var, j: &Region, z: Var) -> Formula {
        let x = self.var();
        let (x2, z2) = (self.var(), self.var());
        let earlier_body = self.succ2(1, x2, z2).and(self.member(j, z2));
        let earlier = Formula::conj([self.in_vertex(vs, u, x2), Formula::lt1(x2, x), Formula::exists(z2, earlier_body)])
            .expect("nonempty");
        let body = Formula::conj([
            self.in_vertex(vs, u, x),
            self.succ2(1, x, z),
            self.member(j, z),
            Formula::exists(x2, earlier).not(),
        ])
        .expect("nonempty");
        Formula::exists(x, body)
    }

    /// `e(Ical; J) = (u1, u2)` with `u1 != u2`.
    pub fn edge(&mut self, vs: &VertexSet, j: &Region, u1: Var, u2: Var) -> Formula {
        let (u, z) = (self.var(), self.var());
        let all_defined = Formula::forall(u, self.vertex(vs, u).implies(Formula::exists(z, self.y_of(vs, u, j, z))));
        let extreme = |b: &mut Builder, w: Var, lowest: bool| {
            let (zw, u, z) = (b.var(), b.var(), b.var());
            let cmp = if lowest { Formula::le1(zw, z) } else { Formula::le1(z, zw) };
            let others = Formula::forall_all(&[u, z], b.vertex(vs, u).and(b.y_of(vs, u, j, z)).implies(cmp));
            Formula::exists(zw, b.y_of(vs, w, j, zw).and(others))
        };
        let lo = extreme(self, u1, true);
        let hi = extreme(self, u2, false);
        Formula::conj([all_defined, self.vertex(vs, u1), self.vertex(vs, u2), Formula::eq(u1, u2).not(), lo, hi])
            .expect("nonempty")
    }

    /// An arc of `H(Ical; I_k(J))`.
    pub fn arc(&mut self, vs: &VertexSet, j: &Region, u1: Var, u2: Var) -> Formula {
        let t = self.var();
        let jt = j.gap(vs.k, t);
        Formula::exists(t, self.gap_start(vs.k, j, t).and(self.edge(vs, &jt, u1, u2)))
    }

    fn first(&mut self, vs: &VertexSet, u: Var) -> Formula {
        let w = self.var();
        let before = self.vertex(vs, w).and(Formula::lt1(w, u));
        self.vertex(vs, u).and(Formula::exists(w, before).not())
    }

    fn last(&mut self, vs: &VertexSet, u: Var) -> Formula {
        let w = self.var();
        let after = self.vertex(vs, w).and(Formula::lt1(u, w));
        self.vertex(vs, u).and(Formula::exists(w, after).not())
    }

    /// Consecutive vertices in position order.
    fn next_vertex(&mut self, vs: &VertexSet, u: Var, v: Var) -> Formula {
        let w = self.var();
        let between = Formula::conj([self.vertex(vs, w), Formula::lt1(u, w), Formula::lt1(w, v)]).expect("nonempty");
        Formula::conj([self.vertex(vs, u), self.vertex(vs, v), Formula::lt1(u, v), Formula::exists(w, between).not()])
            .expect("nonempty")
    }

    fn second(&mut self, vs: &VertexSet, v: Var) -> Formula {
        let u = self.var();
        Formula::exists(u, self.first(vs, u).and(self.next_vertex(vs, u, v)))
    }

    /// `R(1, j) ↔ j = 2`, and for `i != 1`, `R(i, j) ↔ ∃i', j' (i' + 1 = i ∧
    /// step(j', j) ∧ R(i', j'))`, with `step` two successor steps when
    /// `prev` is `None` and an arc of `prev` otherwise.
    fn recursion(&mut self, vs: &VertexSet, rel: &Region, prev: Option<&Region>) -> Formula {
        let (i, j, i2, j2) = (self.var(), self.var(), self.var(), self.var());
        let step = match prev {
            None => {
                let m = self.var();
                let two = self.next_vertex(vs, j2, m).and(self.next_vertex(vs, m, j));
                Formula::exists(m, two)
            }
            Some(p) => self.arc(vs, p, j2, j),
        };
        let back = Formula::conj([self.next_vertex(vs, i2, i), step, self.arc(vs, rel, i2, j2)]).expect("nonempty");
        let base = self.first(vs, i).implies(self.arc(vs, rel, i, j).iff(self.second(vs, j)));
        let rec = self.arc(vs, rel, i, j).and(self.first(vs, i).not()).iff(Formula::exists_all(&[i2, j2], back));
        let guard = self.vertex(vs, i).and(self.vertex(vs, j));
        Formula::forall_all(&[i, j], guard.implies(base.and(rec)))
    }

    /// The graphs induced on `vs` by `I_k(J_D), .., I_k(J_W)` encode doubling,
    /// powers of two, towers and wowzers.
    pub fn arith(&mut self, vs: &VertexSet, js: &[Region; 4]) -> Formula {
        let d = self.recursion(vs, &js[0], None);
        let e = self.recursion(vs, &js[1], Some(&js[0]));
        let t = self.recursion(vs, &js[2], Some(&js[1]));
        let w = self.recursion(vs, &js[3], Some(&js[2]));
        Formula::conj([d, e, t, w]).expect("nonempty")
    }

    /// Parity of `log** log** |vs|`, read off graphs satisfying [`Builder::arith`].
    pub fn even_size(&mut self, vs: &VertexSet, js: &[Region; 4]) -> Formula {
        let (jd, jw) = (&js[0], &js[3]);
        let triple = |b: &mut Builder, x: Var| {
            let (y, z) = (b.var(), b.var());
            let body = b.arc(vs, jw, y, x).and(b.arc(vs, jw, z, y));
            (y, z, body)
        };
        let x = self.var();
        let (y, z, top) = triple(self, x);
        let x2 = self.var();
        let (y2, z2, other) = triple(self, x2);
        let higher = Formula::conj([self.vertex(vs, x2), Formula::lt1(x, x2), Formula::exists_all(&[y2, z2], other)])
            .expect("nonempty");
        let w = self.var();
        let z_even = Formula::exists(w, self.arc(vs, jd, w, z));
        let last = self.last(vs, x);
        let answer = last.clone().and(z_even.clone()).or(last.not().and(z_even.not()));
        let found = Formula::conj([self.vertex(vs, x), Formula::exists(x2, higher).not(), Formula::exists_all(&[y, z], top.and(answer))])
            .expect("nonempty");
        let x3 = self.var();
        let (y3, z3, any) = triple(self, x3);
        let none = Formula::exists(x3, self.vertex(vs, x3).and(Formula::exists_all(&[y3, z3], any))).not();
        let (a, b, c) = (self.var(), self.var(), self.var());
        let three = Formula::conj([self.vertex(vs, a), self.vertex(vs, b), self.vertex(vs, c), Formula::lt1(a, b), Formula::lt1(b, c)])
            .expect("nonempty");
        Formula::exists(x, found).or(none.and(Formula::exists_all(&[a, b, c], three).not()))
    }

    /// `|I_k(I)| > |I_k(I')|`, witnessed by an interval `J` whose graph on
    /// `(I_k(I), I_k(I'))` is a matching from `I_k(I')` into `I_k(I)` leaving
    /// some vertex of `I_k(I)` uncovered.
    pub fn bigger(&mut self, k: usize, i: &Region, i2: &Region) -> Formula {
        let vs = VertexSet { parts: vec![i.clone(), i2.clone()], k };
        let (a, b) = (self.var(), self.var());
        let j = Region::Interval(a, b);
        let (u, v, v2) = (self.var(), self.var(), self.var());
        let out_one = {
            let unique = self.arc(&vs, &j, u, v).and(self.arc(&vs, &j, u, v2)).implies(Formula::eq(v, v2));
            let some = Formula::exists(v, self.arc(&vs, &j, u, v));
            Formula::forall(u, self.gap_start(k, i2, u).implies(some.and(Formula::forall_all(&[v, v2], unique))))
        };
        let in_le_one = {
            let unique = self.arc(&vs, &j, v, u).and(self.arc(&vs, &j, v2, u)).implies(Formula::eq(v, v2));
            Formula::forall(u, self.gap_start(k, i, u).implies(Formula::forall_all(&[v, v2], unique)))
        };
        let uncovered = {
            let hit = Formula::exists(v, self.arc(&vs, &j, v, u));
            Formula::exists(u, self.gap_start(k, i, u).and(hit.not()))
        };
        let oriented = {
            let ends = self.gap_start(k, i2, u).and(self.gap_start(k, i, v));
            Formula::forall_all(&[u, v], self.arc(&vs, &j, u, v).implies(ends))
        };
        let all = Formula::conj([out_one, in_le_one, uncovered, oriented]).expect("nonempty");
        Formula::exists_all(&[a, b], all)
    }

    /// `w_{k+1}(I) = 0` and every interval of `I_k(I)` has `w_{k-1} > 0`.
    pub fn admissible(&mut self, k: usize, i: &Region) -> Formula {
        let x = self.var();
        let none_longer = Formula::exists(x, self.in_w(k + 1, i, x)).not();
        let (u, y) = (self.var(), self.var());
        let gap = i.gap(k, u);
        let inner = Formula::exists(y, self.in_w(k - 1, &gap, y));
        none_longer.and(Formula::forall(u, self.gap_start(k, i, u).implies(inner)))
    }

    fn structure(&mut self, k: usize, vars: &[Var; 10], even: bool) -> Formula {
        let i = Region::Interval(vars[0], vars[1]);
        let js = [
            Region::Interval(vars[2], vars[3]),
            Region::Interval(vars[4], vars[5]),
            Region::Interval(vars[6], vars[7]),
            Region::Interval(vars[8], vars[9]),
        ];
        let vs = VertexSet { parts: vec![i.clone()], k };
        let parity = self.even_size(&vs, &js);
        let parity = if even { parity } else { parity.not() };
        Formula::conj([self.admissible(k, &i), self.arith(&vs, &js), parity]).expect("nonempty")
    }

    /// `∃x1 y1 .. x5 y5 (φ0 ∧ ∀x6 y6 .. x10 y10 (φ1 → Bigger(I, I')))`.
    pub fn oscillating(&mut self, k: usize) -> Formula {
        let outer: [Var; 10] = std::array::from_fn(|_| self.var());
        let inner: [Var; 10] = std::array::from_fn(|_| self.var());
        let phi0 = self.structure(k, &outer, true);
        let phi1 = self.structure(k, &inner, false);
        let phi2 = self.bigger(k, &Region::Interval(outer[0], outer[1]), &Region::Interval(inner[0], inner[1]));
        Formula::exists_all(&outer, phi0.and(Formula::forall_all(&inner, phi1.implies(phi2))))
    }
}

/// `ζ(i, a, b)`: `i ∈ W_k({a, .., b})`. Free variables `i`, `a`, `b`.
pub fn build_zeta(k: usize) -> Formula {
    assert!(k >= 1, "k must be at least 1");
    Builder::new().in_w(k, &Region::interval("a", "b"), Var::new("i"))
}

/// `ξ(x)`, true exactly at `x = J₁`.
pub fn build_j1_witness() -> Formula {
    let mut b = Builder::new();
    let x = Var::new("x");
    let (z, w, z2) = (b.var(), b.var(), b.var());
    let here = Formula::exists(z, b.in_w(2, &Region::Prefix(x), z));
    let earlier = Formula::exists(z2, b.in_w(2, &Region::Prefix(w), z2));
    here.and(Formula::forall(w, Formula::lt1(w, x).implies(earlier.not())))
}

/// `ψ(x) = ∃z (ξ(z) ∧ x ≤1 z ∧ ξ^≤(z, x))`, true exactly at `x = K₁`.
pub fn build_k1_witness() -> Formula {
    let xi = build_j1_witness();
    relativize_to_witness(&xi, &xi).expect("TOTO formula")
}

/// `ρ`: `p(1) > p(n)`.
pub fn build_rho() -> Formula {
    let mut b = Builder::new();
    let (x, y, w) = (Var::new("x"), Var::new("y"), Var::new("w"));
    let ends = b.succ1(1, w, x).or(b.succ1(1, y, w));
    Formula::exists_all(&[x, y], Formula::exists(w, ends).not().and(Formula::lt2(y, x)))
}

/// `λ(y)`: `p(y + 1) = 1`.
pub fn build_lambda() -> Formula {
    let mut b = Builder::new();
    let (y, z, w) = (Var::new("y"), Var::new("z"), Var::new("w"));
    Formula::exists(z, b.succ1(1, y, z).and(Formula::exists(w, Formula::lt2(w, z)).not()))
}

/// The parity sentence on interval-induced graphs.
pub fn build_oscillating(k: usize) -> Formula {
    assert!(k >= 2, "k must be at least 2");
    Builder::new().oscillating(k)
}

/// `ω = ∃z (ψ(z) ∧ φ^≤(z))` with `φ` from [`build_oscillating`].
pub fn build_omega(k: usize) -> Formula {
    relativize_to_witness(&build_k1_witness(), &build_oscillating(k)).expect("TOTO formula")
}

/// `ξ₁ = ∃z (λ(z) ∧ ω^≤(z))`.
pub fn build_xi1(k: usize) -> Formula {
    relativize_to_witness(&build_lambda(), &build_omega(k)).expect("TOTO formula")
}

/// `ξ₂ = ξ₁^reverse`.
pub fn build_xi2(k: usize) -> Formula {
    reverse_formula(&build_xi1(k)).expect("TOTO formula")
}

/// `(ρ → ξ₂) ∧ (¬ρ → ξ₁)`.
pub fn build_universal_phi(k: usize) -> Formula {
    let xi1 = build_xi1(k);
    let xi2 = reverse_formula(&xi1).expect("TOTO formula");
    let rho = build_rho();
    rho.clone().implies(xi2).and(rho.not().implies(xi1))
}
