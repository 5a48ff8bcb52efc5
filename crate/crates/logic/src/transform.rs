//! Syntactic constructions: successor formulas, relativisation to a prefix,
//! relativisation to a definable witness, and reversal.

use std::collections::HashMap;

use crate::error::LogicError;
use crate::formula::{Formula, FreshVars, Rel, Var};

/// `succ_order^(k)(x, y)`: `x + k = y` for order 1, `π(x) + k = π(y)` for order 2.
pub fn succ_formula(order: u8, k: usize, x: Var, y: Var) -> Result<Formula, LogicError> {
    let mut fresh = FreshVars::new("w");
    fresh.avoid(x);
    fresh.avoid(y);
    succ_formula_with(order, k, x, y, &mut fresh)
}

/// As [`succ_formula`], drawing bound variables from `fresh`.
pub fn succ_formula_with(order: u8, k: usize, x: Var, y: Var, fresh: &mut FreshVars) -> Result<Formula, LogicError> {
    let rel = match order {
        1 => Rel::Lt1,
        2 => Rel::Lt2,
        _ => return Err(LogicError::Invalid(format!("order must be 1 or 2, got {order}"))),
    };
    if k == 0 {
        return Err(LogicError::Invalid("succ needs k >= 1".into()));
    }
    Ok(succ_rec(rel, k, x, y, fresh))
}

fn succ_rec(rel: Rel, k: usize, x: Var, y: Var, fresh: &mut FreshVars) -> Formula {
    let w = fresh.next();
    if k == 1 {
        let between = Formula::Atom(rel, x, w).and(Formula::Atom(rel, w, y));
        return Formula::Atom(rel, x, y).and(Formula::exists(w, between).not());
    }
    // succ^(k)(x,y) = ∃w (succ(w,y) ∧ succ^(k-1)(x,w))
    let last = succ_rec(rel, 1, w, y, fresh);
    let rest = succ_rec(rel, k - 1, x, w, fresh);
    Formula::exists(w, last.and(rest))
}

fn require_toto(f: &Formula, what: &'static str) -> Result<(), LogicError> {
    if f.relations().contains(&Rel::R) {
        return Err(LogicError::TotoOnly(what));
    }
    Ok(())
}

/// `φ^≤(y, x⃗)`: quantifiers guarded by `z ≤1 y`, so that for `j = y` and
/// `x⃗ ⊆ [j]` the result holds on `π` iff `φ` holds on `rk(π(1..j))`.
///
/// `y` must not occur in `f`.
pub fn relativize_with(f: &Formula, y: Var) -> Result<Formula, LogicError> {
    require_toto(f, "relativize")?;
    if f.all_vars().contains(&y) {
        return Err(LogicError::Invalid(format!("bound variable {y} already occurs in the formula")));
    }
    Ok(relativize_rec(f, y))
}

/// [`relativize_with`] using a fresh variable; returns `(φ^≤, y)`.
pub fn relativize(f: &Formula) -> Result<(Formula, Var), LogicError> {
    let y = FreshVars::avoiding("y", [f]).next();
    Ok((relativize_with(f, y)?, y))
}

fn relativize_rec(f: &Formula, y: Var) -> Formula {
    match f {
        Formula::Atom(..) => f.clone(),
        Formula::Not(a) => relativize_rec(a, y).not(),
        Formula::And(a, b) => relativize_rec(a, y).and(relativize_rec(b, y)),
        Formula::Or(a, b) => relativize_rec(a, y).or(relativize_rec(b, y)),
        Formula::Implies(a, b) => relativize_rec(a, y).implies(relativize_rec(b, y)),
        Formula::Iff(a, b) => relativize_rec(a, y).iff(relativize_rec(b, y)),
        Formula::Exists(x, a) => Formula::exists(*x, Formula::le1(*x, y).and(relativize_rec(a, y))),
        Formula::ForAll(x, a) => Formula::forall(*x, Formula::le1(*x, y).implies(relativize_rec(a, y))),
    }
}

/// `∃z (ξ(z) ∧ ⋀ x_l ≤1 z ∧ φ^≤(z, x⃗))`.
///
/// When `ξ` has a unique witness `j`, the result holds under `x⃗ ↦ i⃗` iff
/// `i⃗ ⊆ [j]` and `φ` holds of `rk(π(1..j))` under `i⃗`.
pub fn relativize_to_witness(xi: &Formula, f: &Formula) -> Result<Formula, LogicError> {
    require_toto(f, "relativize_to_witness")?;
    let xi_free = xi.free_vars();
    if xi_free.len() != 1 {
        return Err(LogicError::Invalid(format!("witness formula needs one free variable, has {}", xi_free.len())));
    }
    let mut fresh = FreshVars::avoiding("z", [xi, f]);
    let z = fresh.next();
    let xi_z = xi.substitute(&HashMap::from([(xi_free[0], z)]), &mut fresh);
    let mut parts = vec![xi_z];
    parts.extend(f.free_vars().into_iter().map(|x| Formula::le1(x, z)));
    parts.push(relativize_rec(f, z));
    Ok(Formula::exists(z, Formula::conj(parts).expect("nonempty")))
}

/// `φ^reverse`: swaps the arguments of every `<2` atom, so that
/// `π |= φ` iff `r_n ∘ π |= φ^reverse`.
pub fn reverse_formula(f: &Formula) -> Result<Formula, LogicError> {
    require_toto(f, "reverse_formula")?;
    Ok(reverse_rec(f))
}

fn reverse_rec(f: &Formula) -> Formula {
    match f {
        Formula::Atom(Rel::Lt2, x, y) => Formula::Atom(Rel::Lt2, *y, *x),
        Formula::Atom(..) => f.clone(),
        Formula::Not(a) => reverse_rec(a).not(),
        Formula::And(a, b) => reverse_rec(a).and(reverse_rec(b)),
        Formula::Or(a, b) => reverse_rec(a).or(reverse_rec(b)),
        Formula::Implies(a, b) => reverse_rec(a).implies(reverse_rec(b)),
        Formula::Iff(a, b) => reverse_rec(a).iff(reverse_rec(b)),
        Formula::Exists(x, a) => Formula::exists(*x, reverse_rec(a)),
        Formula::ForAll(x, a) => Formula::forall(*x, reverse_rec(a)),
    }
}
