//! Random formulas for property tests and experiment pools.

use rand::Rng;

use crate::formula::{Formula, Rel, Signature, Var};

const BOUND_NAMES: [&str; 4] = ["a", "b", "c", "d"];

/// A random formula of quantifier depth at most `max_depth` whose free
/// variables are among `free`. With `free` empty the result is a sentence and
/// `max_depth` must be at least 1.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, sig: Signature, max_depth: usize, free: &[Var]) -> Formula {
    assert!(max_depth > 0 || !free.is_empty(), "a sentence needs a quantifier");
    let mut scope = free.to_vec();
    gen(rng, sig, max_depth, &mut scope, 4)
}

pub fn random_sentence<R: Rng + ?Sized>(rng: &mut R, sig: Signature, max_depth: usize) -> Formula {
    random_formula(rng, sig, max_depth, &[])
}

fn gen<R: Rng + ?Sized>(rng: &mut R, sig: Signature, depth: usize, scope: &mut Vec<Var>, size: usize) -> Formula {
    if scope.is_empty() {
        return quantified(rng, sig, depth, scope, size);
    }
    let roll = rng.gen_range(0..100);
    if size == 0 || roll < 30 {
        return atom(rng, sig, scope);
    }
    if depth > 0 && roll < 60 {
        return quantified(rng, sig, depth, scope, size - 1);
    }
    if roll < 70 {
        return gen(rng, sig, depth, scope, size - 1).not();
    }
    let a = gen(rng, sig, depth, scope, size / 2);
    let b = gen(rng, sig, depth, scope, size / 2);
    match rng.gen_range(0..4) {
        0 => a.and(b),
        1 => a.or(b),
        2 => a.implies(b),
        _ => a.iff(b),
    }
}

fn quantified<R: Rng + ?Sized>(rng: &mut R, sig: Signature, depth: usize, scope: &mut Vec<Var>, size: usize) -> Formula {
    let v = Var::new(BOUND_NAMES[rng.gen_range(0..BOUND_NAMES.len())]);
    scope.push(v);
    let body = gen(rng, sig, depth - 1, scope, size);
    scope.pop();
    if rng.gen_bool(0.5) {
        Formula::exists(v, body)
    } else {
        Formula::forall(v, body)
    }
}

fn atom<R: Rng + ?Sized>(rng: &mut R, sig: Signature, scope: &[Var]) -> Formula {
    let x = scope[rng.gen_range(0..scope.len())];
    let y = scope[rng.gen_range(0..scope.len())];
    let rel = match (sig, rng.gen_range(0..5)) {
        (_, 0) => Rel::Eq,
        (Signature::Toob, _) => Rel::R,
        (Signature::Toto, k) if k % 2 == 1 => Rel::Lt1,
        _ => Rel::Lt2,
    };
    Formula::Atom(rel, x, y)
}
