//! Exhaustive computations over `S_n` for small `n`.

use mfo_core::{all_permutations, inversion_weight_exact, normalizing_constant_exact, MallowsParams, Permutation};
use mfo_logic::{CompiledFormula, Formula};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::LabError;

/// Largest `n` enumerated by the exact engines.
pub const MAX_EXACT_N: usize = 8;

pub(crate) fn check_exact_budget(n: usize) -> Result<(), LabError> {
    if n > MAX_EXACT_N {
        return Err(LabError::Budget { what: "n", value: n, limit: MAX_EXACT_N });
    }
    Ok(())
}

fn compile_sentence(sentence: &Formula) -> Result<CompiledFormula, LabError> {
    if !sentence.is_sentence() {
        let names: Vec<&str> = sentence.free_vars().iter().map(|v| v.name()).collect();
        return Err(LabError::NotSentence(names.join(",")));
    }
    Ok(CompiledFormula::new(sentence))
}

/// `P(Π_n ⊨ φ)` under `Mallows(n, q)`, summed over all of `S_n`.
pub fn exact_sat_prob(sentence: &Formula, n: usize, q: f64) -> Result<f64, LabError> {
    check_exact_budget(n)?;
    let params = MallowsParams::new(n, q)?;
    let compiled = compile_sentence(sentence)?;
    let mut eval = compiled.evaluator();
    let mut total = 0.0;
    for p in all_permutations(n) {
        if eval.check(&p, &[])? {
            total += params.pmf(&p)?;
        }
    }
    // rounding can push a full sum just past 1
    Ok(total.min(1.0))
}

/// [`exact_sat_prob`] in exact rational arithmetic.
pub fn exact_sat_prob_rational(sentence: &Formula, n: usize, q: &BigRational) -> Result<BigRational, LabError> {
    check_exact_budget(n)?;
    if *q <= BigRational::zero() {
        return Err(LabError::Invalid(format!("q must be positive, got {q}")));
    }
    let compiled = compile_sentence(sentence)?;
    let mut eval = compiled.evaluator();
    let mut weight = BigRational::zero();
    for p in all_permutations(n) {
        if eval.check(&p, &[])? {
            weight += inversion_weight_exact(&p, q);
        }
    }
    Ok(weight / normalizing_constant_exact(n, q))
}

/// Exact law of `f(Π_n)` as a list of `(value, probability)` pairs,
/// sorted by value.
pub fn exact_pushforward<T, F>(n: usize, q: f64, mut f: F) -> Result<Vec<(T, f64)>, LabError>
where
    T: Ord,
    F: FnMut(&Permutation) -> T,
{
    check_exact_budget(n)?;
    let params = MallowsParams::new(n, q)?;
    let mut law = std::collections::BTreeMap::new();
    for p in all_permutations(n) {
        *law.entry(f(&p)).or_insert(0.0) += params.pmf(&p)?;
    }
    Ok(law.into_iter().collect())
}

/// `½ Σ_p |P_{q1}(p) - P_{q2}(p)|` over `S_n`.
pub fn tv_exact_mallows(n: usize, q1: f64, q2: f64) -> Result<f64, LabError> {
    check_exact_budget(n)?;
    let a = MallowsParams::new(n, q1)?;
    let b = MallowsParams::new(n, q2)?;
    if q1 == q2 {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for p in all_permutations(n) {
        sum += (a.pmf(&p)? - b.pmf(&p)?).abs();
    }
    Ok(0.5 * sum)
}

/// `E|Π(1) - 1|` under `Mallows(n, q)`, by enumeration.
pub fn exact_first_displacement(n: usize, q: f64) -> Result<f64, LabError> {
    if n == 0 {
        return Err(LabError::Invalid("displacement needs n >= 1".into()));
    }
    let law = exact_pushforward(n, q, |p| p.image(1))?;
    Ok(law.iter().map(|&(v, pr)| (v - 1) as f64 * pr).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use mfo_core::rational;
    use mfo_logic::{parse, Signature};

    #[test]
    fn fixed_point_uniform_s3() {
        let f = parse("exists x. R(x,x)", Signature::Toob).unwrap();
        // derangements of 3 elements: 2 of 6
        assert!((exact_sat_prob(&f, 3, 1.0).unwrap() - 4.0 / 6.0).abs() < 1e-15);
        assert_eq!(exact_sat_prob_rational(&f, 3, &rational(1, 1)).unwrap(), rational(2, 3));
    }

    #[test]
    fn first_image_is_one() {
        let f = parse("exists x.~(exists y. (y <1 x | y <2 x))", Signature::Toto).unwrap();
        let got = exact_sat_prob(&f, 4, 0.5).unwrap();
        assert!((got - 0.5 / 0.9375).abs() < 1e-14);
        assert_eq!(exact_sat_prob_rational(&f, 4, &rational(1, 2)).unwrap(), rational(8, 15));
    }

    #[test]
    fn tautology_and_budget() {
        let f = parse("forall x. x = x", Signature::Toto).unwrap();
        assert!((exact_sat_prob(&f, 5, 0.7).unwrap() - 1.0).abs() < 1e-12);
        assert!(exact_sat_prob(&f, 9, 0.7).unwrap_err().is_budget());
        assert!(tv_exact_mallows(9, 0.5, 1.0).unwrap_err().is_budget());
        let open = parse("x = x", Signature::Toto).unwrap();
        assert!(matches!(exact_sat_prob(&open, 3, 1.0), Err(LabError::NotSentence(_))));
    }

    #[test]
    fn tv_s2_closed_form() {
        for q in [0.2, 0.5, 1.0, 3.0] {
            let expected = (q - 1.0f64).abs() / (2.0 * (1.0 + q));
            assert!((tv_exact_mallows(2, q, 1.0).unwrap() - expected).abs() < 1e-15);
        }
        assert_eq!(tv_exact_mallows(6, 0.3, 0.3).unwrap(), 0.0);
    }

    #[test]
    fn displacement_s2() {
        for q in [0.1, 0.5, 2.0] {
            assert!((exact_first_displacement(2, q).unwrap() - q / (1.0 + q)).abs() < 1e-15);
        }
    }
}
