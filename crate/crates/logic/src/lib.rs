//! First-order logic over permutations.
//!
//! Two vocabularies: TOOB has one binary relation `R(x, y) ⇔ π(x) = y`; TOTO
//! has two orders, `x <1 y ⇔ x < y` on positions and `x <2 y ⇔ π(x) < π(y)` on
//! images. Both have equality.

pub mod ef;
pub mod error;
pub mod eval;
pub mod formula;
pub mod random;
pub mod syntax;
pub mod transform;

pub use ef::{ef_equivalent, ef_type, EfType};
pub use error::LogicError;
pub use eval::{evaluate, holds, witnesses, Assignment, CompiledFormula, Evaluator};
pub use formula::{Formula, FreshVars, Rel, Signature, Var};
pub use syntax::{parse, parse_any, render};
pub use transform::{relativize, relativize_to_witness, relativize_with, reverse_formula, succ_formula, succ_formula_with};
