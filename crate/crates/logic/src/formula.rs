//! Formulas of the permutation languages TOOB `{=, R}` and TOTO `{=, <1, <2}`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::error::LogicError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Signature {
    Toob,
    Toto,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Signature::Toob => "TOOB",
            Signature::Toto => "TOTO",
        })
    }
}

impl std::str::FromStr for Signature {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "toob" => Ok(Signature::Toob),
            "toto" => Ok(Signature::Toto),
            _ => Err(LogicError::Invalid(format!("unknown signature {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Eq,
    /// `R(x, y)` iff `π(x) = y`.
    R,
    /// `x <1 y` iff `x < y`.
    Lt1,
    /// `x <2 y` iff `π(x) < π(y)`.
    Lt2,
}

impl Rel {
    pub fn in_signature(self, sig: Signature) -> bool {
        match self {
            Rel::Eq => true,
            Rel::R => sig == Signature::Toob,
            Rel::Lt1 | Rel::Lt2 => sig == Signature::Toto,
        }
    }
}

struct Interner {
    names: Vec<&'static str>,
    ids: HashMap<&'static str, u32>,
}

fn interner() -> &'static Mutex<Interner> {
    static INTERNER: OnceLock<Mutex<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| Mutex::new(Interner { names: Vec::new(), ids: HashMap::new() }))
}

/// Interned variable symbol.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    pub fn new(name: &str) -> Var {
        let mut table = interner().lock().expect("interner poisoned");
        if let Some(&id) = table.ids.get(name) {
            return Var(id);
        }
        let leaked: &'static str = Box::leak(name.to_string().into_boxed_str());
        let id = table.names.len() as u32;
        table.names.push(leaked);
        table.ids.insert(leaked, id);
        Var(id)
    }

    pub fn name(self) -> &'static str {
        interner().lock().expect("interner poisoned").names[self.0 as usize]
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Var {
        Var::new(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(Rel, Var, Var),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    ForAll(Var, Box<Formula>),
}

impl Formula {
    pub fn atom(rel: Rel, x: impl Into<Var>, y: impl Into<Var>) -> Formula {
        Formula::Atom(rel, x.into(), y.into())
    }

    pub fn eq(x: impl Into<Var>, y: impl Into<Var>) -> Formula {
        Formula::atom(Rel::Eq, x, y)
    }

    pub fn r(x: impl Into<Var>, y: impl Into<Var>) -> Formula {
        Formula::atom(Rel::R, x, y)
    }

    pub fn lt1(x: impl Into<Var>, y: impl Into<Var>) -> Formula {
        Formula::atom(Rel::Lt1, x, y)
    }

    pub fn lt2(x: impl Into<Var>, y: impl Into<Var>) -> Formula {
        Formula::atom(Rel::Lt2, x, y)
    }

    /// `x <1 y | x = y`.
    pub fn le1(x: impl Into<Var>, y: impl Into<Var>) -> Formula {
        let (x, y) = (x.into(), y.into());
        Formula::lt1(x, y).or(Formula::eq(x, y))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, rhs: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(rhs))
    }

    pub fn iff(self, rhs: Formula) -> Formula {
        Formula::Iff(Box::new(self), Box::new(rhs))
    }

    pub fn exists(x: impl Into<Var>, body: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(body))
    }

    pub fn forall(x: impl Into<Var>, body: Formula) -> Formula {
        Formula::ForAll(x.into(), Box::new(body))
    }

    /// `∃x1 ∃x2 .. body`.
    pub fn exists_all(vars: &[Var], body: Formula) -> Formula {
        vars.iter().rev().fold(body, |acc, &v| Formula::exists(v, acc))
    }

    pub fn forall_all(vars: &[Var], body: Formula) -> Formula {
        vars.iter().rev().fold(body, |acc, &v| Formula::forall(v, acc))
    }

    /// Left-nested conjunction; `None` for an empty list.
    pub fn conj(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    pub fn disj(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::or)
    }

    /// Quantifier depth: 0 on atoms, max over connectives, +1 per quantifier.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(..) => 0,
            Formula::Not(a) => a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.depth().max(b.depth())
            }
            Formula::Exists(_, a) | Formula::ForAll(_, a) => a.depth() + 1,
        }
    }

    /// Free variables in order of first free occurrence.
    pub fn free_vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
        match self {
            Formula::Atom(_, x, y) => {
                for v in [x, y] {
                    if !bound.contains(v) && !out.contains(v) {
                        out.push(*v);
                    }
                }
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, a) | Formula::ForAll(v, a) => {
                bound.push(*v);
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> HashSet<Var> {
        let mut out = HashSet::new();
        self.visit(&mut |f| match f {
            Formula::Atom(_, x, y) => {
                out.insert(*x);
                out.insert(*y);
            }
            Formula::Exists(v, _) | Formula::ForAll(v, _) => {
                out.insert(*v);
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        match self {
            Formula::Atom(..) => {}
            Formula::Not(a) | Formula::Exists(_, a) | Formula::ForAll(_, a) => a.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    pub fn relations(&self) -> HashSet<Rel> {
        let mut out = HashSet::new();
        self.visit(&mut |f| {
            if let Formula::Atom(r, _, _) = f {
                out.insert(*r);
            }
        });
        out
    }

    /// Whether every atom belongs to `sig`.
    pub fn fits(&self, sig: Signature) -> bool {
        self.relations().iter().all(|r| r.in_signature(sig))
    }

    /// `TOOB` or `TOTO` if the atoms force one; `None` if only `=` occurs.
    /// Mixed formulas are an error.
    pub fn signature(&self) -> Result<Option<Signature>, LogicError> {
        let rels = self.relations();
        let toob = rels.contains(&Rel::R);
        let toto = rels.contains(&Rel::Lt1) || rels.contains(&Rel::Lt2);
        match (toob, toto) {
            (true, true) => Err(LogicError::Invalid("formula mixes R with <1/<2".into())),
            (true, false) => Ok(Some(Signature::Toob)),
            (false, true) => Ok(Some(Signature::Toto)),
            (false, false) => Ok(None),
        }
    }

    /// Simultaneous capture-avoiding replacement of free variables.
    ///
    /// Bound variables that would capture a replacement are renamed to fresh
    /// names drawn from `fresh`.
    pub fn substitute(&self, map: &HashMap<Var, Var>, fresh: &mut FreshVars) -> Formula {
        match self {
            Formula::Atom(r, x, y) => {
                let f = |v: &Var| *map.get(v).unwrap_or(v);
                Formula::Atom(*r, f(x), f(y))
            }
            Formula::Not(a) => a.substitute(map, fresh).not(),
            Formula::And(a, b) => a.substitute(map, fresh).and(b.substitute(map, fresh)),
            Formula::Or(a, b) => a.substitute(map, fresh).or(b.substitute(map, fresh)),
            Formula::Implies(a, b) => a.substitute(map, fresh).implies(b.substitute(map, fresh)),
            Formula::Iff(a, b) => a.substitute(map, fresh).iff(b.substitute(map, fresh)),
            Formula::Exists(v, a) | Formula::ForAll(v, a) => {
                let mut inner: HashMap<Var, Var> = map.clone();
                inner.remove(v);
                let free_in_body = a.free_vars();
                let captures = inner
                    .iter()
                    .any(|(from, to)| to == v && free_in_body.contains(from));
                let (nv, body) = if captures {
                    let nv = fresh.next();
                    inner.insert(*v, nv);
                    (nv, a.substitute(&inner, fresh))
                } else if inner.is_empty() {
                    (*v, (**a).clone())
                } else {
                    (*v, a.substitute(&inner, fresh))
                };
                match self {
                    Formula::Exists(..) => Formula::exists(nv, body),
                    _ => Formula::forall(nv, body),
                }
            }
        }
    }
}

/// Deterministic supply of fresh variables `_v0, _v1, ..` skipping reserved names.
#[derive(Debug, Clone)]
pub struct FreshVars {
    prefix: String,
    counter: usize,
    avoid: HashSet<Var>,
}

impl FreshVars {
    pub fn new(prefix: &str) -> FreshVars {
        FreshVars { prefix: prefix.to_string(), counter: 0, avoid: HashSet::new() }
    }

    /// A supply avoiding every variable of the given formulas.
    pub fn avoiding<'a>(prefix: &str, formulas: impl IntoIterator<Item = &'a Formula>) -> FreshVars {
        let mut f = FreshVars::new(prefix);
        for phi in formulas {
            f.avoid.extend(phi.all_vars());
        }
        f
    }

    pub fn avoid(&mut self, v: Var) {
        self.avoid.insert(v);
    }

    pub fn next(&mut self) -> Var {
        loop {
            let v = Var::new(&format!("_{}{}", self.prefix, self.counter));
            self.counter += 1;
            if self.avoid.insert(v) {
                return v;
            }
        }
    }
}
