//! Model checking on a permutation.
//!
//! A formula is compiled once into a node array with variables mapped to
//! environment slots. Quantifier nodes whose free variables span a small
//! enough table cache their truth value per assignment of those variables,
//! which turns nested guards such as `succ` formulas from `n^k` into
//! polynomially many distinct evaluations. Larger tables fall back to a hash
//! map holding only the assignments actually reached.

use std::collections::HashMap;

use mfo_core::Permutation;

use crate::error::LogicError;
use crate::formula::{Formula, Rel, Var};

const MEMO_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, Default)]
enum Table {
    #[default]
    Unset,
    Dense(Vec<u32>),
    Sparse(HashMap<u128, bool>),
    Off,
}

#[derive(Debug, Clone)]
enum Node {
    Atom(Rel, usize, usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Iff(usize, usize),
    Exists { slot: usize, body: usize, memo: Option<usize> },
    ForAll { slot: usize, body: usize, memo: Option<usize> },
}

#[derive(Debug, Clone)]
struct MemoSpec {
    slots: Vec<usize>,
}

/// A formula prepared for repeated evaluation.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    nodes: Vec<Node>,
    root: usize,
    slot_vars: Vec<Var>,
    free: Vec<Var>,
    free_slots: Vec<usize>,
    memos: Vec<MemoSpec>,
}

struct Compiler {
    nodes: Vec<Node>,
    slots: HashMap<Var, usize>,
    slot_vars: Vec<Var>,
    memos: Vec<MemoSpec>,
}

impl Compiler {
    fn slot(&mut self, v: Var) -> usize {
        if let Some(&s) = self.slots.get(&v) {
            return s;
        }
        let s = self.slot_vars.len();
        self.slot_vars.push(v);
        self.slots.insert(v, s);
        s
    }

    fn push(&mut self, node: Node) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn compile(&mut self, f: &Formula) -> usize {
        match f {
            Formula::Atom(r, x, y) => {
                let (a, b) = (self.slot(*x), self.slot(*y));
                self.push(Node::Atom(*r, a, b))
            }
            Formula::Not(a) => {
                let a = self.compile(a);
                self.push(Node::Not(a))
            }
            Formula::And(a, b) => {
                let (a, b) = (self.compile(a), self.compile(b));
                self.push(Node::And(a, b))
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.compile(a), self.compile(b));
                self.push(Node::Or(a, b))
            }
            Formula::Implies(a, b) => {
                let (a, b) = (self.compile(a), self.compile(b));
                self.push(Node::Implies(a, b))
            }
            Formula::Iff(a, b) => {
                let (a, b) = (self.compile(a), self.compile(b));
                self.push(Node::Iff(a, b))
            }
            // ∃v (a ∨ b) = ∃v a ∨ ∃v b and ∀v (a ∧ b) = ∀v a ∧ ∀v b, even on
            // the empty domain; the halves get smaller memo keys
            Formula::Exists(v, a) if matches!(**a, Formula::Or(..) | Formula::Implies(..)) => {
                let (l, r) = match &**a {
                    Formula::Or(l, r) => ((**l).clone(), (**r).clone()),
                    Formula::Implies(l, r) => ((**l).clone().not(), (**r).clone()),
                    _ => unreachable!(),
                };
                let l = self.compile(&Formula::exists(*v, l));
                let r = self.compile(&Formula::exists(*v, r));
                self.push(Node::Or(l, r))
            }
            Formula::ForAll(v, a) if matches!(**a, Formula::And(..)) => {
                let Formula::And(l, r) = &**a else { unreachable!() };
                let l = self.compile(&Formula::forall(*v, (**l).clone()));
                let r = self.compile(&Formula::forall(*v, (**r).clone()));
                self.push(Node::And(l, r))
            }
            Formula::Exists(v, a) | Formula::ForAll(v, a) => {
                let slot = self.slot(*v);
                let body = self.compile(a);
                let free: Vec<usize> = f.free_vars().into_iter().map(|w| self.slot(w)).collect();
                let memo = if free.is_empty() {
                    None
                } else {
                    self.memos.push(MemoSpec { slots: free });
                    Some(self.memos.len() - 1)
                };
                match f {
                    Formula::Exists(..) => self.push(Node::Exists { slot, body, memo }),
                    _ => self.push(Node::ForAll { slot, body, memo }),
                }
            }
        }
    }
}

impl CompiledFormula {
    pub fn new(f: &Formula) -> CompiledFormula {
        let mut c = Compiler { nodes: Vec::new(), slots: HashMap::new(), slot_vars: Vec::new(), memos: Vec::new() };
        let free = f.free_vars();
        for &v in &free {
            c.slot(v);
        }
        let root = c.compile(f);
        let free_slots = free.iter().map(|v| c.slots[v]).collect();
        CompiledFormula { nodes: c.nodes, root, slot_vars: c.slot_vars, free, free_slots, memos: c.memos }
    }

    /// Free variables, in the order expected by [`Evaluator::check`].
    pub fn free_vars(&self) -> &[Var] {
        &self.free
    }

    pub fn evaluator(&self) -> Evaluator<'_> {
        Evaluator {
            compiled: self,
            env: vec![0; self.slot_vars.len()],
            tables: vec![Table::Unset; self.memos.len()],
            table_n: 0,
            generation: 0,
            images: Vec::new(),
        }
    }

    /// Truth value on `p`, with free variables taken from `a`.
    pub fn evaluate(&self, p: &Permutation, a: &Assignment) -> Result<bool, LogicError> {
        let values = self
            .free
            .iter()
            .map(|v| a.get(*v).ok_or_else(|| LogicError::Unbound(v.name().to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        self.evaluator().check(p, &values)
    }
}

/// Reusable evaluation state for one compiled formula.
pub struct Evaluator<'a> {
    compiled: &'a CompiledFormula,
    env: Vec<usize>,
    tables: Vec<Table>,
    table_n: usize,
    generation: u32,
    images: Vec<usize>,
}

impl Evaluator<'_> {
    /// `values[i]` is the element assigned to the `i`-th free variable.
    pub fn check(&mut self, p: &Permutation, values: &[usize]) -> Result<bool, LogicError> {
        let c = self.compiled;
        if values.len() != c.free.len() {
            return Err(LogicError::Invalid(format!("expected {} values, got {}", c.free.len(), values.len())));
        }
        let n = p.len();
        for (v, &x) in c.free.iter().zip(values) {
            if x == 0 || x > n {
                return Err(LogicError::OutOfDomain { var: v.name().to_string(), value: x, n });
            }
        }
        // memo keys cover every free variable of their node, so entries stay
        // valid until the permutation changes; then the generation is bumped
        if self.generation == 0 || self.images != p.images() {
            self.images.clear();
            self.images.extend_from_slice(p.images());
            if n != self.table_n || self.generation == u32::MAX >> 2 {
                self.table_n = n;
                self.generation = 0;
                for t in &mut self.tables {
                    *t = Table::Unset;
                }
            }
            self.generation += 1;
            for t in &mut self.tables {
                if let Table::Sparse(m) = t {
                    m.clear();
                }
            }
        }
        for (&s, &x) in c.free_slots.iter().zip(values) {
            self.env[s] = x;
        }
        Ok(self.eval(c.root))
    }

    fn memo_key(&mut self, memo: usize) -> Option<u128> {
        let spec = &self.compiled.memos[memo];
        let n = self.images.len();
        if let Table::Unset = self.tables[memo] {
            let size = (n as u128).checked_pow(spec.slots.len() as u32);
            self.tables[memo] = match size {
                Some(s) if s <= MEMO_LIMIT as u128 => Table::Dense(vec![0; s as usize]),
                Some(_) => Table::Sparse(HashMap::new()),
                None => Table::Off,
            };
        }
        if let Table::Off = self.tables[memo] {
            return None;
        }
        let mut key = 0u128;
        for &s in &spec.slots {
            key = key * n as u128 + (self.env[s] - 1) as u128;
        }
        Some(key)
    }

    fn lookup(&self, memo: usize, key: u128) -> Option<bool> {
        match &self.tables[memo] {
            Table::Dense(t) => {
                let e = t[key as usize];
                (e >> 2 == self.generation).then_some(e & 1 == 1)
            }
            Table::Sparse(m) => m.get(&key).copied(),
            _ => None,
        }
    }

    fn store(&mut self, memo: usize, key: u128, value: bool) {
        let generation = self.generation;
        match &mut self.tables[memo] {
            Table::Dense(t) => t[key as usize] = generation << 2 | value as u32,
            Table::Sparse(m) => {
                m.insert(key, value);
            }
            _ => {}
        }
    }

    fn eval(&mut self, id: usize) -> bool {
        match self.compiled.nodes[id] {
            Node::Atom(r, a, b) => {
                let (x, y) = (self.env[a], self.env[b]);
                match r {
                    Rel::Eq => x == y,
                    Rel::R => self.images[x - 1] == y,
                    Rel::Lt1 => x < y,
                    Rel::Lt2 => self.images[x - 1] < self.images[y - 1],
                }
            }
            Node::Not(a) => !self.eval(a),
            Node::And(a, b) => self.eval(a) && self.eval(b),
            Node::Or(a, b) => self.eval(a) || self.eval(b),
            Node::Implies(a, b) => !self.eval(a) || self.eval(b),
            Node::Iff(a, b) => self.eval(a) == self.eval(b),
            Node::Exists { slot, body, memo } => self.quantify(slot, body, memo, true),
            Node::ForAll { slot, body, memo } => self.quantify(slot, body, memo, false),
        }
    }

    fn quantify(&mut self, slot: usize, body: usize, memo: Option<usize>, existential: bool) -> bool {
        let key = memo.and_then(|m| self.memo_key(m).map(|k| (m, k)));
        if let Some((m, k)) = key {
            if let Some(v) = self.lookup(m, k) {
                return v;
            }
        }
        let saved = self.env[slot];
        let n = self.images.len();
        // ∃: look for a witness; ∀: look for a counterexample
        let mut result = !existential;
        for x in 1..=n {
            self.env[slot] = x;
            if self.eval(body) == existential {
                result = existential;
                break;
            }
        }
        self.env[slot] = saved;
        if let Some((m, k)) = key {
            self.store(m, k, result);
        }
        result
    }
}

/// Finite map from variables to domain elements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    map: HashMap<Var, usize>,
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn with(mut self, v: impl Into<Var>, x: usize) -> Assignment {
        self.map.insert(v.into(), x);
        self
    }

    pub fn set(&mut self, v: impl Into<Var>, x: usize) {
        self.map.insert(v.into(), x);
    }

    pub fn get(&self, v: Var) -> Option<usize> {
        self.map.get(&v).copied()
    }

    pub fn from_pairs<V: Into<Var>>(pairs: impl IntoIterator<Item = (V, usize)>) -> Assignment {
        let mut a = Assignment::new();
        for (v, x) in pairs {
            a.set(v, x);
        }
        a
    }
}

/// One-shot evaluation; compiles `f` each call.
pub fn evaluate(p: &Permutation, f: &Formula, a: &Assignment) -> Result<bool, LogicError> {
    CompiledFormula::new(f).evaluate(p, a)
}

/// Evaluation of a sentence.
pub fn holds(p: &Permutation, sentence: &Formula) -> Result<bool, LogicError> {
    evaluate(p, sentence, &Assignment::new())
}

/// The elements `j` with `p |= f[j]` for a formula with exactly one free variable.
pub fn witnesses(p: &Permutation, f: &Formula) -> Result<Vec<usize>, LogicError> {
    let c = CompiledFormula::new(f);
    if c.free_vars().len() != 1 {
        return Err(LogicError::Invalid(format!("expected one free variable, found {}", c.free_vars().len())));
    }
    let mut ev = c.evaluator();
    let mut out = Vec::new();
    for j in 1..=p.len() {
        if ev.check(p, &[j])? {
            out.push(j);
        }
    }
    Ok(out)
}
