//! Concrete syntax: recursive-descent parser and a minimal-parenthesis printer.
//!
//! ```text
//! formula := ("exists" | "forall") var "." formula | iff
//! iff     := imp ("<->" imp)*          left associative
//! imp     := disj ("->" imp)?          right associative
//! disj    := conj ("|" conj)*
//! conj    := unary ("&" unary)*
//! unary   := "~" unary | quantified | "(" formula ")" | atom
//! atom    := var ("=" | "<1" | "<2") var | "R" "(" var "," var ")"
//! ```
//!
//! A quantifier's scope runs as far right as possible.

use std::fmt;

use crate::error::LogicError;
use crate::formula::{Formula, Rel, Signature, Var};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Exists,
    Forall,
    Dot,
    LParen,
    RParen,
    Comma,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Eq,
    Lt1,
    Lt2,
    Eof,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier {s:?}"),
        Tok::Eof => "end of input".into(),
        other => format!("{other:?}"),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, LogicError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'.' => Tok::Dot,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'~' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'=' => Tok::Eq,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            b'<' => match (bytes.get(i + 1), bytes.get(i + 2)) {
                (Some(b'-'), Some(b'>')) => {
                    i += 2;
                    Tok::Iff
                }
                (Some(b'1'), _) => {
                    i += 1;
                    Tok::Lt1
                }
                (Some(b'2'), _) => {
                    i += 1;
                    Tok::Lt2
                }
                _ => return Err(syntax(start, "expected <1, <2 or <->")),
            },
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                match &text[start..=i] {
                    "exists" => Tok::Exists,
                    "forall" => Tok::Forall,
                    s => Tok::Ident(s.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, &format!("unexpected character {ch:?}")));
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

fn syntax(offset: usize, message: &str) -> LogicError {
    LogicError::Syntax { offset, message: message.to_string() }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: Signature,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), LogicError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.offset(), &format!("expected {}, found {}", describe(&want), describe(self.peek()))))
        }
    }

    fn var(&mut self) -> Result<Var, LogicError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(Var::new(&s))
            }
            t => Err(syntax(self.offset(), &format!("expected variable, found {}", describe(&t)))),
        }
    }

    fn formula(&mut self) -> Result<Formula, LogicError> {
        match self.peek() {
            Tok::Exists | Tok::Forall => self.quantified(),
            _ => self.iff(),
        }
    }

    fn quantified(&mut self) -> Result<Formula, LogicError> {
        let q = self.bump();
        let v = self.var()?;
        self.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(if q == Tok::Exists { Formula::exists(v, body) } else { Formula::forall(v, body) })
    }

    fn iff(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.imp()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            lhs = lhs.iff(self.imp()?);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.disj()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            return Ok(lhs.implies(self.imp()?));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = lhs.or(self.conj()?);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(self.unary()?.not())
            }
            Tok::Exists | Tok::Forall => self.quantified(),
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(name) => {
                let at = self.offset();
                if name == "R" && self.toks[self.pos + 1].0 == Tok::LParen {
                    if !Rel::R.in_signature(self.sig) {
                        return Err(LogicError::UnknownRelation { relation: "R".into(), signature: self.sig, offset: at });
                    }
                    self.bump();
                    self.bump();
                    let x = self.var()?;
                    self.expect(Tok::Comma)?;
                    let y = self.var()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Formula::Atom(Rel::R, x, y));
                }
                let x = self.var()?;
                let rel_at = self.offset();
                let rel = match self.bump() {
                    Tok::Eq => Rel::Eq,
                    Tok::Lt1 => Rel::Lt1,
                    Tok::Lt2 => Rel::Lt2,
                    t => {
                        return Err(syntax(rel_at, &format!("expected =, <1 or <2, found {}", describe(&t))));
                    }
                };
                if !rel.in_signature(self.sig) {
                    let relation = if rel == Rel::Lt1 { "<1" } else { "<2" };
                    return Err(LogicError::UnknownRelation { relation: relation.into(), signature: self.sig, offset: rel_at });
                }
                let y = self.var()?;
                Ok(Formula::Atom(rel, x, y))
            }
            t => Err(syntax(self.offset(), &format!("expected formula, found {}", describe(&t)))),
        }
    }
}

/// Parses a formula of the given signature.
pub fn parse(text: &str, sig: Signature) -> Result<Formula, LogicError> {
    let mut p = Parser { toks: lex(text)?, pos: 0, sig };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(syntax(p.offset(), &format!("unexpected {}", describe(p.peek()))));
    }
    Ok(f)
}

/// Parses with whichever signature accepts the text (TOTO tried first).
pub fn parse_any(text: &str) -> Result<(Formula, Signature), LogicError> {
    match parse(text, Signature::Toto) {
        Ok(f) => Ok((f, Signature::Toto)),
        Err(LogicError::UnknownRelation { .. }) => parse(text, Signature::Toob).map(|f| (f, Signature::Toob)),
        Err(e) => Err(e),
    }
}

pub fn render(f: &Formula) -> String {
    f.to_string()
}

fn prec(f: &Formula) -> u8 {
    match f {
        Formula::Exists(..) | Formula::ForAll(..) => 0,
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(..) => 5,
        Formula::Atom(..) => 6,
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(Rel::R, x, y) => write!(f, "R({x},{y})"),
            Formula::Atom(Rel::Eq, x, y) => write!(f, "{x} = {y}"),
            Formula::Atom(Rel::Lt1, x, y) => write!(f, "{x} <1 {y}"),
            Formula::Atom(Rel::Lt2, x, y) => write!(f, "{x} <2 {y}"),
            Formula::Not(a) => {
                f.write_str("~")?;
                write_child(f, a, prec(a) < 5)
            }
            Formula::Exists(v, a) => write!(f, "exists {v}. {a}"),
            Formula::ForAll(v, a) => write!(f, "forall {v}. {a}"),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                let p = prec(self);
                let op = match self {
                    Formula::And(..) => " & ",
                    Formula::Or(..) => " | ",
                    Formula::Implies(..) => " -> ",
                    _ => " <-> ",
                };
                // `->` nests to the right, `&` and `|` to the left; nested `<->`
                // is always bracketed
                let (left_ok, right_ok) = match self {
                    Formula::Implies(..) => (false, true),
                    Formula::Iff(..) => (false, false),
                    _ => (true, false),
                };
                let (pa, pb) = (prec(a), prec(b));
                let left_parens = pa == 0 || pa < p || (pa == p && !left_ok);
                let right_parens = pb == 0 || pb < p || (pb == p && !right_ok);
                write_child(f, a, left_parens)?;
                f.write_str(op)?;
                write_child(f, b, right_parens)
            }
        }
    }
}
