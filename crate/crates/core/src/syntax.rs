//! S-expression syntax for terms and formulas.
//!
//! Formulas: `(= t s)`, `(not f)`, `(and f g ...)`, `(or f g ...)`,
//! `(-> f g)`, `(forall x f)`, `(exists x f)`, `(P t ...)`. Terms are
//! symbol names (or aliases), variables, or applications `(f t ...)`.
//! With the arithmetic symbols declared, a natural number literal `k`
//! stands for `s^k(0)` and `(* k t)` for `k·t`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::kernel::notation::ArithSyms;
use crate::kernel::{Atom, Formula, Quant, Signature, SymbolKind, Term, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("line {line}: unbalanced parenthesis")]
    Unbalanced { line: usize },
    #[error("unexpected end of input")]
    Eof,
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{name}` expects {expected} argument(s), got {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("malformed {what}: {text}")]
    Malformed { what: &'static str, text: String },
    #[error("`{0}` is a predicate, expected a term")]
    PredicateAsTerm(String),
    #[error("`{0}` is a function symbol, expected a formula")]
    FunctionAsFormula(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SExpr {
    Atom(String),
    List(Vec<SExpr>),
}

impl SExpr {
    pub fn as_atom(&self) -> Option<&str> {
        match self {
            SExpr::Atom(a) => Some(a),
            SExpr::List(_) => None,
        }
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::Atom(a) => write!(f, "{a}"),
            SExpr::List(items) => {
                write!(f, "(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{it}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Token {
    Open,
    Close,
    Dot,
    Word(String),
}

/// Splits `text` into tokens with their line numbers. `;` starts a comment.
pub fn tokenize(text: &str) -> Vec<(Token, usize)> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let code = line.split(';').next().unwrap_or("");
        let mut word = String::new();
        let flush = |word: &mut String, out: &mut Vec<(Token, usize)>| {
            if !word.is_empty() {
                out.push((Token::Word(std::mem::take(word)), line_no));
            }
        };
        for ch in code.chars() {
            match ch {
                '(' | ')' | '.' => {
                    flush(&mut word, &mut out);
                    out.push((
                        match ch {
                            '(' => Token::Open,
                            ')' => Token::Close,
                            _ => Token::Dot,
                        },
                        line_no,
                    ));
                }
                c if c.is_whitespace() => flush(&mut word, &mut out),
                c => word.push(c),
            }
        }
        flush(&mut word, &mut out);
    }
    out
}

/// Reads one S-expression starting at `pos`.
pub fn read_sexpr(tokens: &[(Token, usize)], pos: &mut usize) -> Result<SExpr, SyntaxError> {
    let Some((tok, line)) = tokens.get(*pos) else {
        return Err(SyntaxError::Eof);
    };
    *pos += 1;
    match tok {
        Token::Word(w) => Ok(SExpr::Atom(w.clone())),
        Token::Close | Token::Dot => Err(SyntaxError::Unbalanced { line: *line }),
        Token::Open => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => return Err(SyntaxError::Unbalanced { line: *line }),
                    Some((Token::Close, _)) => {
                        *pos += 1;
                        return Ok(SExpr::List(items));
                    }
                    Some(_) => items.push(read_sexpr(tokens, pos)?),
                }
            }
        }
    }
}

/// Parses a whole string as a single S-expression.
pub fn parse_sexpr(text: &str) -> Result<SExpr, SyntaxError> {
    let toks = tokenize(text);
    let mut pos = 0;
    let e = read_sexpr(&toks, &mut pos)?;
    if pos != toks.len() {
        return Err(SyntaxError::Malformed {
            what: "expression",
            text: text.trim().to_string(),
        });
    }
    Ok(e)
}

/// Resolves identifiers against a signature. Identifiers that are neither
/// bound nor declared become variables when `free` allows it.
pub struct Reader<'a> {
    sig: &'a Signature,
    arith: Option<ArithSyms>,
    bound: Vec<String>,
    free: FreeVars,
}

#[derive(Clone, Debug)]
pub enum FreeVars {
    /// Undeclared identifiers are errors.
    None,
    /// Only these names may occur free.
    Only(BTreeSet<String>),
    /// Any undeclared identifier is a variable.
    Any,
}

impl<'a> Reader<'a> {
    pub fn new(sig: &'a Signature, free: FreeVars) -> Self {
        Reader {
            sig,
            arith: ArithSyms::lookup(sig),
            bound: Vec::new(),
            free,
        }
    }

    fn malformed(what: &'static str, e: &SExpr) -> SyntaxError {
        SyntaxError::Malformed {
            what,
            text: e.to_string(),
        }
    }

    fn variable(&self, name: &str) -> Option<Var> {
        if self.bound.iter().any(|b| b == name) {
            return Some(Var::named(name));
        }
        if self.sig.lookup(name).is_some() {
            return None;
        }
        match &self.free {
            FreeVars::Any => Some(Var::named(name)),
            FreeVars::Only(set) if set.contains(name) => Some(Var::named(name)),
            _ => None,
        }
    }

    pub fn term(&mut self, e: &SExpr) -> Result<Term, SyntaxError> {
        match e {
            SExpr::Atom(name) => {
                if let (Some(a), Ok(k)) = (self.arith, name.parse::<u64>()) {
                    return Ok(a.numeral(k));
                }
                if let Some(v) = self.variable(name) {
                    return Ok(Term::Var(v));
                }
                self.application(name, &[])
            }
            SExpr::List(items) => {
                let Some(SExpr::Atom(head)) = items.first() else {
                    return Err(Self::malformed("term", e));
                };
                if head == "*" && self.sig.lookup("*").is_none() {
                    let (Some(a), [_, SExpr::Atom(k), t]) = (self.arith, items.as_slice()) else {
                        return Err(Self::malformed("multiple", e));
                    };
                    let k: u64 = k.parse().map_err(|_| Self::malformed("multiple", e))?;
                    let t = self.term(t)?;
                    return Ok(a.times(k, &t));
                }
                self.application(head, &items[1..])
            }
        }
    }

    fn application(&mut self, name: &str, args: &[SExpr]) -> Result<Term, SyntaxError> {
        let sym = self
            .sig
            .lookup(name)
            .ok_or_else(|| SyntaxError::UnknownSymbol(name.to_string()))?;
        let info = self.sig.info(sym);
        if info.kind != SymbolKind::Function {
            return Err(SyntaxError::PredicateAsTerm(name.to_string()));
        }
        if info.arity != args.len() {
            return Err(SyntaxError::Arity {
                name: name.to_string(),
                expected: info.arity,
                found: args.len(),
            });
        }
        let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
        Ok(Term::app(sym, args))
    }

    pub fn formula(&mut self, e: &SExpr) -> Result<Formula, SyntaxError> {
        let items: &[SExpr] = match e {
            SExpr::List(items) => items,
            SExpr::Atom(name) => return self.predicate(name, &[]),
        };
        let Some(SExpr::Atom(head)) = items.first() else {
            return Err(Self::malformed("formula", e));
        };
        let args = &items[1..];
        match (head.as_str(), args) {
            ("=", [l, r]) => Ok(Formula::eq(self.term(l)?, self.term(r)?)),
            ("not", [f]) => Ok(Formula::not(self.formula(f)?)),
            ("->", [a, b]) => Ok(Formula::implies(self.formula(a)?, self.formula(b)?)),
            ("and" | "or", [_, _, ..]) => {
                let parts = args.iter().map(|a| self.formula(a)).collect::<Result<Vec<_>, _>>()?;
                Ok(if head == "and" {
                    Formula::conj(parts)
                } else {
                    Formula::disj(parts)
                }
                .expect("at least two operands"))
            }
            ("forall" | "exists", [SExpr::Atom(x), body]) => {
                self.bound.push(x.clone());
                let body = self.formula(body);
                self.bound.pop();
                let q = if head == "forall" {
                    Quant::Forall
                } else {
                    Quant::Exists
                };
                Ok(Formula::Quant(q, Var::named(x), Box::new(body?)))
            }
            ("=" | "not" | "->" | "and" | "or" | "forall" | "exists", _) => {
                Err(Self::malformed("formula", e))
            }
            (name, args) => self.predicate(name, args),
        }
    }

    fn predicate(&mut self, name: &str, args: &[SExpr]) -> Result<Formula, SyntaxError> {
        let sym = self
            .sig
            .lookup(name)
            .ok_or_else(|| SyntaxError::UnknownSymbol(name.to_string()))?;
        let info = self.sig.info(sym);
        if info.kind != SymbolKind::Predicate {
            return Err(SyntaxError::FunctionAsFormula(name.to_string()));
        }
        if info.arity != args.len() {
            return Err(SyntaxError::Arity {
                name: name.to_string(),
                expected: info.arity,
                found: args.len(),
            });
        }
        let args = args.iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
        Ok(Formula::pred(sym, args))
    }
}

/// The S-expression of a term, using display names.
pub fn term_sexpr(sig: &Signature, t: &Term) -> SExpr {
    match t {
        Term::Var(v) => SExpr::Atom(v.name()),
        Term::App(f, args) if args.is_empty() => SExpr::Atom(sig.info(*f).display_name().to_string()),
        Term::App(f, args) => {
            let mut items = vec![SExpr::Atom(sig.info(*f).display_name().to_string())];
            items.extend(args.iter().map(|a| term_sexpr(sig, a)));
            SExpr::List(items)
        }
    }
}

pub fn formula_sexpr(sig: &Signature, f: &Formula) -> SExpr {
    let list = |head: &str, rest: Vec<SExpr>| {
        let mut items = vec![SExpr::Atom(head.to_string())];
        items.extend(rest);
        SExpr::List(items)
    };
    match f {
        Formula::Atom(Atom::Eq(l, r)) => list("=", vec![term_sexpr(sig, l), term_sexpr(sig, r)]),
        Formula::Atom(Atom::Pred(p, args)) if args.is_empty() => {
            SExpr::Atom(sig.info(*p).display_name().to_string())
        }
        Formula::Atom(Atom::Pred(p, args)) => list(
            sig.info(*p).display_name(),
            args.iter().map(|a| term_sexpr(sig, a)).collect(),
        ),
        Formula::Not(g) => list("not", vec![formula_sexpr(sig, g)]),
        Formula::And(a, b) => list("and", vec![formula_sexpr(sig, a), formula_sexpr(sig, b)]),
        Formula::Or(a, b) => list("or", vec![formula_sexpr(sig, a), formula_sexpr(sig, b)]),
        Formula::Implies(a, b) => list("->", vec![formula_sexpr(sig, a), formula_sexpr(sig, b)]),
        Formula::Quant(q, x, g) => list(
            match q {
                Quant::Forall => "forall",
                Quant::Exists => "exists",
            },
            vec![SExpr::Atom(x.name()), formula_sexpr(sig, g)],
        ),
    }
}
