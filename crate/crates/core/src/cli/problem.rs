//! Problem files.
//!
//! A problem is a sequence of statements, each ending with `.`:
//!
//! ```text
//! fun f 1.                 pred q 2.
//! theory Tprime.           axiom (forall x (= (+ 0 x) x)).
//! goal C 2.                goal (forall x (= (+ x 0) x)).
//! rule double.             gamma open.
//! term-depth 1.            formula-size 5.
//! hint double-induct (-> (= (* 2 x) (* 2 y)) (= x y)) on (x y) with ().
//! ```
//!
//! The arithmetic symbols `0 s p +` are always declared. `;` starts a
//! comment that runs to the end of the line.

use std::fmt;

use thiserror::Error;

use crate::arith::{Goal, TheoryPreset};
use crate::induction::{GammaClass, Hint, RuleKind};
use crate::kernel::notation::ArithSyms;
use crate::kernel::{Formula, Signature};
use crate::syntax::{formula_sexpr, FreeVars, Reader, SExpr, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Fun { name: String, arity: usize },
    Pred { name: String, arity: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoalSpec {
    Preset(Goal),
    Sentence(Formula),
}

/// A parsed problem. Unset fields fall back to command-line flags or
/// defaults when the problem is run.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Problem {
    pub decls: Vec<Decl>,
    pub theory: Option<TheoryPreset>,
    pub axioms: Vec<Formula>,
    pub goal: Option<GoalSpec>,
    pub rule: Option<RuleKind>,
    pub gamma: Option<GammaClass>,
    pub term_depth: Option<usize>,
    pub formula_size: Option<usize>,
    pub hints: Vec<Hint>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {kind}")]
pub struct ProblemError {
    pub line: usize,
    pub col: usize,
    pub kind: ProblemErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProblemErrorKind {
    #[error("unbalanced parenthesis")]
    Unbalanced,
    #[error("statement is missing its final `.`")]
    MissingDot,
    #[error("unknown statement `{0}`")]
    UnknownStatement(String),
    #[error("malformed `{0}` statement")]
    Malformed(&'static str),
    #[error("expected a number, found `{0}`")]
    NotANumber(String),
    #[error("`{0}` is already declared")]
    Duplicate(String),
    #[error("`{0}` is given twice")]
    Repeated(&'static str),
    #[error("unknown {what} `{name}`")]
    Unknown { what: &'static str, name: String },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{0}")]
    Goal(String),
    #[error("{0}")]
    Hint(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Dot,
    Word(String),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
    offset: usize,
}

fn lex(text: &str) -> Vec<Spanned> {
    let mut out = Vec::new();
    let mut offset = 0;
    for (ln, line) in text.split_inclusive('\n').enumerate() {
        let code_len = line.find(';').unwrap_or(line.len());
        let mut word: Option<(usize, usize)> = None;
        for (col0, (i, ch)) in line[..code_len].char_indices().enumerate() {
            let at = offset + i;
            let is_sep = ch.is_whitespace() || matches!(ch, '(' | ')' | '.');
            if is_sep {
                if let Some((start, col)) = word.take() {
                    out.push(Spanned {
                        tok: Tok::Word(text[start..at].to_string()),
                        line: ln + 1,
                        col,
                        offset: start,
                    });
                }
                let tok = match ch {
                    '(' => Tok::Open,
                    ')' => Tok::Close,
                    '.' => Tok::Dot,
                    _ => continue,
                };
                out.push(Spanned {
                    tok,
                    line: ln + 1,
                    col: col0 + 1,
                    offset: at,
                });
            } else if word.is_none() {
                word = Some((at, col0 + 1));
            }
        }
        if let Some((start, col)) = word {
            out.push(Spanned {
                tok: Tok::Word(text[start..offset + code_len].to_string()),
                line: ln + 1,
                col,
                offset: start,
            });
        }
        offset += line.len();
    }
    out
}

struct Statement<'t> {
    toks: &'t [Spanned],
    /// Source text between the keyword and the final dot.
    body: &'t str,
}

impl Statement<'_> {
    fn err(&self, at: usize, kind: ProblemErrorKind) -> ProblemError {
        let t = &self.toks[at.min(self.toks.len() - 1)];
        ProblemError {
            line: t.line,
            col: t.col,
            kind,
        }
    }

    /// Places a reader error on the first token naming the offending symbol.
    fn syntax_err(&self, e: SyntaxError) -> ProblemError {
        let name = match &e {
            SyntaxError::UnknownSymbol(n)
            | SyntaxError::PredicateAsTerm(n)
            | SyntaxError::FunctionAsFormula(n)
            | SyntaxError::Arity { name: n, .. } => Some(n.as_str()),
            _ => None,
        };
        let at = name
            .and_then(|n| self.toks.iter().position(|t| t.tok == Tok::Word(n.to_string())))
            .unwrap_or(0);
        self.err(at, ProblemErrorKind::Syntax(e))
    }

    fn word(&self, i: usize) -> Option<&str> {
        match self.toks.get(i).map(|t| &t.tok) {
            Some(Tok::Word(w)) => Some(w),
            _ => None,
        }
    }

    fn words(&self) -> Option<Vec<&str>> {
        (0..self.toks.len()).map(|i| self.word(i)).collect()
    }

    fn number(&self, i: usize) -> Result<usize, ProblemError> {
        let w = self.word(i).ok_or_else(|| self.err(i, ProblemErrorKind::NotANumber(String::new())))?;
        w.parse().map_err(|_| self.err(i, ProblemErrorKind::NotANumber(w.to_string())))
    }

    /// Reads a single S-expression spanning tokens `1..`.
    fn sexpr(&self, what: &'static str) -> Result<SExpr, ProblemError> {
        let mut pos = 1;
        let e = read(self.toks, &mut pos).map_err(|at| self.err(at, ProblemErrorKind::Unbalanced))?;
        if pos != self.toks.len() {
            return Err(self.err(pos, ProblemErrorKind::Malformed(what)));
        }
        Ok(e)
    }
}

fn read(toks: &[Spanned], pos: &mut usize) -> Result<SExpr, usize> {
    let start = *pos;
    let tok = toks.get(*pos).ok_or(start.saturating_sub(1))?;
    *pos += 1;
    match &tok.tok {
        Tok::Word(w) => Ok(SExpr::Atom(w.clone())),
        Tok::Close | Tok::Dot => Err(start),
        Tok::Open => {
            let mut items = Vec::new();
            loop {
                match toks.get(*pos).map(|t| &t.tok) {
                    None => return Err(start),
                    Some(Tok::Close) => {
                        *pos += 1;
                        return Ok(SExpr::List(items));
                    }
                    Some(_) => items.push(read(toks, pos)?),
                }
            }
        }
    }
}

fn split_statements<'t>(text: &'t str, toks: &'t [Spanned]) -> Result<Vec<Statement<'t>>, ProblemError> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut depth: i64 = 0;
    for (i, t) in toks.iter().enumerate() {
        match t.tok {
            Tok::Open => depth += 1,
            Tok::Close => {
                depth -= 1;
                if depth < 0 {
                    return Err(ProblemError {
                        line: t.line,
                        col: t.col,
                        kind: ProblemErrorKind::Unbalanced,
                    });
                }
            }
            Tok::Dot if depth == 0 => {
                if i == start {
                    return Err(ProblemError {
                        line: t.line,
                        col: t.col,
                        kind: ProblemErrorKind::Malformed("empty"),
                    });
                }
                let body_start = toks.get(start + 1).map(|b| b.offset).unwrap_or(t.offset).min(t.offset);
                out.push(Statement {
                    toks: &toks[start..i],
                    body: &text[body_start..t.offset],
                });
                start = i + 1;
            }
            _ => {}
        }
    }
    if let Some(t) = toks.get(start) {
        let kind = if depth != 0 {
            ProblemErrorKind::Unbalanced
        } else {
            ProblemErrorKind::MissingDot
        };
        return Err(ProblemError {
            line: t.line,
            col: t.col,
            kind,
        });
    }
    Ok(out)
}

fn parse_goal(st: &Statement<'_>, sig: &Signature) -> Result<GoalSpec, ProblemError> {
    if matches!(st.toks.get(1).map(|t| &t.tok), Some(Tok::Open)) {
        let e = st.sexpr("goal")?;
        let f = Reader::new(sig, FreeVars::None)
            .formula(&e)
            .map_err(|e| st.syntax_err(e))?;
        return Ok(GoalSpec::Sentence(f));
    }
    let words = st.words().ok_or_else(|| st.err(1, ProblemErrorKind::Malformed("goal")))?;
    let num = |i: usize| st.number(i).map(|n| n as u64);
    let goal = match words.as_slice() {
        [_, "comm"] => Goal::Comm,
        [_, "theta"] => Goal::Theta,
        [_, "C", _] => Goal::C(num(2)?),
        [_, "D", _, _] => Goal::D(num(2)?, num(3)?),
        [_, name, ..] => {
            return Err(st.err(
                1,
                ProblemErrorKind::Unknown {
                    what: "goal",
                    name: name.to_string(),
                },
            ))
        }
        _ => return Err(st.err(0, ProblemErrorKind::Malformed("goal"))),
    };
    goal.validate().map_err(|e| st.err(1, ProblemErrorKind::Goal(e.to_string())))?;
    Ok(GoalSpec::Preset(goal))
}

fn set_once<T>(slot: &mut Option<T>, v: T, st: &Statement<'_>, what: &'static str) -> Result<(), ProblemError> {
    if slot.is_some() {
        return Err(st.err(0, ProblemErrorKind::Repeated(what)));
    }
    *slot = Some(v);
    Ok(())
}

fn single_word<'s>(st: &'s Statement<'_>, what: &'static str) -> Result<&'s str, ProblemError> {
    match st.words().as_deref() {
        Some([_, w]) => Ok(w),
        _ => Err(st.err(0, ProblemErrorKind::Malformed(what))),
    }
}

impl Problem {
    /// The arithmetic symbols plus the declared ones.
    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        ArithSyms::declare(&mut sig).expect("fresh signature");
        for d in &self.decls {
            match d {
                Decl::Fun { name, arity } => sig.add_function(name, *arity),
                Decl::Pred { name, arity } => sig.add_predicate(name, *arity),
            }
            .expect("declarations are checked when parsed");
        }
        sig
    }

    pub fn parse(text: &str) -> Result<Problem, ProblemError> {
        let toks = lex(text);
        let statements = split_statements(text, &toks)?;
        let mut p = Problem::default();
        let mut sig = p.signature();
        for st in &statements {
            let Some(keyword) = st.word(0) else {
                return Err(st.err(0, ProblemErrorKind::Malformed("statement")));
            };
            match keyword {
                "fun" | "pred" => {
                    let words = st.words().ok_or_else(|| st.err(0, ProblemErrorKind::Malformed("declaration")))?;
                    let [_, name, _] = words.as_slice() else {
                        return Err(st.err(0, ProblemErrorKind::Malformed("declaration")));
                    };
                    let arity = st.number(2)?;
                    if name.parse::<u64>().is_ok() || sig.lookup(name).is_some() {
                        return Err(st.err(1, ProblemErrorKind::Duplicate(name.to_string())));
                    }
                    let d = if keyword == "fun" {
                        sig.add_function(name, arity)
                            .map_err(|_| st.err(1, ProblemErrorKind::Duplicate(name.to_string())))?;
                        Decl::Fun {
                            name: name.to_string(),
                            arity,
                        }
                    } else {
                        sig.add_predicate(name, arity)
                            .map_err(|_| st.err(1, ProblemErrorKind::Duplicate(name.to_string())))?;
                        Decl::Pred {
                            name: name.to_string(),
                            arity,
                        }
                    };
                    p.decls.push(d);
                }
                "theory" => {
                    let name = single_word(st, "theory")?;
                    let t = TheoryPreset::parse(name).map_err(|_| {
                        st.err(
                            1,
                            ProblemErrorKind::Unknown {
                                what: "theory",
                                name: name.to_string(),
                            },
                        )
                    })?;
                    set_once(&mut p.theory, t, st, "theory")?;
                }
                "axiom" => {
                    let e = st.sexpr("axiom")?;
                    let f = Reader::new(&sig, FreeVars::None)
                        .formula(&e)
                        .map_err(|e| st.syntax_err(e))?;
                    p.axioms.push(f);
                }
                "goal" => {
                    let g = parse_goal(st, &sig)?;
                    set_once(&mut p.goal, g, st, "goal")?;
                }
                "rule" => {
                    let name = single_word(st, "rule")?;
                    let r = RuleKind::parse(name).ok_or_else(|| {
                        st.err(
                            1,
                            ProblemErrorKind::Unknown {
                                what: "rule",
                                name: name.to_string(),
                            },
                        )
                    })?;
                    set_once(&mut p.rule, r, st, "rule")?;
                }
                "gamma" => {
                    let name = single_word(st, "gamma")?;
                    let g = GammaClass::parse(name).ok_or_else(|| {
                        st.err(
                            1,
                            ProblemErrorKind::Unknown {
                                what: "formula class",
                                name: name.to_string(),
                            },
                        )
                    })?;
                    set_once(&mut p.gamma, g, st, "gamma")?;
                }
                "term-depth" | "formula-size" => {
                    if st.toks.len() != 2 {
                        return Err(st.err(0, ProblemErrorKind::Malformed("bound")));
                    }
                    let n = st.number(1)?;
                    if keyword == "term-depth" {
                        set_once(&mut p.term_depth, n, st, "term-depth")?;
                    } else {
                        set_once(&mut p.formula_size, n, st, "formula-size")?;
                    }
                }
                "hint" => {
                    let h = Hint::parse(st.body).map_err(|e| st.err(1, ProblemErrorKind::Hint(e.to_string())))?;
                    p.hints.push(h);
                }
                other => return Err(st.err(0, ProblemErrorKind::UnknownStatement(other.to_string()))),
            }
        }
        Ok(p)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = self.signature();
        for d in &self.decls {
            match d {
                Decl::Fun { name, arity } => writeln!(f, "fun {name} {arity}.")?,
                Decl::Pred { name, arity } => writeln!(f, "pred {name} {arity}.")?,
            }
        }
        if let Some(t) = self.theory {
            writeln!(f, "theory {}.", t.name())?;
        }
        for a in &self.axioms {
            writeln!(f, "axiom {}.", formula_sexpr(&sig, a))?;
        }
        match &self.goal {
            Some(GoalSpec::Preset(g)) => writeln!(f, "goal {}.", g.label())?,
            Some(GoalSpec::Sentence(s)) => writeln!(f, "goal {}.", formula_sexpr(&sig, s))?,
            None => {}
        }
        if let Some(r) = self.rule {
            writeln!(f, "rule {}.", r.name())?;
        }
        if let Some(g) = self.gamma {
            writeln!(f, "gamma {}.", g.name())?;
        }
        if let Some(n) = self.term_depth {
            writeln!(f, "term-depth {n}.")?;
        }
        if let Some(n) = self.formula_size {
            writeln!(f, "formula-size {n}.")?;
        }
        for h in &self.hints {
            writeln!(f, "hint {h}.")?;
        }
        Ok(())
    }
}
