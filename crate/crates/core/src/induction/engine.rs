//! Firing policy: hint-driven applications before the run, or an
//! exhaustive extension that applies the configured rule during it.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::kernel::notation::ArithSyms;
use crate::kernel::{Clause, Formula, Sym, Term, Var};
use crate::saturation::{Conclusion, Extension, View};
use crate::skolem::Language;
use crate::syntax::{read_sexpr, tokenize, FreeVars, Reader, SExpr, SyntaxError, Token};

use super::gamma::{base_symbols, enumerate_templates, ground_terms_up_to, template_slots, TemplateSpec};
use super::{
    apply_aind1, apply_aind2, apply_double, apply_ind_restricted, apply_ind_unrestricted,
    constant_occurrences, lemma_rule, GammaClass, InductionError,
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RuleKind {
    Ind,
    IndGamma,
    Aind1,
    Aind2,
    Double,
    None,
}

impl RuleKind {
    pub fn parse(s: &str) -> Option<RuleKind> {
        Some(match s {
            "ind" => RuleKind::Ind,
            "ind-gamma" => RuleKind::IndGamma,
            "aind1" => RuleKind::Aind1,
            "aind2" => RuleKind::Aind2,
            "double" => RuleKind::Double,
            "none" => RuleKind::None,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            RuleKind::Ind => "ind",
            RuleKind::IndGamma => "ind-gamma",
            RuleKind::Aind1 => "aind1",
            RuleKind::Aind2 => "aind2",
            RuleKind::Double => "double",
            RuleKind::None => "none",
        }
    }
}

#[derive(Clone, Debug)]
pub struct InductionConfig {
    pub rule: RuleKind,
    pub gamma: GammaClass,
    /// Depth bound for ground parameters.
    pub term_depth: usize,
    /// Size bound for induction templates.
    pub formula_size: usize,
    /// Number of parameter slots in templates.
    pub slots: usize,
    /// Pool applications per activated clause.
    pub per_given: usize,
    /// Maximal number of occurrence subsets tried per literal and constant.
    pub aind2_cap: usize,
}

impl Default for InductionConfig {
    fn default() -> Self {
        InductionConfig {
            rule: RuleKind::None,
            gamma: GammaClass::Literal,
            term_depth: 1,
            formula_size: 5,
            slots: 2,
            per_given: 1,
            aind2_cap: 16,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HintKind {
    Induct { var: String },
    DoubleInduct { x: String, y: String },
    Lemma,
}

/// A deterministic induction request. Formulas are kept unresolved because
/// they may name Skolem constants introduced by earlier hints.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hint {
    pub kind: HintKind,
    pub formula: SExpr,
    pub params: Vec<SExpr>,
    /// Names given to the Skolem symbols this hint introduces.
    pub aliases: Vec<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HintError {
    #[error("hint syntax: {0}")]
    Syntax(String),
    #[error(transparent)]
    Read(#[from] SyntaxError),
    #[error(transparent)]
    Induction(#[from] InductionError),
    #[error("hint `{hint}` is not allowed under rule {rule}")]
    NotAllowed { hint: String, rule: &'static str },
    #[error("alias `{0}` is already in use")]
    AliasTaken(String),
}

impl Hint {
    /// Parses `induct F on x with (t ...) [as a ...]`,
    /// `double-induct F on (x y) with (...) [as ...]` or `lemma F [as ...]`.
    pub fn parse(line: &str) -> Result<Hint, HintError> {
        let toks: Vec<(Token, usize)> = tokenize(line)
            .into_iter()
            .filter(|(t, _)| *t != Token::Dot)
            .collect();
        let mut pos = 0;
        let err = |m: &str| HintError::Syntax(format!("{m} in `{}`", line.trim()));
        let word = |pos: &mut usize| -> Option<String> {
            match toks.get(*pos) {
                Some((Token::Word(w), _)) => {
                    *pos += 1;
                    Some(w.clone())
                }
                _ => None,
            }
        };
        let head = word(&mut pos).ok_or_else(|| err("missing hint keyword"))?;
        let formula = read_sexpr(&toks, &mut pos)?;
        let mut kind = HintKind::Lemma;
        let mut params = Vec::new();
        if head == "induct" || head == "double-induct" {
            if word(&mut pos).as_deref() != Some("on") {
                return Err(err("expected `on`"));
            }
            kind = if head == "induct" {
                HintKind::Induct {
                    var: word(&mut pos).ok_or_else(|| err("expected a variable"))?,
                }
            } else {
                match read_sexpr(&toks, &mut pos)? {
                    SExpr::List(v) if v.len() == 2 && v.iter().all(|e| e.as_atom().is_some()) => {
                        HintKind::DoubleInduct {
                            x: v[0].as_atom().unwrap().to_string(),
                            y: v[1].as_atom().unwrap().to_string(),
                        }
                    }
                    _ => return Err(err("expected `(x y)`")),
                }
            };
            if word(&mut pos).as_deref() != Some("with") {
                return Err(err("expected `with`"));
            }
            match read_sexpr(&toks, &mut pos)? {
                SExpr::List(v) => params = v,
                _ => return Err(err("expected a parenthesized parameter list")),
            }
        } else if head != "lemma" {
            return Err(err("unknown hint keyword"));
        }
        let mut aliases = Vec::new();
        if pos < toks.len() {
            if word(&mut pos).as_deref() != Some("as") {
                return Err(err("trailing input"));
            }
            while let Some(a) = word(&mut pos) {
                aliases.push(a);
            }
            if pos < toks.len() || aliases.is_empty() {
                return Err(err("expected alias names after `as`"));
            }
        }
        Ok(Hint {
            kind,
            formula,
            params,
            aliases,
        })
    }

    /// Parses a hint file: one hint per non-empty line, `;` comments.
    pub fn parse_file(text: &str) -> Result<Vec<Hint>, HintError> {
        text.lines()
            .filter(|l| !l.split(';').next().unwrap_or("").trim().is_empty())
            .map(Hint::parse)
            .collect()
    }

    fn apply(
        &self,
        lang: &mut Language,
        a: &ArithSyms,
        config: &InductionConfig,
    ) -> Result<Vec<Conclusion>, HintError> {
        let not_allowed = || HintError::NotAllowed {
            hint: self.to_string(),
            rule: config.rule.name(),
        };
        let params: Vec<Term> = {
            let mut r = Reader::new(&lang.sig, FreeVars::None);
            self.params.iter().map(|p| r.term(p)).collect::<Result<_, _>>()?
        };
        match &self.kind {
            HintKind::Induct { var } => {
                let phi = Reader::new(&lang.sig, FreeVars::Only([var.clone()].into())).formula(&self.formula)?;
                let x = Var::named(var);
                match config.rule {
                    RuleKind::Ind => {
                        let mut out = apply_ind_unrestricted(lang, a, &phi, x)?;
                        for c in &mut out {
                            if let crate::saturation::Inference::Induction(r) = &mut c.inference {
                                r.params = params.clone();
                            }
                        }
                        Ok(out)
                    }
                    RuleKind::IndGamma => {
                        let (template, slots) = abstract_params(&phi, &params);
                        Ok(apply_ind_restricted(
                            lang,
                            a,
                            config.gamma,
                            &template,
                            x,
                            &slots,
                            &params,
                            true,
                        )?)
                    }
                    _ => Err(not_allowed()),
                }
            }
            HintKind::DoubleInduct { x, y } => {
                if config.rule != RuleKind::Double {
                    return Err(not_allowed());
                }
                let free: BTreeSet<String> = [x.clone(), y.clone()].into();
                let gamma = Reader::new(&lang.sig, FreeVars::Only(free)).formula(&self.formula)?;
                Ok(apply_double(lang, a, &gamma, Var::named(x), Var::named(y), &params)?)
            }
            HintKind::Lemma => {
                let phi = Reader::new(&lang.sig, FreeVars::None).formula(&self.formula)?;
                Ok(lemma_rule(lang, &phi)?)
            }
        }
    }
}

impl fmt::Display for Hint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = SExpr::List(self.params.clone());
        match &self.kind {
            HintKind::Induct { var } => write!(f, "induct {} on {var} with {params}", self.formula)?,
            HintKind::DoubleInduct { x, y } => {
                write!(f, "double-induct {} on ({x} {y}) with {params}", self.formula)?
            }
            HintKind::Lemma => write!(f, "lemma {}", self.formula)?,
        }
        if !self.aliases.is_empty() {
            write!(f, " as {}", self.aliases.join(" "))?;
        }
        Ok(())
    }
}

/// Replaces each parameter term by a slot variable `z1, z2, ...`.
fn abstract_params(phi: &Formula, params: &[Term]) -> (Formula, Vec<Var>) {
    let slots: Vec<Var> = (1..=params.len()).map(|i| Var::named(&format!("z{i}"))).collect();
    let template = phi.map_atoms(&mut |atom| {
        Formula::Atom(atom.map_terms(|t| {
            params
                .iter()
                .zip(&slots)
                .fold(t.clone(), |acc, (p, z)| acc.replace_all(p, &Term::Var(*z)))
        }))
    });
    (template, slots)
}

/// Applies the hints in order and names the Skolem symbols each one
/// introduces.
pub fn apply_hints(
    lang: &mut Language,
    a: &ArithSyms,
    config: &InductionConfig,
    hints: &[Hint],
) -> Result<Vec<Conclusion>, HintError> {
    let mut out = Vec::new();
    for h in hints {
        let before = lang.skolem.len();
        out.extend(h.apply(lang, a, config)?);
        let fresh: Vec<Sym> = lang.skolem.symbols().skip(before).map(|(s, _)| s).collect();
        for (sym, alias) in fresh.into_iter().zip(&h.aliases) {
            if lang.sig.lookup(alias).is_some() {
                return Err(HintError::AliasTaken(alias.clone()));
            }
            lang.set_alias(sym, alias)
                .map_err(|_| HintError::AliasTaken(alias.clone()))?;
        }
    }
    Ok(out)
}

/// Round-robin cursor over templates and ground parameter tuples.
struct Pool {
    spec: TemplateSpec,
    templates: Vec<(Formula, Vec<Var>)>,
    cursors: Vec<u64>,
    ground: Vec<Term>,
    sig_len: usize,
    next: usize,
    /// Emit each template once with its slots left free first.
    free_first: bool,
}

impl Pool {
    fn new(lang: &Language, config: &InductionConfig) -> Pool {
        let spec = if config.rule == RuleKind::Double {
            TemplateSpec::double(config.slots)
        } else {
            TemplateSpec::single(config.slots)
        };
        let (funcs, preds) = base_symbols(&lang.sig);
        let templates = enumerate_templates(config.gamma, &lang.sig, &funcs, &preds, &spec, config.formula_size)
            .into_iter()
            .map(|t| {
                let slots = if config.gamma == GammaClass::Forall1ParamFree {
                    Vec::new()
                } else {
                    template_slots(&t, &spec)
                };
                (t, slots)
            })
            .collect::<Vec<_>>();
        let n = templates.len();
        Pool {
            spec,
            templates,
            cursors: vec![0; n],
            ground: Vec::new(),
            sig_len: 0,
            next: 0,
            free_first: config.rule == RuleKind::Ind,
        }
    }

    /// Rebuilds the parameter terms over the current signature. Returns
    /// false if the signature has not grown since the last rebuild.
    fn refresh(&mut self, lang: &Language, depth: usize) -> bool {
        if lang.sig.len() == self.sig_len {
            return false;
        }
        let all: Vec<Sym> = lang.sig.functions().map(|(s, _)| s).collect();
        self.ground = ground_terms_up_to(&lang.sig, &all, depth);
        self.sig_len = lang.sig.len();
        self.cursors.iter_mut().for_each(|c| *c = 0);
        true
    }

    /// Next instance not in `done`: template index and parameters (`None`
    /// for the free-slot variant).
    fn next(&mut self, done: &mut HashSet<(usize, Option<Vec<Term>>)>) -> Option<(usize, Option<Vec<Term>>)> {
        let n = self.templates.len();
        let g = self.ground.len() as u64;
        let mut idle = 0;
        while idle < n {
            let i = self.next;
            self.next = (self.next + 1) % n;
            let k = self.templates[i].1.len() as u32;
            let extra = u64::from(self.free_first && k > 0);
            let total = g.checked_pow(k).map_or(u64::MAX, |t| t.saturating_add(extra));
            let mut found = None;
            while self.cursors[i] < total {
                let c = self.cursors[i];
                self.cursors[i] += 1;
                let params = if c < extra {
                    None
                } else {
                    let mut idx = c - extra;
                    let mut ps = vec![Term::Var(Var::indexed(0)); k as usize];
                    for slot in (0..k as usize).rev() {
                        ps[slot] = self.ground[(idx % g) as usize].clone();
                        idx /= g;
                    }
                    Some(ps)
                };
                if done.insert((i, params.clone())) {
                    found = Some(params);
                    break;
                }
            }
            match found {
                Some(p) => return Some((i, p)),
                None => idle += 1,
            }
        }
        None
    }
}

/// Exhaustive application of the configured rule during saturation.
pub struct InductionEngine {
    a: ArithSyms,
    config: InductionConfig,
    pool: Option<Pool>,
    done: HashSet<(usize, Option<Vec<Term>>)>,
    applications: u64,
}

impl InductionEngine {
    pub fn new(a: ArithSyms, config: InductionConfig) -> Self {
        InductionEngine {
            a,
            config,
            pool: None,
            done: HashSet::new(),
            applications: 0,
        }
    }

    fn from_pool(&mut self, lang: &mut Language) -> Vec<Conclusion> {
        let mut out = Vec::new();
        for _ in 0..self.config.per_given {
            let pool = self.pool.get_or_insert_with(|| Pool::new(lang, &self.config));
            if pool.sig_len == 0 {
                pool.refresh(lang, self.config.term_depth);
            }
            // Symbols introduced since the last rebuild (mostly Skolem
            // constants of earlier applications) join the parameter terms
            // once the current instances are used up.
            let next = match pool.next(&mut self.done) {
                None if pool.refresh(lang, self.config.term_depth) => pool.next(&mut self.done),
                n => n,
            };
            let Some((i, params)) = next else {
                break;
            };
            let (template, slots) = pool.templates[i].clone();
            let ind = pool.spec.ind_vars.clone();
            let res = match (self.config.rule, params) {
                (RuleKind::Ind, None) => apply_ind_unrestricted(lang, &self.a, &template, ind[0]),
                (RuleKind::Double, params) => {
                    let params = params.unwrap_or_default();
                    let s = crate::kernel::Subst::from_pairs(slots.iter().copied().zip(params.iter().cloned()));
                    apply_double(lang, &self.a, &template.apply(&s), ind[0], ind[1], &params)
                }
                (_, params) => apply_ind_restricted(
                    lang,
                    &self.a,
                    self.config.gamma,
                    &template,
                    ind[0],
                    &slots,
                    &params.unwrap_or_default(),
                    true,
                ),
            };
            // Pool instances are well-formed by construction; a rejected one
            // (Skolem scope) is skipped.
            if let Ok(cs) = res {
                self.applications += 1;
                out.extend(cs);
            }
        }
        out
    }

    fn analytic(&mut self, lang: &mut Language, id: usize, clause: &Clause) -> Vec<Conclusion> {
        let mut out = Vec::new();
        for (li, lit) in clause.literals().iter().enumerate() {
            if !lit.is_ground() {
                continue;
            }
            let mut consts: Vec<Sym> = Vec::new();
            for t in lit.atom.terms() {
                let mut syms = BTreeSet::new();
                t.collect_syms(&mut syms);
                for s in syms {
                    if lang.sig.arity(s) == 0 && s != self.a.zero && !consts.contains(&s) {
                        consts.push(s);
                    }
                }
            }
            for c in consts {
                if let Ok(cs) = apply_aind1(lang, &self.a, (id, clause), li, c) {
                    self.applications += 1;
                    out.extend(cs);
                }
                if self.config.rule != RuleKind::Aind2 {
                    continue;
                }
                let n = constant_occurrences(lit, c).len().min(16);
                let full: u32 = (1u32 << n) - 1;
                for (tried, mask) in (1..full).enumerate() {
                    if tried >= self.config.aind2_cap {
                        break;
                    }
                    let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                    if let Ok(cs) = apply_aind2(lang, &self.a, (id, clause), li, c, &subset) {
                        self.applications += 1;
                        out.extend(cs);
                    }
                }
            }
        }
        out
    }
}

impl Extension for InductionEngine {
    fn on_start(&mut self, _lang: &mut Language, _view: &View<'_>) -> Vec<Conclusion> {
        Vec::new()
    }

    fn on_given(&mut self, lang: &mut Language, given: usize, view: &View<'_>) -> Vec<Conclusion> {
        match self.config.rule {
            RuleKind::None => Vec::new(),
            RuleKind::Aind1 | RuleKind::Aind2 => {
                let clause = view.steps[given].clause.clone();
                self.analytic(lang, given, &clause)
            }
            RuleKind::Ind | RuleKind::IndGamma | RuleKind::Double => self.from_pool(lang),
        }
    }

    fn applications(&self) -> u64 {
        self.applications
    }
}
