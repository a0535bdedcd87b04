//! Canonical inner Skolemization.
//!
//! A strong quantifier `Qx A` is replaced by a term `𝔰(y₁,…,yₙ)` whose
//! symbol is determined by `Qx A` itself: the key is the formula with bound
//! variables renamed canonically and free variables renamed `F0, F1, …` in
//! order of first occurrence, and the arguments are those free variables in
//! the same order. Alpha-equivalent formulas, and formulas that differ only
//! in the names of their free variables, therefore share a symbol.
//!
//! The stage of a Skolem symbol is one more than the largest stage among the
//! symbols of its key (base symbols have stage 0).

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::kernel::{Formula, Printer, Quant, Signature, Sym, Term, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SkolemError {
    #[error("symbol {0:?} is not part of the language")]
    UnknownSymbol(Sym),
}

/// The canonical name of a Skolem symbol: the quantified formula `Qx A`
/// in canonical form. Its arity is the number of free variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkolemKey {
    formula: Formula,
    arity: usize,
}

impl SkolemKey {
    /// Key of `Qx body`, together with the free variables of `Qx body` in
    /// first-occurrence order (the arguments of the Skolem term).
    pub fn new(q: Quant, x: Var, body: &Formula) -> (SkolemKey, Vec<Var>) {
        let quantified = Formula::Quant(q, x, Box::new(body.clone()));
        let (formula, free) = quantified.canonical_form();
        (
            SkolemKey {
                formula,
                arity: free.len(),
            },
            free,
        )
    }

    pub fn quant(&self) -> Quant {
        match &self.formula {
            Formula::Quant(q, _, _) => *q,
            _ => unreachable!("skolem keys are quantified formulas"),
        }
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

/// Append-only bijection between keys and Skolem symbols.
#[derive(Clone, Default, Debug)]
pub struct SkolemTable {
    by_key: HashMap<SkolemKey, Sym>,
    keys: BTreeMap<Sym, SkolemKey>,
    per_stage: BTreeMap<u32, usize>,
}

impl SkolemTable {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, sym: Sym) -> Option<&SkolemKey> {
        self.keys.get(&sym)
    }

    pub fn lookup(&self, key: &SkolemKey) -> Option<Sym> {
        self.by_key.get(key).copied()
    }

    /// Skolem symbols in creation order.
    pub fn symbols(&self) -> impl Iterator<Item = (Sym, &SkolemKey)> {
        self.keys.iter().map(|(s, k)| (*s, k))
    }
}

/// One row of the Skolem dictionary emitted with proofs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkolemEntry {
    pub name: String,
    pub alias: Option<String>,
    pub arity: usize,
    pub stage: u32,
    pub key: String,
}

/// A signature together with the Skolem table that extends it.
#[derive(Clone, Default, Debug)]
pub struct Language {
    pub sig: Signature,
    pub skolem: SkolemTable,
}

impl Language {
    pub fn new(sig: Signature) -> Self {
        Language {
            sig,
            skolem: SkolemTable::default(),
        }
    }

    pub fn printer(&self) -> Printer<'_> {
        Printer::new(&self.sig)
    }

    /// The symbol for `key`, created on first request.
    pub fn skolem_symbol_for(&mut self, key: &SkolemKey) -> Sym {
        if let Some(sym) = self.skolem.lookup(key) {
            return sym;
        }
        let stage = 1 + key
            .formula
            .syms()
            .iter()
            .map(|s| self.sig.info(*s).stage())
            .max()
            .unwrap_or(0);
        let counter = self.skolem.per_stage.entry(stage).or_insert(0);
        let sym = self.sig.add_skolem(key.arity, stage, *counter);
        *counter += 1;
        self.skolem.by_key.insert(key.clone(), sym);
        self.skolem.keys.insert(sym, key.clone());
        sym
    }

    /// The Skolem term `𝔰_{Qx body}(ȳ)`.
    pub fn skolem_term(&mut self, q: Quant, x: Var, body: &Formula) -> Term {
        let (key, free) = SkolemKey::new(q, x, body);
        let sym = self.skolem_symbol_for(&key);
        Term::app(sym, free.into_iter().map(Term::Var).collect())
    }

    pub fn stage_of(&self, sym: Sym) -> Result<u32, SkolemError> {
        self.sig
            .get(sym)
            .map(|info| info.stage())
            .ok_or(SkolemError::UnknownSymbol(sym))
    }

    /// `sk^Q(φ)`: replaces the strong quantifiers of `φ` for polarity `q`
    /// (positive `q`, negative dual) by canonical Skolem terms, outermost
    /// first.
    pub fn sk(&mut self, f: &Formula, q: Quant) -> Formula {
        match f {
            Formula::Atom(_) => f.clone(),
            Formula::Not(a) => Formula::not(self.sk(a, q.dual())),
            Formula::And(a, b) => {
                let a = self.sk(a, q);
                Formula::and(a, self.sk(b, q))
            }
            Formula::Or(a, b) => {
                let a = self.sk(a, q);
                Formula::or(a, self.sk(b, q))
            }
            Formula::Implies(a, b) => {
                let a = self.sk(a, q.dual());
                Formula::implies(a, self.sk(b, q))
            }
            Formula::Quant(q2, x, a) if *q2 == q => {
                let t = self.skolem_term(q, *x, a);
                let inst = a.instantiate(*x, &t);
                self.sk(&inst, q)
            }
            Formula::Quant(q2, x, a) => Formula::Quant(*q2, *x, Box::new(self.sk(a, q))),
        }
    }

    /// `sk^∃(φ)`.
    pub fn sk_exists(&mut self, f: &Formula) -> Formula {
        self.sk(f, Quant::Exists)
    }

    /// The Skolem axiom for `Qx φ`: `∃xφ → φ[x↦𝔰(ȳ)]` or `φ[x↦𝔰(ȳ)] → ∀xφ`.
    pub fn skolem_axiom(&mut self, q: Quant, f: &Formula, x: Var) -> Formula {
        let t = self.skolem_term(q, x, f);
        let inst = f.instantiate(x, &t);
        let quantified = Formula::Quant(q, x, Box::new(f.clone()));
        match q {
            Quant::Exists => Formula::implies(quantified, inst),
            Quant::Forall => Formula::implies(inst, quantified),
        }
    }

    pub fn set_alias(&mut self, sym: Sym, alias: &str) -> Result<(), crate::kernel::KernelError> {
        self.sig.set_alias(sym, alias)
    }

    pub fn dictionary(&self) -> Vec<SkolemEntry> {
        let p = self.printer();
        self.skolem
            .symbols()
            .map(|(sym, key)| {
                let info = self.sig.info(sym);
                SkolemEntry {
                    name: info.name.clone(),
                    alias: info.alias.clone(),
                    arity: info.arity,
                    stage: info.stage(),
                    key: p.formula(key.formula()),
                }
            })
            .collect()
    }

    /// True if every application of a Skolem symbol inside `terms` has
    /// ground arguments.
    pub fn skolem_args_ground(&self, terms: &[&Term]) -> bool {
        fn check(lang: &Language, t: &Term) -> bool {
            match t {
                Term::Var(_) => true,
                Term::App(f, args) => {
                    (!lang.sig.info(*f).is_skolem() || args.iter().all(Term::is_ground))
                        && args.iter().all(|a| check(lang, a))
                }
            }
        }
        terms.iter().all(|t| check(self, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Atom;

    fn lang_with_p() -> (Language, Sym) {
        let mut sig = Signature::new();
        let p = sig.add_predicate("P", 3).unwrap();
        (Language::new(sig), p)
    }

    #[test]
    fn worked_example() {
        let (mut lang, p) = lang_with_p();
        let (x, y, z) = (Var::named("x"), Var::named("y"), Var::named("z"));
        let body = Formula::pred(p, vec![Term::Var(x), Term::Var(y), Term::Var(z)]);
        let f = Formula::exists(x, Formula::forall(y, Formula::exists(z, body)));
        let out = lang.sk_exists(&f);
        let Formula::Quant(Quant::Forall, y2, inner) = &out else {
            panic!("expected a universal, got {out:?}");
        };
        assert_eq!(*y2, y);
        let Formula::Atom(Atom::Pred(_, args)) = inner.as_ref() else {
            panic!()
        };
        let c = args[0].head().unwrap();
        let fsym = args[2].head().unwrap();
        assert_eq!(args[0], Term::constant(c));
        assert_eq!(args[1], Term::Var(y));
        assert_eq!(args[2], Term::unary(fsym, Term::Var(y)));
        assert_eq!(lang.stage_of(c), Ok(1));
        assert_eq!(lang.stage_of(fsym), Ok(2));
        assert_eq!(lang.sig.arity(fsym), 1);
        assert_eq!(lang.stage_of(p), Ok(0));
        assert!(lang.stage_of(Sym(99)).is_err());
        // Idempotent on its own output.
        assert_eq!(lang.sk_exists(&out), out);
    }

    #[test]
    fn same_key_same_symbol() {
        let (mut lang, p) = lang_with_p();
        let c = lang.sig.add_function("c", 0).unwrap();
        let (y, z, w) = (Var::named("y"), Var::named("z"), Var::named("w"));
        let body = |v: Var, b: Var| {
            Formula::pred(p, vec![Term::constant(c), Term::Var(v), Term::Var(b)])
        };
        let t1 = lang.skolem_term(Quant::Exists, z, &body(y, z));
        let t2 = lang.skolem_term(Quant::Exists, z, &body(y, z));
        let t3 = lang.skolem_term(Quant::Exists, w, &body(y, w));
        assert_eq!(t1, t2);
        assert_eq!(t1, t3);
        assert_eq!(lang.skolem.len(), 1);
        assert_eq!(lang.sig.arity(t1.head().unwrap()), 1);
    }

    #[test]
    fn negated_universal_becomes_constant() {
        let mut sig = Signature::new();
        let q = sig.add_predicate("q", 1).unwrap();
        let mut lang = Language::new(sig);
        let x = Var::named("x");
        let f = Formula::not(Formula::forall(x, Formula::pred(q, vec![Term::Var(x)])));
        let out = lang.sk_exists(&f);
        let (sym, key) = lang.skolem.symbols().next().unwrap();
        assert_eq!(key.quant(), Quant::Forall);
        assert_eq!(out, Formula::not(Formula::pred(q, vec![Term::constant(sym)])));
    }

    #[test]
    fn skolem_axioms() {
        let mut sig = Signature::new();
        let p = sig.add_predicate("p", 1).unwrap();
        let q = sig.add_predicate("q", 2).unwrap();
        let mut lang = Language::new(sig);
        let (x, y) = (Var::named("x"), Var::named("y"));
        let px = Formula::pred(p, vec![Term::Var(x)]);
        let ax = lang.skolem_axiom(Quant::Exists, &px, x);
        let c = lang.skolem.symbols().next().unwrap().0;
        assert_eq!(
            ax,
            Formula::implies(
                Formula::exists(x, px.clone()),
                Formula::pred(p, vec![Term::constant(c)])
            )
        );
        let qxy = Formula::pred(q, vec![Term::Var(x), Term::Var(y)]);
        let ax = lang.skolem_axiom(Quant::Forall, &qxy, x);
        let g = lang.skolem.symbols().nth(1).unwrap().0;
        assert_eq!(
            ax,
            Formula::implies(
                Formula::pred(q, vec![Term::unary(g, Term::Var(y)), Term::Var(y)]),
                Formula::forall(x, qxy)
            )
        );
        // Vacuous quantifier: the instance is the body itself.
        let py = Formula::pred(p, vec![Term::Var(y)]);
        let ax = lang.skolem_axiom(Quant::Exists, &py, x);
        assert_eq!(ax, Formula::implies(Formula::exists(x, py.clone()), py));
    }
}
