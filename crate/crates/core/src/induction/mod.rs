//! Induction axioms and the induction rules that add their clause forms to
//! a saturation run.

mod engine;
mod gamma;

pub use engine::{apply_hints, Hint, HintError, HintKind, InductionConfig, InductionEngine, RuleKind};
pub use gamma::{enumerate_gamma_instances, enumerate_templates, formula_size, GammaClass, TemplateSpec};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::clausify::clausify_sentence;
use crate::kernel::notation::ArithSyms;
use crate::kernel::{Atom, Clause, Formula, Literal, Subst, Sym, Term, Var};
use crate::saturation::{Conclusion, Inference, InductionRecord, InductionRule};
use crate::skolem::Language;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InductionError {
    #[error("induction parameter `{0}` is not ground")]
    NonGroundParameter(String),
    #[error("formula `{0}` is not in the induction class {1}")]
    NotInGamma(String, &'static str),
    #[error("formula uses symbol `{0}` outside the current language")]
    OutsideLanguage(String),
    #[error("selected literal is not ground")]
    NonGroundLiteral,
    #[error("constant does not occur in the selected literal")]
    ConstantNotInLiteral,
    #[error("a generalization must leave at least one occurrence of the constant")]
    NothingLeft,
    #[error("a generalization must abstract at least one occurrence")]
    NothingAbstracted,
    #[error("double induction needs two distinct variables")]
    SameVariable,
    #[error("variable occurs inside the scope of Skolem symbol in `{0}`")]
    SkolemScope(String),
    #[error("literal index {0} out of range")]
    BadLiteral(usize),
}

/// `Ĩ_xφ = φ(0) ∧ ∀x(φ(x) → φ(s(x))) → ∀xφ(x)`.
pub fn open_induction_axiom(a: &ArithSyms, phi: &Formula, x: Var) -> Formula {
    let base = phi.instantiate(x, &a.zero());
    let step = Formula::forall(
        x,
        Formula::implies(phi.clone(), phi.instantiate(x, &a.s(Term::Var(x)))),
    );
    Formula::implies(Formula::and(base, step), Formula::forall(x, phi.clone()))
}

/// `I_xφ`: the axiom closed over the free variables of `φ` other than `x`.
pub fn make_induction_axiom(a: &ArithSyms, phi: &Formula, x: Var) -> Formula {
    let params: Vec<Var> = phi.free_vars().into_iter().filter(|v| *v != x).collect();
    Formula::forall_many(&params, open_induction_axiom(a, phi, x))
}

/// `I_(x,y)γ`: double induction, closed over the remaining free variables.
pub fn make_double_induction_axiom(
    a: &ArithSyms,
    gamma: &Formula,
    x: Var,
    y: Var,
) -> Result<Formula, InductionError> {
    if x == y {
        return Err(InductionError::SameVariable);
    }
    let sx = a.s(Term::Var(x));
    let sy = a.s(Term::Var(y));
    let at = |f: &Formula, u: &Term, v: &Term| {
        // Simultaneous substitution so that `x ↦ s(y)` never captures.
        f.apply(&Subst::from_pairs(vec![(x, u.clone()), (y, v.clone())]))
    };
    let left = Formula::forall(x, at(gamma, &Term::Var(x), &a.zero()));
    let right = Formula::forall(y, at(gamma, &a.zero(), &Term::Var(y)));
    let step = Formula::forall_many(&[x, y], Formula::implies(gamma.clone(), at(gamma, &sx, &sy)));
    let concl = Formula::forall_many(&[x, y], gamma.clone());
    let body = Formula::implies(Formula::and(left, Formula::and(right, step)), concl);
    let params: Vec<Var> = gamma
        .free_vars()
        .into_iter()
        .filter(|v| *v != x && *v != y)
        .collect();
    Ok(Formula::forall_many(&params, body))
}

fn check_language(lang: &Language, f: &Formula) -> Result<(), InductionError> {
    for s in f.syms() {
        if lang.sig.get(s).is_none() {
            return Err(InductionError::OutsideLanguage(format!("#{}", s.0)));
        }
    }
    Ok(())
}

fn check_skolem_scope(lang: &Language, clauses: &[Clause]) -> Result<(), InductionError> {
    for c in clauses {
        for l in c.literals() {
            if !lang.skolem_args_ground(&l.atom.terms()) {
                return Err(InductionError::SkolemScope(lang.printer().clause(c)));
            }
        }
    }
    Ok(())
}

fn conclusions(clauses: Vec<Clause>, parents: Vec<usize>, record: InductionRecord) -> Vec<Conclusion> {
    clauses
        .into_iter()
        .map(|clause| Conclusion {
            clause,
            parents: parents.clone(),
            unifier: Subst::new(),
            inference: Inference::Induction(record.clone()),
        })
        .collect()
}

/// `CNF(sk^∃(I_xφ))`.
pub fn ind_clauses(lang: &mut Language, a: &ArithSyms, phi: &Formula, x: Var) -> Vec<Clause> {
    clausify_sentence(lang, &make_induction_axiom(a, phi, x))
}

/// The unrestricted rule: any formula of the current language.
pub fn apply_ind_unrestricted(
    lang: &mut Language,
    a: &ArithSyms,
    phi: &Formula,
    x: Var,
) -> Result<Vec<Conclusion>, InductionError> {
    check_language(lang, phi)?;
    let clauses = ind_clauses(lang, a, phi, x);
    let record = InductionRecord {
        rule: InductionRule::Ind,
        formula: phi.clone(),
        vars: vec![x],
        params: vec![],
        selected: None,
    };
    Ok(conclusions(clauses, vec![], record))
}

/// The restricted rule: `template` must be in `gamma` (over the Skolem-free
/// base language when `skolem_free` is set), `slots` are replaced by the
/// ground `params`.
pub fn apply_ind_restricted(
    lang: &mut Language,
    a: &ArithSyms,
    gamma: GammaClass,
    template: &Formula,
    x: Var,
    slots: &[Var],
    params: &[Term],
    skolem_free: bool,
) -> Result<Vec<Conclusion>, InductionError> {
    if let Some(p) = params.iter().find(|p| !p.is_ground()) {
        return Err(InductionError::NonGroundParameter(lang.printer().term(p)));
    }
    let base: Option<BTreeSet<Sym>> = skolem_free.then(|| {
        lang.sig
            .symbols()
            .filter(|(_, i)| !i.is_skolem())
            .map(|(s, _)| s)
            .collect()
    });
    if !gamma.contains(template, base.as_ref()) {
        return Err(InductionError::NotInGamma(
            lang.printer().formula(template),
            gamma.name(),
        ));
    }
    let subst = Subst::from_pairs(slots.iter().copied().zip(params.iter().cloned()));
    let phi = template.apply(&subst);
    check_language(lang, &phi)?;
    let clauses = ind_clauses(lang, a, &phi, x);
    check_skolem_scope(lang, &clauses)?;
    let record = InductionRecord {
        rule: InductionRule::IndGamma,
        formula: phi,
        vars: vec![x],
        params: params.to_vec(),
        selected: None,
    };
    Ok(conclusions(clauses, vec![], record))
}

/// `CNF(sk^∃(I_(x,y)γ))`.
pub fn double_clauses(
    lang: &mut Language,
    a: &ArithSyms,
    gamma: &Formula,
    x: Var,
    y: Var,
) -> Result<Vec<Clause>, InductionError> {
    let ax = make_double_induction_axiom(a, gamma, x, y)?;
    Ok(clausify_sentence(lang, &ax))
}

pub fn apply_double(
    lang: &mut Language,
    a: &ArithSyms,
    gamma: &Formula,
    x: Var,
    y: Var,
    params: &[Term],
) -> Result<Vec<Conclusion>, InductionError> {
    check_language(lang, gamma)?;
    let clauses = double_clauses(lang, a, gamma, x, y)?;
    let record = InductionRecord {
        rule: InductionRule::Double,
        formula: gamma.clone(),
        vars: vec![x, y],
        params: params.to_vec(),
        selected: None,
    };
    Ok(conclusions(clauses, vec![], record))
}

/// `CNF(sk^∃(φ → φ))` for the universal closure of `φ`.
pub fn lemma_clauses(lang: &mut Language, phi: &Formula) -> Vec<Clause> {
    let closed = phi.universal_closure();
    clausify_sentence(lang, &Formula::implies(closed.clone(), closed))
}

pub fn lemma_rule(lang: &mut Language, phi: &Formula) -> Result<Vec<Conclusion>, InductionError> {
    check_language(lang, phi)?;
    let clauses = lemma_clauses(lang, phi);
    let record = InductionRecord {
        rule: InductionRule::Lemma,
        formula: phi.clone(),
        vars: vec![],
        params: vec![],
        selected: None,
    };
    Ok(conclusions(clauses, vec![], record))
}

/// The clauses of `CNF(sk^∃(¬(l(0) ∧ ∀x(l(x) → l(s(x))))))`, each extended
/// by `context`.
pub fn analytic_clauses(
    lang: &mut Language,
    a: &ArithSyms,
    l: &Formula,
    x: Var,
    context: &[Literal],
) -> Vec<Clause> {
    let base = l.instantiate(x, &a.zero());
    let step = Formula::forall(x, Formula::implies(l.clone(), l.instantiate(x, &a.s(Term::Var(x)))));
    let hyp = Formula::not(Formula::and(base, step));
    let params: Vec<Var> = l.free_vars().into_iter().filter(|v| *v != x).collect();
    clausify_sentence(lang, &Formula::forall_many(&params, hyp))
        .into_iter()
        .map(|c| {
            let offset = c.var_bound();
            let mut lits = c.literals().to_vec();
            let ctx = Clause::new(context.to_vec());
            lits.extend(ctx.shifted_literals(offset));
            Clause::new(lits)
        })
        .collect()
}

/// Occurrence positions of constant `a` in a literal, in pre-order; each
/// entry is the atom-level path (argument index, then term path).
pub fn constant_occurrences(lit: &Literal, a: Sym) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for (i, t) in lit.atom.terms().into_iter().enumerate() {
        for p in t.all_positions() {
            if matches!(t.at(&p), Some(Term::App(f, args)) if *f == a && args.is_empty()) {
                let mut full = vec![i];
                full.extend(p);
                out.push(full);
            }
        }
    }
    out
}

fn replace_occurrences(atom: &Atom, paths: &[Vec<usize>], by: &Term) -> Atom {
    let mut terms: Vec<Term> = atom.terms().into_iter().cloned().collect();
    for p in paths {
        terms[p[0]] = terms[p[0]].replace_at(&p[1..], by.clone());
    }
    match atom {
        Atom::Eq(..) => Atom::Eq(terms[0].clone(), terms[1].clone()),
        Atom::Pred(s, _) => Atom::Pred(*s, terms),
    }
}

/// The induction literal `l(x)` of an analytic step: the complement of the
/// selected literal with the chosen occurrences of `a` replaced by `x`.
pub fn analytic_literal(selected: &Literal, paths: &[Vec<usize>], x: Var) -> Formula {
    let atom = replace_occurrences(&selected.atom, paths, &Term::Var(x));
    let l = Literal {
        positive: !selected.positive,
        atom,
    };
    l.to_formula()
}

fn aind(
    lang: &mut Language,
    a: &ArithSyms,
    premise: (usize, &Clause),
    selected: usize,
    constant: Sym,
    subset: Option<&[usize]>,
) -> Result<Vec<Conclusion>, InductionError> {
    let (pid, clause) = premise;
    let lit = clause
        .literals()
        .get(selected)
        .ok_or(InductionError::BadLiteral(selected))?;
    if !lit.is_ground() {
        return Err(InductionError::NonGroundLiteral);
    }
    let occ = constant_occurrences(lit, constant);
    if occ.is_empty() {
        return Err(InductionError::ConstantNotInLiteral);
    }
    let (paths, rule): (Vec<Vec<usize>>, InductionRule) = match subset {
        None => (occ, InductionRule::Aind1),
        Some(idx) => {
            if idx.is_empty() {
                return Err(InductionError::NothingAbstracted);
            }
            if idx.len() >= occ.len() {
                return Err(InductionError::NothingLeft);
            }
            (idx.iter().map(|i| occ[*i].clone()).collect(), InductionRule::Aind2)
        }
    };
    let x = Var::named("x");
    let l = analytic_literal(lit, &paths, x);
    let mut context = clause.literals().to_vec();
    context.remove(selected);
    let clauses = analytic_clauses(lang, a, &l, x, &context);
    let record = InductionRecord {
        rule,
        formula: l,
        vars: vec![x],
        params: vec![Term::constant(constant)],
        selected: Some(selected),
    };
    Ok(conclusions(clauses, vec![pid], record))
}

/// Analytic literal induction generalizing every occurrence of `constant`.
pub fn apply_aind1(
    lang: &mut Language,
    a: &ArithSyms,
    premise: (usize, &Clause),
    selected: usize,
    constant: Sym,
) -> Result<Vec<Conclusion>, InductionError> {
    aind(lang, a, premise, selected, constant, None)
}

/// Analytic literal induction generalizing the occurrences listed in
/// `generalize` (indices into the pre-order occurrence list); at least one
/// occurrence must stay.
pub fn apply_aind2(
    lang: &mut Language,
    a: &ArithSyms,
    premise: (usize, &Clause),
    selected: usize,
    constant: Sym,
    generalize: &[usize],
) -> Result<Vec<Conclusion>, InductionError> {
    aind(lang, a, premise, selected, constant, Some(generalize))
}

/// Re-derives the clause set of a recorded induction step. `premise` is
/// the parent clause for analytic rules.
pub fn rebuild_clauses(
    lang: &mut Language,
    a: &ArithSyms,
    record: &InductionRecord,
    premise: Option<&Clause>,
) -> Result<Vec<Clause>, InductionError> {
    match record.rule {
        InductionRule::Ind | InductionRule::IndGamma => {
            let x = *record.vars.first().ok_or(InductionError::SameVariable)?;
            let clauses = ind_clauses(lang, a, &record.formula, x);
            if record.rule == InductionRule::IndGamma {
                check_skolem_scope(lang, &clauses)?;
            }
            Ok(clauses)
        }
        InductionRule::Double => match record.vars.as_slice() {
            [x, y] => double_clauses(lang, a, &record.formula, *x, *y),
            _ => Err(InductionError::SameVariable),
        },
        InductionRule::Lemma => Ok(lemma_clauses(lang, &record.formula)),
        InductionRule::Aind1 | InductionRule::Aind2 => {
            let sel = record.selected.ok_or(InductionError::BadLiteral(0))?;
            let premise = premise.ok_or(InductionError::BadLiteral(sel))?;
            if sel >= premise.len() {
                return Err(InductionError::BadLiteral(sel));
            }
            let x = *record.vars.first().ok_or(InductionError::SameVariable)?;
            let mut context = premise.literals().to_vec();
            context.remove(sel);
            Ok(analytic_clauses(lang, a, &record.formula, x, &context))
        }
    }
}

#[cfg(test)]
mod tests;
