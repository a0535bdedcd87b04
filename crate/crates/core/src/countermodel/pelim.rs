//! Eliminating the predecessor symbol by shifting the variable.
//!
//! For a one-variable term `t(x)` there is an `N` and a `p`-free `t′` with
//! `t(s^N(x)) = t′(x)` provable from the base axioms, and likewise for
//! quantifier-free formulas. The functions follow the structural
//! recursions of those arguments; `N` is not minimized.

use crate::kernel::notation::ArithSyms;
use crate::kernel::{Atom, Formula, Subst, Term, Var};

use super::{contains_p, formula_var, term_var, CountermodelError};

fn shift(a: &ArithSyms, t: &Term, x: Var, k: u64) -> Term {
    if k == 0 {
        return t.clone();
    }
    Subst::single(x, a.succ_pow(k, Term::Var(x))).apply(t)
}

/// For non-ground `p`-free `t(x)`, a `p`-free `t′(x)` with
/// `t(s(x)) = s(t′(x))`.
pub fn shift_successor(a: &ArithSyms, t: &Term) -> Result<Term, CountermodelError> {
    if contains_p(a, t) {
        return Err(CountermodelError::ContainsP);
    }
    let x = term_var(t)?.ok_or(CountermodelError::Ground)?;
    shift_succ(a, t, x)
}

fn shift_succ(a: &ArithSyms, t: &Term, x: Var) -> Result<Term, CountermodelError> {
    match t {
        Term::Var(_) => Ok(t.clone()),
        Term::App(f, args) if *f == a.succ => Ok(shift(a, &args[0], x, 1)),
        Term::App(f, args) if *f == a.plus => {
            let (u1, u2) = (&args[0], &args[1]);
            if !u2.is_ground() {
                Ok(a.add(shift(a, u1, x, 1), shift_succ(a, u2, x)?))
            } else {
                let k = a.value(u2).ok_or(CountermodelError::ContainsP)?;
                Ok(a.succ_pow(k, shift_succ(a, u1, x)?))
            }
        }
        Term::App(f, _) if *f == a.pred => Err(CountermodelError::ContainsP),
        Term::App(f, _) => Err(CountermodelError::OutsideLanguage(format!("#{}", f.0))),
    }
}

/// `(N, t′)` with `t(s^N(x)) = t′(x)` and `t′` free of `p`.
pub fn eliminate_p_term(a: &ArithSyms, t: &Term) -> Result<(u64, Term), CountermodelError> {
    let x = term_var(t)?;
    elim(a, t, x)
}

fn elim(a: &ArithSyms, t: &Term, x: Option<Var>) -> Result<(u64, Term), CountermodelError> {
    if t.is_ground() {
        let k = a
            .value(t)
            .ok_or_else(|| CountermodelError::OutsideLanguage(format!("{t:?}")))?;
        return Ok((0, a.numeral(k)));
    }
    let x = x.expect("non-ground term has its variable");
    match t {
        Term::Var(_) => Ok((0, t.clone())),
        Term::App(f, args) if *f == a.succ => {
            let (n, u) = elim(a, &args[0], Some(x))?;
            Ok((n, a.s(u)))
        }
        Term::App(f, args) if *f == a.pred => {
            let (n, u) = elim(a, &args[0], Some(x))?;
            Ok((n + 1, shift_succ(a, &u, x)?))
        }
        Term::App(f, args) if *f == a.plus => {
            let (n1, u1) = elim(a, &args[0], Some(x))?;
            let (n2, u2) = elim(a, &args[1], Some(x))?;
            let n = n1.max(n2);
            Ok((n, a.add(shift(a, &u1, x, n - n1), shift(a, &u2, x, n - n2))))
        }
        Term::App(f, _) => Err(CountermodelError::OutsideLanguage(format!("#{}", f.0))),
    }
}

fn elim_atom(a: &ArithSyms, atom: &Atom, x: Var) -> Result<(u64, Atom), CountermodelError> {
    let Atom::Eq(l, r) = atom else {
        return Err(CountermodelError::OutsideLanguage("predicate".into()));
    };
    let (n1, l1) = elim(a, l, Some(x))?;
    let (n2, r1) = elim(a, r, Some(x))?;
    let n = n1.max(n2);
    Ok((n, Atom::Eq(shift(a, &l1, x, n - n1), shift(a, &r1, x, n - n2))))
}

/// `(N, φ′)` with `φ(s^N(x)) ↔ φ′(x)` and `φ′` free of `p`.
pub fn eliminate_p_formula(a: &ArithSyms, phi: &Formula) -> Result<(u64, Formula), CountermodelError> {
    let Some(x) = formula_var(phi)? else {
        // Ground atoms: replace both sides by numerals.
        let mut err = None;
        let out = phi.map_atoms(&mut |atom| match elim_atom(a, atom, Var::named("x")) {
            Ok((_, at)) => Formula::Atom(at),
            Err(e) => {
                err.get_or_insert(e);
                Formula::Atom(atom.clone())
            }
        });
        return err.map_or(Ok((0, out)), Err);
    };
    let mut per_atom = Vec::new();
    for atom in phi.atoms() {
        let (n, at) = elim_atom(a, &atom, x)?;
        per_atom.push((atom, n, at));
    }
    let m = per_atom.iter().map(|(_, n, _)| *n).max().unwrap_or(0);
    let out = phi.map_atoms(&mut |atom| {
        let (_, n, at) = per_atom.iter().find(|(orig, _, _)| orig == atom).expect("atom listed");
        Formula::Atom(at.map_terms(|t| shift(a, t, x, m - n)))
    });
    Ok((m, out))
}
