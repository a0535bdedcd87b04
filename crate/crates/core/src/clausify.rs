//! Negation normal form, clause normal form by distribution, clausification
//! of sentences through `sk^∃`, and the rewriting that isolates a function
//! symbol in equations `x = f(t̄)`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::kernel::{Atom, Clause, Formula, Literal, Quant, Sym, Term, Var};
use crate::skolem::Language;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClausifyError {
    #[error("formula is not universal: an existential quantifier remains in negation normal form")]
    NotUniversal,
}

/// Negation normal form: implications removed, negations on atoms only.
pub fn nnf(f: &Formula) -> Formula {
    nnf_signed(f, true)
}

fn nnf_signed(f: &Formula, positive: bool) -> Formula {
    match f {
        Formula::Atom(_) => {
            if positive {
                f.clone()
            } else {
                Formula::not(f.clone())
            }
        }
        Formula::Not(g) => nnf_signed(g, !positive),
        Formula::And(a, b) if positive => Formula::and(nnf_signed(a, true), nnf_signed(b, true)),
        Formula::And(a, b) => Formula::or(nnf_signed(a, false), nnf_signed(b, false)),
        Formula::Or(a, b) if positive => Formula::or(nnf_signed(a, true), nnf_signed(b, true)),
        Formula::Or(a, b) => Formula::and(nnf_signed(a, false), nnf_signed(b, false)),
        Formula::Implies(a, b) if positive => {
            Formula::or(nnf_signed(a, false), nnf_signed(b, true))
        }
        Formula::Implies(a, b) => Formula::and(nnf_signed(a, true), nnf_signed(b, false)),
        Formula::Quant(q, x, g) => {
            let q = if positive { *q } else { q.dual() };
            Formula::Quant(q, *x, Box::new(nnf_signed(g, positive)))
        }
    }
}

/// Clauses of a universal formula. Free variables are read universally.
/// Tautologies are dropped and duplicate clauses merged, keeping first
/// occurrences in order.
pub fn clausify_universal(f: &Formula) -> Result<Vec<Clause>, ClausifyError> {
    let n = nnf(f);
    let mut used: BTreeSet<Var> = n.all_vars();
    let matrix = strip_universals(&n, &mut used)?;
    let mut out: Vec<Clause> = Vec::new();
    for lits in cnf(&matrix) {
        let c = Clause::new(lits);
        if !c.is_tautology() && !out.contains(&c) {
            out.push(c);
        }
    }
    Ok(out)
}

fn strip_universals(f: &Formula, used: &mut BTreeSet<Var>) -> Result<Formula, ClausifyError> {
    Ok(match f {
        Formula::Atom(_) | Formula::Not(_) => f.clone(),
        Formula::And(a, b) => Formula::and(strip_universals(a, used)?, strip_universals(b, used)?),
        Formula::Or(a, b) => Formula::or(strip_universals(a, used)?, strip_universals(b, used)?),
        Formula::Implies(..) => unreachable!("input is in negation normal form"),
        Formula::Quant(Quant::Exists, _, _) => return Err(ClausifyError::NotUniversal),
        Formula::Quant(Quant::Forall, x, g) => {
            let mut i = 0;
            let fresh = loop {
                let v = Var::indexed(i);
                if !used.contains(&v) {
                    break v;
                }
                i += 1;
            };
            used.insert(fresh);
            let g = g.instantiate(*x, &Term::Var(fresh));
            strip_universals(&g, used)?
        }
    })
}

/// Distributes a quantifier-free NNF formula into a list of literal lists.
fn cnf(f: &Formula) -> Vec<Vec<Literal>> {
    match f {
        Formula::Atom(a) => vec![vec![Literal::pos(a.clone())]],
        Formula::Not(g) => match g.as_ref() {
            Formula::Atom(a) => vec![vec![Literal::neg(a.clone())]],
            _ => unreachable!("input is in negation normal form"),
        },
        Formula::And(a, b) => {
            let mut out = cnf(a);
            out.extend(cnf(b));
            out
        }
        Formula::Or(a, b) => {
            let (ca, cb) = (cnf(a), cnf(b));
            let mut out = Vec::with_capacity(ca.len() * cb.len());
            for x in &ca {
                for y in &cb {
                    let mut lits = x.clone();
                    lits.extend(y.iter().cloned());
                    out.push(lits);
                }
            }
            out
        }
        Formula::Implies(..) | Formula::Quant(..) => {
            unreachable!("input is quantifier-free and in negation normal form")
        }
    }
}

/// `CNF(sk^∃(φ))`.
pub fn clausify_sentence(lang: &mut Language, f: &Formula) -> Vec<Clause> {
    let sk = lang.sk_exists(f);
    clausify_universal(&sk).expect("sk^∃ output has no strong quantifiers")
}

/// Union of `CNF(sk^∃(φ))` over a list of sentences, without duplicates.
pub fn clausify_all(lang: &mut Language, fs: &[Formula]) -> Vec<Clause> {
    let mut out: Vec<Clause> = Vec::new();
    for f in fs {
        for c in clausify_sentence(lang, f) {
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

fn is_isolated(a: &Atom, f: Sym) -> bool {
    let ok = |v: &Term, t: &Term| {
        v.is_var() && t.head() == Some(f) && t.args().iter().all(|u| !u.contains_sym(f))
    };
    matches!(a, Atom::Eq(l, r) if ok(l, r) || ok(r, l))
}

/// Leftmost innermost `f`-term whose arguments do not mention `f`.
fn innermost(t: &Term, f: Sym) -> Option<Term> {
    match t {
        Term::Var(_) => None,
        Term::App(g, args) => args
            .iter()
            .find_map(|a| innermost(a, f))
            .or_else(|| (*g == f).then(|| t.clone())),
    }
}

fn fresh_name(used: &mut BTreeSet<Var>) -> Var {
    const NAMES: [&str; 6] = ["x", "y", "z", "w", "v", "u"];
    let pick = NAMES
        .iter()
        .map(|n| Var::named(n))
        .find(|v| !used.contains(v))
        .unwrap_or_else(|| {
            (1..)
                .map(|i| Var::named(&format!("x{i}")))
                .find(|v| !used.contains(v))
                .expect("infinitely many names")
        });
    used.insert(pick);
    pick
}

/// An equivalent formula in which `f` occurs only in atoms `x = f(t̄)` with
/// `f` not occurring in `t̄`. An atom `A(u)` with an innermost `f`-term `u`
/// is rewritten to `∀v(v = u → A(v))`, repeatedly.
pub fn isolate_function_symbol(phi: &Formula, f: Sym) -> Formula {
    let mut used = phi.all_vars();
    phi.map_atoms(&mut |a| isolate_atom(a, f, &mut used))
}

fn isolate_atom(a: &Atom, f: Sym, used: &mut BTreeSet<Var>) -> Formula {
    if is_isolated(a, f) {
        return Formula::Atom(a.clone());
    }
    let Some(u) = a.terms().into_iter().find_map(|t| innermost(t, f)) else {
        return Formula::Atom(a.clone());
    };
    let v = fresh_name(used);
    let vt = Term::Var(v);
    let rest = a.map_terms(|t| t.replace_all(&u, &vt));
    Formula::forall(
        v,
        Formula::implies(Formula::eq(vt.clone(), u), isolate_atom(&rest, f, used)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::semantics::Interpretation;
    use crate::kernel::Signature;

    #[test]
    fn distribution_example() {
        let mut sig = Signature::new();
        let p = sig.add_predicate("p", 1).unwrap();
        let q = sig.add_predicate("q", 1).unwrap();
        let r = sig.add_predicate("r", 1).unwrap();
        let x = Var::named("x");
        let at = |s: Sym| Formula::pred(s, vec![Term::Var(x)]);
        let f = Formula::forall(x, Formula::and(at(p), Formula::or(at(q), at(r))));
        let cs = clausify_universal(&f).unwrap();
        let v = Term::Var(Var::indexed(0));
        assert_eq!(
            cs,
            vec![
                Clause::new(vec![Literal::pos(Atom::Pred(p, vec![v.clone()]))]),
                Clause::new(vec![
                    Literal::pos(Atom::Pred(q, vec![v.clone()])),
                    Literal::pos(Atom::Pred(r, vec![v])),
                ]),
            ]
        );
    }

    #[test]
    fn rejects_existentials() {
        let mut sig = Signature::new();
        let p = sig.add_predicate("p", 1).unwrap();
        let x = Var::named("x");
        let f = Formula::exists(x, Formula::pred(p, vec![Term::Var(x)]));
        assert_eq!(clausify_universal(&f), Err(ClausifyError::NotUniversal));
        // Under a negation the existential is universal.
        assert!(clausify_universal(&Formula::not(f)).is_ok());
    }

    #[test]
    fn existential_sentence_gets_constant() {
        let mut sig = Signature::new();
        let p = sig.add_predicate("p", 1).unwrap();
        let mut lang = Language::new(sig);
        let x = Var::named("x");
        let cs = clausify_sentence(&mut lang, &Formula::exists(x, Formula::pred(p, vec![Term::Var(x)])));
        let c = lang.skolem.symbols().next().unwrap().0;
        assert_eq!(
            cs,
            vec![Clause::unit(Literal::pos(Atom::Pred(p, vec![Term::constant(c)])))]
        );
    }

    fn equivalent_on_small_models(sig: &Signature, syms: &[Sym], a: &Formula, b: &Formula) -> bool {
        for size in 1..=2 {
            let n = Interpretation::count(sig, syms, size).unwrap();
            for i in 0..n {
                let m = Interpretation::from_index(sig, syms, size, i);
                if m.satisfies(a) != m.satisfies(b) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn isolation_examples() {
        let mut sig = Signature::new();
        let f = sig.add_function("f", 1).unwrap();
        let a_sym = sig.add_function("a", 0).unwrap();
        let a = Term::constant(a_sym);
        let p = sig.add_predicate("p", 1).unwrap();
        let q = sig.add_predicate("q", 1).unwrap();
        let (x, y) = (Var::named("x"), Var::named("y"));
        let fa = Term::unary(f, a.clone());

        let phi = Formula::pred(p, vec![fa.clone()]);
        let want = Formula::forall(
            x,
            Formula::implies(Formula::eq(Term::Var(x), fa.clone()), Formula::pred(p, vec![Term::Var(x)])),
        );
        assert!(isolate_function_symbol(&phi, f).alpha_eq(&want));

        let phi = Formula::pred(q, vec![Term::unary(f, fa.clone())]);
        let want = Formula::forall(
            x,
            Formula::implies(
                Formula::eq(Term::Var(x), fa.clone()),
                Formula::forall(
                    y,
                    Formula::implies(
                        Formula::eq(Term::Var(y), Term::unary(f, Term::Var(x))),
                        Formula::pred(q, vec![Term::Var(y)]),
                    ),
                ),
            ),
        );
        let got = isolate_function_symbol(&phi, f);
        assert!(got.alpha_eq(&want), "{got:?}");
        assert!(equivalent_on_small_models(&sig, &[f, a_sym, q], &phi, &got));

        let plain = Formula::pred(p, vec![a]);
        assert_eq!(isolate_function_symbol(&plain, f), plain);
    }
}
