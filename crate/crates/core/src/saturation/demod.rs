//! Rewriting with unit equations (superposition mode only).

use crate::kernel::{match_term, Atom, Clause, Literal, Subst};

use super::infer::{atom_positions, atom_replace, atom_subterm};
use super::kbo::Kbo;
use super::trace::Rewrite;

const MAX_REWRITES: usize = 1000;

/// Applies one recorded rewrite. Returns `None` if it does not apply or
/// does not decrease the term in the ordering.
pub fn rewrite_at(c: &Clause, unit: &Clause, left_to_right: bool, lit: usize, path: &[usize]) -> Option<Clause> {
    let [eq] = unit.literals() else { return None };
    let Atom::Eq(a, b) = &eq.atom else { return None };
    if !eq.positive {
        return None;
    }
    let (l, r) = if left_to_right { (a, b) } else { (b, a) };
    let target = c.literals().get(lit)?;
    let u = atom_subterm(&target.atom, path)?;
    let mut s = Subst::new();
    if !match_term(l, u, &mut s) {
        return None;
    }
    if r.vars().iter().any(|v| s.get(*v).is_none()) {
        return None;
    }
    let rhs = s.apply(r);
    if !Kbo.greater(u, &rhs) {
        return None;
    }
    let mut lits = c.literals().to_vec();
    lits[lit] = Literal {
        positive: target.positive,
        atom: atom_replace(&target.atom, path, rhs),
    };
    Some(Clause::new(lits))
}

/// Rewrites `c` to normal form with the given unit equations, leftmost
/// outermost first. Returns the result and the rewrites performed, or
/// `None` if nothing applies.
pub fn normalize(c: &Clause, units: &[(usize, &Clause)]) -> Option<(Clause, Vec<Rewrite>)> {
    let mut cur = c.clone();
    let mut done = Vec::new();
    'outer: while done.len() < MAX_REWRITES {
        for (li, lit) in cur.literals().iter().enumerate() {
            for path in atom_positions(&lit.atom, false) {
                for &(uid, unit) in units {
                    for l2r in [true, false] {
                        if let Some(next) = rewrite_at(&cur, unit, l2r, li, &path) {
                            done.push(Rewrite {
                                unit: uid,
                                left_to_right: l2r,
                                lit: li,
                                path,
                            });
                            cur = next;
                            continue 'outer;
                        }
                    }
                }
            }
        }
        break;
    }
    (!done.is_empty()).then_some((cur, done))
}

/// True if some subterm of `c` is an instance of a side of `unit` that the
/// ordering lets it rewrite.
pub fn can_rewrite(c: &Clause, unit: &Clause) -> bool {
    c.literals().iter().enumerate().any(|(li, lit)| {
        atom_positions(&lit.atom, false)
            .iter()
            .any(|p| [true, false].iter().any(|&d| rewrite_at(c, unit, d, li, p).is_some()))
    })
}

/// Positive unit equations, the only clauses used for rewriting.
pub fn is_rewrite_rule(c: &Clause) -> bool {
    matches!(c.literals(), [l] if l.positive && l.is_equality())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::notation::ArithSyms;
    use crate::kernel::{Signature, Term, Var};

    #[test]
    fn rewrites_with_right_unit_axioms() {
        let mut sig = Signature::new();
        let a = ArithSyms::declare(&mut sig).unwrap();
        let c = Term::constant(sig.add_function("c", 0).unwrap());
        let x = Term::Var(Var::named("x"));
        let y = Term::Var(Var::named("y"));
        let a4 = Clause::unit(Literal::eq(a.add(x.clone(), a.zero()), x.clone()));
        let a5 = Clause::unit(Literal::eq(a.add(x.clone(), a.s(y.clone())), a.s(a.add(x, y))));
        let goal = Clause::unit(Literal::neq(a.add(c.clone(), a.numeral(1)), a.s(c.clone())));
        let (out, steps) = normalize(&goal, &[(0, &a4), (1, &a5)]).unwrap();
        assert_eq!(out, Clause::unit(Literal::neq(a.s(c.clone()), a.s(c))));
        assert_eq!(steps.len(), 2);
    }
}
