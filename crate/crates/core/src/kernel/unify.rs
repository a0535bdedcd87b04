use super::{Atom, Literal, Subst, Term};

/// Most general unifier of two terms, with occurs check.
pub fn unify_terms(l: &Term, r: &Term) -> Option<Subst> {
    unify_terms_with(l, r, Subst::new())
}

/// Extends `s` to a most general unifier of `l` and `r`.
pub fn unify_terms_with(l: &Term, r: &Term, mut s: Subst) -> Option<Subst> {
    let mut stack = vec![(l.clone(), r.clone())];
    while let Some((a, b)) = stack.pop() {
        let a = s.apply(&a);
        let b = s.apply(&b);
        if a == b {
            continue;
        }
        match (&a, &b) {
            (Term::Var(v), t) | (t, Term::Var(v)) => {
                if t.contains_var(*v) {
                    return None;
                }
                s.bind(*v, t.clone());
            }
            (Term::App(f, xs), Term::App(g, ys)) => {
                if f != g || xs.len() != ys.len() {
                    return None;
                }
                for (x, y) in xs.iter().zip(ys.iter()).rev() {
                    stack.push((x.clone(), y.clone()));
                }
            }
        }
    }
    Some(s)
}

/// Syntactic unification of atoms; equations are not treated symmetrically.
pub fn unify_atoms(l: &Atom, r: &Atom) -> Option<Subst> {
    unify_atoms_with(l, r, Subst::new())
}

pub(crate) fn unify_atoms_with(l: &Atom, r: &Atom, s: Subst) -> Option<Subst> {
    match (l, r) {
        (Atom::Eq(a, b), Atom::Eq(c, d)) => {
            let s = unify_terms_with(a, c, s)?;
            unify_terms_with(b, d, s)
        }
        (Atom::Pred(p, xs), Atom::Pred(q, ys)) if p == q && xs.len() == ys.len() => {
            xs.iter()
                .zip(ys)
                .try_fold(s, |s, (x, y)| unify_terms_with(x, y, s))
        }
        _ => None,
    }
}

/// Unifies two literals of the same sign.
pub fn unify_literals(l: &Literal, r: &Literal) -> Option<Subst> {
    if l.positive != r.positive {
        return None;
    }
    unify_atoms(&l.atom, &r.atom)
}

/// One-sided unification: `σ` with `pattern σ = target`, binding only
/// variables of `pattern`.
pub fn match_term(pattern: &Term, target: &Term, s: &mut Subst) -> bool {
    match pattern {
        Term::Var(v) => match s.get(*v) {
            Some(t) => t == target,
            None => {
                s.insert_raw(*v, target.clone());
                true
            }
        },
        Term::App(f, xs) => match target {
            Term::App(g, ys) if f == g && xs.len() == ys.len() => {
                xs.iter().zip(ys.iter()).all(|(x, y)| match_term(x, y, s))
            }
            _ => false,
        },
    }
}

pub fn match_atom(pattern: &Atom, target: &Atom, s: &mut Subst) -> bool {
    match (pattern, target) {
        (Atom::Eq(a, b), Atom::Eq(c, d)) => match_term(a, c, s) && match_term(b, d, s),
        (Atom::Pred(p, xs), Atom::Pred(q, ys)) if p == q && xs.len() == ys.len() => {
            xs.iter().zip(ys).all(|(x, y)| match_term(x, y, s))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Signature, Var};

    #[test]
    fn unify_sum_with_successor() {
        let mut sig = Signature::new();
        let zero = Term::constant(sig.add_function("0", 0).unwrap());
        let s = sig.add_function("s", 1).unwrap();
        let plus = sig.add_function("+", 2).unwrap();
        let (x, y, z) = (Var::named("x"), Var::named("y"), Var::named("z"));
        let l = Term::binary(plus, Term::Var(x), zero.clone());
        let r = Term::binary(plus, Term::unary(s, Term::Var(y)), Term::Var(z));
        let mgu = unify_terms(&l, &r).unwrap();
        assert_eq!(mgu.get(x), Some(&Term::unary(s, Term::Var(y))));
        assert_eq!(mgu.get(z), Some(&zero));
        assert_eq!(mgu.len(), 2);
        assert_eq!(mgu.apply(&l), mgu.apply(&r));
    }

    #[test]
    fn occurs_check_fails() {
        let mut sig = Signature::new();
        let s = sig.add_function("s", 1).unwrap();
        let x = Var::named("x");
        assert!(unify_terms(&Term::Var(x), &Term::unary(s, Term::Var(x))).is_none());
    }

    #[test]
    fn identical_ground_atoms_give_empty_unifier() {
        let mut sig = Signature::new();
        let p = sig.add_predicate("p", 1).unwrap();
        let a = Term::constant(sig.add_function("a", 0).unwrap());
        let atom = Atom::Pred(p, vec![a]);
        assert_eq!(unify_atoms(&atom, &atom), Some(Subst::new()));
    }
}
