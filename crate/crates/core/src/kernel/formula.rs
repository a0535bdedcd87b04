use std::collections::{BTreeMap, BTreeSet};

use super::{Subst, Sym, Term, Var};

/// An atomic formula. Equality is built in.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Atom {
    Eq(Term, Term),
    Pred(Sym, Vec<Term>),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Quant {
    Forall,
    Exists,
}

impl Quant {
    pub fn dual(self) -> Quant {
        match self {
            Quant::Forall => Quant::Exists,
            Quant::Exists => Quant::Forall,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Formula {
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Quant(Quant, Var, Box<Formula>),
}

impl Atom {
    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::Eq(l, r) => vec![l, r],
            Atom::Pred(_, args) => args.iter().collect(),
        }
    }

    pub fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> Atom {
        match self {
            Atom::Eq(l, r) => Atom::Eq(f(l), f(r)),
            Atom::Pred(p, args) => Atom::Pred(*p, args.iter().map(f).collect()),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.terms().into_iter().all(Term::is_ground)
    }

    pub fn collect_vars(&self, out: &mut Vec<Var>) {
        for t in self.terms() {
            t.collect_vars(out);
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_syms(&self, out: &mut BTreeSet<Sym>) {
        if let Atom::Pred(p, _) = self {
            out.insert(*p);
        }
        for t in self.terms() {
            t.collect_syms(out);
        }
    }

    pub fn apply(&self, s: &Subst) -> Atom {
        self.map_terms(|t| s.apply(t))
    }

    /// Number of symbol occurrences, counting the predicate (or `=`) itself.
    pub fn symbol_count(&self) -> usize {
        1 + self
            .terms()
            .into_iter()
            .map(|t| t.size() - t.vars_with_multiplicity())
            .sum::<usize>()
    }
}

impl Term {
    fn vars_with_multiplicity(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => args.iter().map(Term::vars_with_multiplicity).sum(),
        }
    }
}

impl Formula {
    pub fn atom(a: Atom) -> Formula {
        Formula::Atom(a)
    }

    pub fn eq(l: Term, r: Term) -> Formula {
        Formula::Atom(Atom::Eq(l, r))
    }

    pub fn neq(l: Term, r: Term) -> Formula {
        Formula::not(Formula::eq(l, r))
    }

    pub fn pred(p: Sym, args: Vec<Term>) -> Formula {
        Formula::Atom(Atom::Pred(p, args))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(x: Var, f: Formula) -> Formula {
        Formula::Quant(Quant::Forall, x, Box::new(f))
    }

    pub fn exists(x: Var, f: Formula) -> Formula {
        Formula::Quant(Quant::Exists, x, Box::new(f))
    }

    pub fn forall_many(vars: &[Var], f: Formula) -> Formula {
        vars.iter().rev().fold(f, |acc, &v| Formula::forall(v, acc))
    }

    /// Right-nested conjunction; `None` for an empty list.
    pub fn conj(items: Vec<Formula>) -> Option<Formula> {
        let mut it = items.into_iter().rev();
        let last = it.next()?;
        Some(it.fold(last, |acc, f| Formula::and(f, acc)))
    }

    /// Right-nested disjunction; `None` for an empty list.
    pub fn disj(items: Vec<Formula>) -> Option<Formula> {
        let mut it = items.into_iter().rev();
        let last = it.next()?;
        Some(it.fold(last, |acc, f| Formula::or(f, acc)))
    }

    /// Universal closure over the free variables in first-occurrence order.
    pub fn universal_closure(&self) -> Formula {
        Formula::forall_many(&self.free_vars(), self.clone())
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut Vec<Var>) {
        match self {
            Formula::Atom(a) => {
                for v in a.vars() {
                    if !bound.contains(&v) && !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Quant(_, x, f) => {
                bound.push(*x);
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable occurring anywhere (free, bound or as a binder).
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.walk_atoms(&mut |a| out.extend(a.vars()));
        let mut binders = Vec::new();
        self.collect_binders(&mut binders);
        out.extend(binders);
        out
    }

    fn collect_binders(&self, out: &mut Vec<Var>) {
        match self {
            Formula::Atom(_) => {}
            Formula::Not(f) => f.collect_binders(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_binders(out);
                b.collect_binders(out);
            }
            Formula::Quant(_, x, f) => {
                out.push(*x);
                f.collect_binders(out);
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.is_quantifier_free() && b.is_quantifier_free()
            }
            Formula::Quant(..) => false,
        }
    }

    pub fn walk_atoms(&self, f: &mut impl FnMut(&Atom)) {
        match self {
            Formula::Atom(a) => f(a),
            Formula::Not(g) => g.walk_atoms(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.walk_atoms(f);
                b.walk_atoms(f);
            }
            Formula::Quant(_, _, g) => g.walk_atoms(f),
        }
    }

    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        self.walk_atoms(&mut |a| out.push(a.clone()));
        out
    }

    pub fn syms(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        self.walk_atoms(&mut |a| a.collect_syms(&mut out));
        out
    }

    /// Number of non-variable symbol occurrences (function, predicate and `=`).
    pub fn symbol_count(&self) -> usize {
        let mut n = 0;
        self.walk_atoms(&mut |a| n += a.symbol_count());
        n
    }

    /// Applies `f` to every atom, leaving binders untouched.
    pub fn map_atoms(&self, f: &mut impl FnMut(&Atom) -> Formula) -> Formula {
        match self {
            Formula::Atom(a) => f(a),
            Formula::Not(g) => Formula::not(g.map_atoms(f)),
            Formula::And(a, b) => Formula::and(a.map_atoms(f), b.map_atoms(f)),
            Formula::Or(a, b) => Formula::or(a.map_atoms(f), b.map_atoms(f)),
            Formula::Implies(a, b) => Formula::implies(a.map_atoms(f), b.map_atoms(f)),
            Formula::Quant(q, x, g) => Formula::Quant(*q, *x, Box::new(g.map_atoms(f))),
        }
    }

    /// Capture-avoiding substitution for the free variables. A binder that
    /// would capture a variable of the range is renamed to a primed variant.
    pub fn apply(&self, s: &Subst) -> Formula {
        if s.is_empty() {
            return self.clone();
        }
        match self {
            Formula::Atom(a) => Formula::Atom(a.apply(s)),
            Formula::Not(f) => Formula::not(f.apply(s)),
            Formula::And(a, b) => Formula::and(a.apply(s), b.apply(s)),
            Formula::Or(a, b) => Formula::or(a.apply(s), b.apply(s)),
            Formula::Implies(a, b) => Formula::implies(a.apply(s), b.apply(s)),
            Formula::Quant(q, x, body) => {
                let inner = s.without(*x);
                let body_free = body.free_vars();
                let relevant: Vec<Var> = body_free
                    .iter()
                    .copied()
                    .filter(|v| *v != *x && inner.get(*v).is_some())
                    .collect();
                let captures = relevant
                    .iter()
                    .any(|v| inner.get(*v).is_some_and(|t| t.contains_var(*x)));
                if !captures {
                    return Formula::Quant(*q, *x, Box::new(body.apply(&inner)));
                }
                let mut avoid: BTreeSet<Var> = body_free.iter().copied().collect();
                for v in &relevant {
                    if let Some(t) = inner.get(*v) {
                        avoid.extend(t.vars());
                    }
                }
                let mut fresh = x.primed();
                while avoid.contains(&fresh) {
                    fresh = fresh.primed();
                }
                let mut inner = inner;
                inner.insert_raw(*x, Term::Var(fresh));
                Formula::Quant(*q, fresh, Box::new(body.apply(&inner)))
            }
        }
    }

    /// Replaces the free variable `x` by `t`.
    pub fn instantiate(&self, x: Var, t: &Term) -> Formula {
        self.apply(&Subst::single(x, t.clone()))
    }

    /// Renames bound variables to canonical names `B0, B1, ...` in binder
    /// pre-order. Free variables are kept. Idempotent, and alpha-equivalent
    /// inputs give identical outputs.
    pub fn alpha_normalize(&self) -> Formula {
        let mut counter = 0;
        self.alpha_rec(&mut BTreeMap::new(), &mut counter, &mut |_| None)
    }

    /// Alpha-normal form with free variables also renamed, to `F0, F1, ...`
    /// in first-occurrence order. Returns the renamed formula and the
    /// original free variables in that order.
    pub fn canonical_form(&self) -> (Formula, Vec<Var>) {
        let free = self.free_vars();
        let map: BTreeMap<Var, Var> = free
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, Var::canonical_free(i as u32)))
            .collect();
        let mut counter = 0;
        let f = self.alpha_rec(&mut BTreeMap::new(), &mut counter, &mut |v| map.get(&v).copied());
        (f, free)
    }

    fn alpha_rec(
        &self,
        bound: &mut BTreeMap<Var, Vec<Var>>,
        counter: &mut u32,
        free: &mut impl FnMut(Var) -> Option<Var>,
    ) -> Formula {
        match self {
            Formula::Atom(a) => {
                let rename = |t: &Term, free: &mut dyn FnMut(Var) -> Option<Var>| {
                    t.map_vars(&mut |v| match bound.get(&v).and_then(|s| s.last()) {
                        Some(b) => Term::Var(*b),
                        None => Term::Var(free(v).unwrap_or(v)),
                    })
                };
                Formula::Atom(match a {
                    Atom::Eq(l, r) => Atom::Eq(rename(l, free), rename(r, free)),
                    Atom::Pred(p, args) => {
                        Atom::Pred(*p, args.iter().map(|t| rename(t, free)).collect())
                    }
                })
            }
            Formula::Not(f) => Formula::not(f.alpha_rec(bound, counter, free)),
            Formula::And(a, b) => {
                let a = a.alpha_rec(bound, counter, free);
                Formula::and(a, b.alpha_rec(bound, counter, free))
            }
            Formula::Or(a, b) => {
                let a = a.alpha_rec(bound, counter, free);
                Formula::or(a, b.alpha_rec(bound, counter, free))
            }
            Formula::Implies(a, b) => {
                let a = a.alpha_rec(bound, counter, free);
                Formula::implies(a, b.alpha_rec(bound, counter, free))
            }
            Formula::Quant(q, x, f) => {
                let b = Var::canonical_bound(*counter);
                *counter += 1;
                bound.entry(*x).or_default().push(b);
                let body = f.alpha_rec(bound, counter, free);
                bound.get_mut(x).expect("binder stack").pop();
                Formula::Quant(*q, b, Box::new(body))
            }
        }
    }

    pub fn alpha_eq(&self, other: &Formula) -> bool {
        self.alpha_normalize() == other.alpha_normalize()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Signature;

    fn setup() -> (Signature, Sym, Sym) {
        let mut sig = Signature::new();
        let p = sig.add_predicate("p", 2).unwrap();
        let a = sig.add_function("a", 0).unwrap();
        (sig, p, a)
    }

    #[test]
    fn capture_avoidance_primes_binder() {
        let (_, p, _) = setup();
        let x = Var::named("x");
        let y = Var::named("y");
        let f = Formula::forall(x, Formula::pred(p, vec![Term::Var(x), Term::Var(y)]));
        let g = f.instantiate(y, &Term::Var(x));
        let xp = x.primed();
        assert_eq!(
            g,
            Formula::forall(xp, Formula::pred(p, vec![Term::Var(xp), Term::Var(x)]))
        );
    }

    #[test]
    fn bound_occurrences_are_not_substituted() {
        let (_, p, a) = setup();
        let x = Var::named("x");
        let f = Formula::forall(x, Formula::pred(p, vec![Term::Var(x), Term::Var(x)]));
        assert_eq!(f.instantiate(x, &Term::constant(a)), f);
    }

    #[test]
    fn alpha_normalization_ignores_binder_names() {
        let (_, p, _) = setup();
        let (x, y, z) = (Var::named("x"), Var::named("y"), Var::named("z"));
        let f = Formula::exists(x, Formula::pred(p, vec![Term::Var(x), Term::Var(z)]));
        let g = Formula::exists(y, Formula::pred(p, vec![Term::Var(y), Term::Var(z)]));
        assert_ne!(f, g);
        assert_eq!(f.alpha_normalize(), g.alpha_normalize());
        assert_eq!(f.alpha_normalize().alpha_normalize(), f.alpha_normalize());
    }

    #[test]
    fn free_vars_in_first_occurrence_order() {
        let (_, p, _) = setup();
        let (x, y, z) = (Var::named("x"), Var::named("y"), Var::named("z"));
        let f = Formula::and(
            Formula::pred(p, vec![Term::Var(z), Term::Var(y)]),
            Formula::forall(x, Formula::pred(p, vec![Term::Var(x), Term::Var(z)])),
        );
        assert_eq!(f.free_vars(), vec![z, y]);
    }
}
