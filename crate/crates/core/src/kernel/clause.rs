use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use super::{Atom, Formula, Subst, Sym, Term, Var};

/// A signed atom.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Literal {
        Literal {
            positive: true,
            atom,
        }
    }

    pub fn neg(atom: Atom) -> Literal {
        Literal {
            positive: false,
            atom,
        }
    }

    pub fn eq(l: Term, r: Term) -> Literal {
        Literal::pos(Atom::Eq(l, r))
    }

    pub fn neq(l: Term, r: Term) -> Literal {
        Literal::neg(Atom::Eq(l, r))
    }

    pub fn negated(&self) -> Literal {
        Literal {
            positive: !self.positive,
            atom: self.atom.clone(),
        }
    }

    pub fn apply(&self, s: &Subst) -> Literal {
        Literal {
            positive: self.positive,
            atom: self.atom.apply(s),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }

    pub fn is_equality(&self) -> bool {
        matches!(self.atom, Atom::Eq(..))
    }

    /// `t = t`, which is valid.
    pub fn is_trivially_true(&self) -> bool {
        self.positive && matches!(&self.atom, Atom::Eq(l, r) if l == r)
    }

    /// `t ≠ t`, which is unsatisfiable.
    pub fn is_trivially_false(&self) -> bool {
        !self.positive && matches!(&self.atom, Atom::Eq(l, r) if l == r)
    }

    pub fn to_formula(&self) -> Formula {
        let a = Formula::Atom(self.atom.clone());
        if self.positive {
            a
        } else {
            Formula::not(a)
        }
    }

    /// The same literal with the equation sides swapped (identity on
    /// predicate literals).
    pub fn flipped(&self) -> Literal {
        match &self.atom {
            Atom::Eq(l, r) => Literal {
                positive: self.positive,
                atom: Atom::Eq(r.clone(), l.clone()),
            },
            Atom::Pred(..) => self.clone(),
        }
    }

    fn oriented(mut self) -> Literal {
        if let Atom::Eq(l, r) = &mut self.atom {
            if term_order(l, r) == Ordering::Less {
                std::mem::swap(l, r);
            }
        }
        self
    }
}

/// Structural comparison that treats all variables as equal.
fn shape_cmp(a: &Term, b: &Term) -> Ordering {
    match (a, b) {
        (Term::Var(_), Term::Var(_)) => Ordering::Equal,
        (Term::Var(_), Term::App(..)) => Ordering::Less,
        (Term::App(..), Term::Var(_)) => Ordering::Greater,
        (Term::App(f, xs), Term::App(g, ys)) => f.cmp(g).then_with(|| {
            xs.len().cmp(&ys.len()).then_with(|| {
                xs.iter()
                    .zip(ys.iter())
                    .map(|(x, y)| shape_cmp(x, y))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
        }),
    }
}

fn term_order(a: &Term, b: &Term) -> Ordering {
    shape_cmp(a, b).then_with(|| a.cmp(b))
}

fn atom_shape_cmp(a: &Atom, b: &Atom) -> Ordering {
    let rank = |x: &Atom| match x {
        Atom::Eq(..) => (0u8, None),
        Atom::Pred(p, _) => (1u8, Some(*p)),
    };
    rank(a).cmp(&rank(b)).then_with(|| {
        let (ta, tb) = (a.terms(), b.terms());
        ta.iter()
            .zip(tb.iter())
            .map(|(x, y)| shape_cmp(x, y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

fn literal_order(a: &Literal, b: &Literal) -> Ordering {
    atom_shape_cmp(&a.atom, &b.atom)
        .then_with(|| a.positive.cmp(&b.positive))
        .then_with(|| a.atom.cmp(&b.atom))
}

/// A clause: a finite set of literals, stored as a canonically ordered,
/// duplicate-free list with variables renamed to `X0, X1, ...` by first
/// occurrence. Two clauses that differ only by a consistent renaming of
/// variables and by literal order usually normalize to the same value, so
/// syntactic equality doubles as a cheap variant check.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Clause {
    lits: Vec<Literal>,
}

impl Clause {
    pub fn new(lits: Vec<Literal>) -> Clause {
        Clause {
            lits: normalize(lits),
        }
    }

    pub fn empty() -> Clause {
        Clause { lits: Vec::new() }
    }

    pub fn unit(lit: Literal) -> Clause {
        Clause::new(vec![lit])
    }

    pub fn literals(&self) -> &[Literal] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.lits.len() == 1
    }

    pub fn is_ground(&self) -> bool {
        self.lits.iter().all(Literal::is_ground)
    }

    /// Contains a complementary pair or a literal `t = t`.
    pub fn is_tautology(&self) -> bool {
        self.lits.iter().any(Literal::is_trivially_true)
            || self.lits.iter().enumerate().any(|(i, l)| {
                self.lits[i + 1..]
                    .iter()
                    .any(|m| m.positive != l.positive && m.atom == l.atom)
            })
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        self.lits.contains(&lit.clone().oriented())
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        for l in &self.lits {
            l.atom.collect_vars(&mut out);
        }
        out
    }

    /// One more than the largest clause-variable index, i.e. the offset
    /// that renames another clause apart from this one.
    pub fn var_bound(&self) -> u32 {
        self.vars()
            .iter()
            .map(|v| v.index() + 1)
            .max()
            .unwrap_or(0)
    }

    /// Adds `offset` to every variable index. The result is not normalized.
    pub fn shifted_literals(&self, offset: u32) -> Vec<Literal> {
        let s = Subst::from_pairs(
            self.vars()
                .into_iter()
                .map(|v| (v, Term::Var(Var::indexed(v.index() + offset)))),
        );
        self.lits.iter().map(|l| l.apply(&s)).collect()
    }

    pub fn apply(&self, s: &Subst) -> Clause {
        Clause::new(self.lits.iter().map(|l| l.apply(s)).collect())
    }

    pub fn syms(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        for l in &self.lits {
            l.atom.collect_syms(&mut out);
        }
        out
    }

    /// Symbol plus variable occurrences; the passive-queue priority.
    pub fn weight(&self) -> usize {
        self.lits
            .iter()
            .map(|l| 1 + l.atom.terms().iter().map(|t| t.size()).sum::<usize>())
            .sum()
    }

    /// The universal closure of the disjunction (`None` for the empty clause).
    pub fn to_formula(&self) -> Option<Formula> {
        Formula::disj(self.lits.iter().map(Literal::to_formula).collect())
            .map(|f| f.universal_closure())
    }

    /// Equality up to variable renaming and literal order.
    pub fn is_variant_of(&self, other: &Clause) -> bool {
        self == other
            || (self.len() == other.len()
                && crate::saturation::subsumes(self, other)
                && crate::saturation::subsumes(other, self))
    }
}

fn normalize(lits: Vec<Literal>) -> Vec<Literal> {
    let mut lits: Vec<Literal> = lits.into_iter().map(Literal::oriented).collect();
    for _ in 0..8 {
        lits.sort_by(literal_order);
        lits.dedup();
        let renamed = rename_by_first_occurrence(&lits);
        let renamed: Vec<Literal> = renamed.into_iter().map(Literal::oriented).collect();
        let mut sorted = renamed.clone();
        sorted.sort_by(literal_order);
        sorted.dedup();
        if sorted == renamed {
            return renamed;
        }
        lits = sorted;
    }
    lits
}

fn rename_by_first_occurrence(lits: &[Literal]) -> Vec<Literal> {
    let mut order = Vec::new();
    for l in lits {
        l.atom.collect_vars(&mut order);
    }
    let map: BTreeMap<Var, Term> = order
        .iter()
        .enumerate()
        .map(|(i, v)| (*v, Term::Var(Var::indexed(i as u32))))
        .collect();
    let s = Subst::from_pairs(map);
    lits.iter().map(|l| l.apply(&s)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Signature;

    #[test]
    fn literal_order_and_names_do_not_matter() {
        let mut sig = Signature::new();
        let p = sig.add_predicate("p", 1).unwrap();
        let q = sig.add_predicate("q", 2).unwrap();
        let a = Term::constant(sig.add_function("a", 0).unwrap());
        let (x, y) = (Var::named("x"), Var::named("y"));
        let c1 = Clause::new(vec![
            Literal::pos(Atom::Pred(q, vec![Term::Var(x), a.clone()])),
            Literal::neg(Atom::Pred(p, vec![Term::Var(x)])),
        ]);
        let c2 = Clause::new(vec![
            Literal::neg(Atom::Pred(p, vec![Term::Var(y)])),
            Literal::pos(Atom::Pred(q, vec![Term::Var(y), a])),
        ]);
        assert_eq!(c1, c2);
    }

    #[test]
    fn equations_are_oriented_and_duplicates_merged() {
        let mut sig = Signature::new();
        let a = Term::constant(sig.add_function("a", 0).unwrap());
        let b = Term::constant(sig.add_function("b", 0).unwrap());
        let c = Clause::new(vec![
            Literal::eq(a.clone(), b.clone()),
            Literal::eq(b.clone(), a.clone()),
        ]);
        assert_eq!(c.len(), 1);
        let t = Clause::new(vec![Literal::eq(a.clone(), b.clone()), Literal::neq(b, a)]);
        assert!(t.is_tautology());
    }

    #[test]
    fn normalization_is_idempotent_on_symmetric_clause() {
        let (x, y) = (Var::named("x"), Var::named("y"));
        let c = Clause::new(vec![
            Literal::eq(Term::Var(y), Term::Var(x)),
            Literal::neq(Term::Var(x), Term::Var(y)),
        ]);
        assert!(c.is_tautology());
        assert_eq!(Clause::new(c.literals().to_vec()), c);
    }
}
