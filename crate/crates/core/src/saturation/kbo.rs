//! Knuth–Bendix ordering with unit weights. Symbols are compared by
//! `(arity, declaration index)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::kernel::{Atom, Literal, Term, Var};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Cmp {
    Greater,
    Less,
    Equal,
    Incomparable,
}

/// Reduction ordering used by the superposition calculus.
#[derive(Clone, Copy, Default, Debug)]
pub struct Kbo;

fn var_counts(t: &Term, sign: i64, acc: &mut BTreeMap<Var, i64>) {
    match t {
        Term::Var(v) => *acc.entry(*v).or_insert(0) += sign,
        Term::App(_, args) => args.iter().for_each(|a| var_counts(a, sign, acc)),
    }
}

impl Kbo {
    pub fn compare(&self, s: &Term, t: &Term) -> Cmp {
        if s == t {
            return Cmp::Equal;
        }
        if self.greater(s, t) {
            Cmp::Greater
        } else if self.greater(t, s) {
            Cmp::Less
        } else {
            Cmp::Incomparable
        }
    }

    /// `s > t`.
    pub fn greater(&self, s: &Term, t: &Term) -> bool {
        match (s, t) {
            (_, Term::Var(v)) => s != t && s.contains_var(*v),
            (Term::Var(_), _) => false,
            (Term::App(f, xs), Term::App(g, ys)) => {
                let mut counts = BTreeMap::new();
                var_counts(s, 1, &mut counts);
                var_counts(t, -1, &mut counts);
                if counts.values().any(|&c| c < 0) {
                    return false;
                }
                match s.size().cmp(&t.size()) {
                    Ordering::Greater => true,
                    Ordering::Less => false,
                    Ordering::Equal => match (xs.len(), f.0).cmp(&(ys.len(), g.0)) {
                        Ordering::Greater => true,
                        Ordering::Less => false,
                        Ordering::Equal => xs
                            .iter()
                            .zip(ys.iter())
                            .find(|(a, b)| a != b)
                            .is_some_and(|(a, b)| self.greater(a, b)),
                    },
                }
            }
        }
    }

    /// Comparison of literals through the multiset extension: `s = t` is
    /// `{s, t}`, `s ≠ t` is `{s, s, t, t}`, and a predicate atom `P` is
    /// treated as `P = ⊤` with `⊤` below every term.
    pub fn compare_literals(&self, a: &Literal, b: &Literal) -> Cmp {
        let (ma, mb) = (literal_multiset(a), literal_multiset(b));
        self.compare_multisets(&ma, &mb)
    }

    fn compare_oterm(&self, a: &Option<Term>, b: &Option<Term>) -> Cmp {
        match (a, b) {
            (None, None) => Cmp::Equal,
            (None, Some(_)) => Cmp::Less,
            (Some(_), None) => Cmp::Greater,
            (Some(x), Some(y)) => self.compare(x, y),
        }
    }

    fn compare_multisets(&self, a: &[Option<Term>], b: &[Option<Term>]) -> Cmp {
        let mut a: Vec<&Option<Term>> = a.iter().collect();
        let mut b: Vec<&Option<Term>> = b.iter().collect();
        // Drop common elements.
        let mut i = 0;
        while i < a.len() {
            if let Some(j) = b.iter().position(|y| *y == a[i]) {
                b.remove(j);
                a.remove(i);
            } else {
                i += 1;
            }
        }
        match (a.is_empty(), b.is_empty()) {
            (true, true) => return Cmp::Equal,
            (false, true) => return Cmp::Greater,
            (true, false) => return Cmp::Less,
            _ => {}
        }
        let dominates = |xs: &[&Option<Term>], ys: &[&Option<Term>], want: Cmp| {
            ys.iter()
                .all(|y| xs.iter().any(|x| self.compare_oterm(x, y) == want))
        };
        if dominates(&a, &b, Cmp::Greater) {
            Cmp::Greater
        } else if dominates(&b, &a, Cmp::Greater) {
            Cmp::Less
        } else {
            Cmp::Incomparable
        }
    }

    /// Whether literal `idx` of `lits` is maximal (no other literal is
    /// greater) or, with `strict`, strictly maximal (no other literal is
    /// greater or equal).
    pub fn is_maximal(&self, lits: &[Literal], idx: usize, strict: bool) -> bool {
        let me = &lits[idx];
        lits.iter().enumerate().all(|(k, other)| {
            if k == idx {
                return true;
            }
            match self.compare_literals(other, me) {
                Cmp::Greater => false,
                Cmp::Equal => !strict,
                _ => true,
            }
        })
    }
}

fn literal_multiset(l: &Literal) -> Vec<Option<Term>> {
    let (a, b) = match &l.atom {
        Atom::Eq(s, t) => (Some(s.clone()), Some(t.clone())),
        Atom::Pred(p, args) => (Some(Term::app(*p, args.clone())), None),
    };
    if l.positive {
        vec![a, b]
    } else {
        vec![a.clone(), a, b.clone(), b]
    }
}
