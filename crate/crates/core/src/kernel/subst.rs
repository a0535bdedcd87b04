use std::collections::BTreeMap;

use super::{Term, Var};

/// A finite map from variables to terms.
///
/// Substitutions built through [`bind`](Subst::bind) and
/// [`compose`](Subst::compose) stay idempotent: no domain variable occurs
/// in the range.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subst {
    map: BTreeMap<Var, Term>,
}

impl Subst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(v: Var, t: Term) -> Self {
        let mut s = Self::new();
        s.map.insert(v, t);
        s
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, Term)>) -> Self {
        Subst {
            map: pairs.into_iter().collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.map.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.map.iter()
    }

    /// Inserts without normalizing. Used for renamings.
    pub fn insert_raw(&mut self, v: Var, t: Term) {
        self.map.insert(v, t);
    }

    /// A copy with `v` removed from the domain.
    pub fn without(&self, v: Var) -> Subst {
        let mut s = self.clone();
        s.map.remove(&v);
        s
    }

    pub fn apply(&self, t: &Term) -> Term {
        if self.map.is_empty() {
            return t.clone();
        }
        match t {
            Term::Var(v) => self.map.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(f, args) => Term::app(*f, args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    /// Extends with `v ↦ t`, where `t` already has `self` applied and `v`
    /// is not in the domain. Keeps the substitution idempotent.
    pub fn bind(&mut self, v: Var, t: Term) {
        let single = Subst::single(v, t.clone());
        for val in self.map.values_mut() {
            if val.contains_var(v) {
                *val = single.apply(val);
            }
        }
        self.map.insert(v, t);
    }

    /// The substitution `self` followed by `other`: applying the result
    /// equals applying `self` and then `other`.
    pub fn compose(&self, other: &Subst) -> Subst {
        let mut map: BTreeMap<Var, Term> = self
            .map
            .iter()
            .map(|(v, t)| (*v, other.apply(t)))
            .collect();
        for (v, t) in &other.map {
            map.entry(*v).or_insert_with(|| t.clone());
        }
        map.retain(|v, t| t.as_var() != Some(*v));
        Subst { map }
    }

    /// True when no domain variable occurs in the range.
    pub fn is_idempotent(&self) -> bool {
        self.map
            .values()
            .all(|t| self.map.keys().all(|v| !t.contains_var(*v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Signature;

    #[test]
    fn substitute_into_sum() {
        let mut sig = Signature::new();
        let zero = sig.add_function("0", 0).unwrap();
        let plus = sig.add_function("+", 2).unwrap();
        let (x, y) = (Var::named("x"), Var::named("y"));
        let t = Term::binary(plus, Term::Var(x), Term::Var(y));
        let s = Subst::single(x, Term::constant(zero));
        assert_eq!(
            s.apply(&t),
            Term::binary(plus, Term::constant(zero), Term::Var(y))
        );
        assert_eq!(Subst::new().apply(&t), t);
    }
}
