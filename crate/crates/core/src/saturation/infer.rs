//! Generating inferences. Each rule has a positional primitive (used both
//! for search and for replay) and an enumerator that tries all positions
//! allowed by the calculus.

use std::cell::RefCell;
use std::rc::Rc;

use crate::kernel::{unify_atoms, unify_terms, Atom, Clause, Literal, Path, Subst, Sym, Term};

use super::kbo::{Cmp, Kbo};
use super::trace::Inference;

/// Which inference system drives the saturation loop.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Calculus {
    /// Unordered binary resolution, factoring, paramodulation and equality
    /// resolution.
    #[default]
    Unordered,
    /// Superposition with a Knuth–Bendix ordering, equality factoring and
    /// demodulation.
    Superposition,
}

/// A derived clause together with its justification.
#[derive(Clone, Debug)]
pub struct Conclusion {
    pub clause: Clause,
    pub parents: Vec<usize>,
    pub unifier: Subst,
    pub inference: Inference,
}

pub(crate) fn atom_subterm<'a>(a: &'a Atom, path: &[usize]) -> Option<&'a Term> {
    let (first, rest) = path.split_first()?;
    a.terms().get(*first).copied()?.at(rest)
}

pub(crate) fn atom_replace(a: &Atom, path: &[usize], new: Term) -> Atom {
    let (first, rest) = path.split_first().expect("non-empty atom path");
    match a {
        Atom::Eq(l, r) => match first {
            0 => Atom::Eq(l.replace_at(rest, new), r.clone()),
            _ => Atom::Eq(l.clone(), r.replace_at(rest, new)),
        },
        Atom::Pred(p, args) => {
            let mut args = args.clone();
            args[*first] = args[*first].replace_at(rest, new);
            Atom::Pred(*p, args)
        }
    }
}

/// Positions of subterms in an atom, as paths whose first index picks the
/// side or argument.
pub(crate) fn atom_positions(a: &Atom, include_vars: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for (i, t) in a.terms().into_iter().enumerate() {
        let ps = if include_vars {
            t.all_positions()
        } else {
            t.nonvar_positions()
        };
        for p in ps {
            let mut full = Vec::with_capacity(p.len() + 1);
            full.push(i);
            full.extend(p);
            out.push(full);
        }
    }
    out
}

fn eq_sides(l: &Literal, left_to_right: bool) -> Option<(&Term, &Term)> {
    match &l.atom {
        Atom::Eq(a, b) if left_to_right => Some((a, b)),
        Atom::Eq(a, b) => Some((b, a)),
        Atom::Pred(..) => None,
    }
}

fn without(lits: &[Literal], skip: usize) -> impl Iterator<Item = &Literal> {
    lits.iter()
        .enumerate()
        .filter(move |(k, _)| *k != skip)
        .map(|(_, l)| l)
}

fn instantiate(lits: impl Iterator<Item = Literal>, s: &Subst) -> Vec<Literal> {
    lits.map(|l| l.apply(s)).collect()
}

/// Resolution of `left[li]` with `right[ri]` (right renamed apart).
pub fn resolve_at(left: &Clause, li: usize, right: &Clause, ri: usize, flip: bool) -> Option<(Clause, Subst)> {
    let rl = right.shifted_literals(left.var_bound());
    let a = left.literals().get(li)?;
    let mut b = rl.get(ri)?.clone();
    if flip {
        b = b.flipped();
    }
    if a.positive == b.positive {
        return None;
    }
    let s = unify_atoms(&a.atom, &b.atom)?;
    let lits = without(left.literals(), li)
        .chain(without(&rl, ri))
        .cloned();
    Some((Clause::new(instantiate(lits, &s)), s))
}

/// Merges literal `j` into literal `i` of the same sign.
pub fn factor_at(c: &Clause, i: usize, j: usize, flip: bool) -> Option<(Clause, Subst)> {
    let lits = c.literals();
    let a = lits.get(i)?;
    let mut b = lits.get(j)?.clone();
    if i == j || a.positive != b.positive {
        return None;
    }
    if flip {
        b = b.flipped();
    }
    let s = unify_atoms(&a.atom, &b.atom)?;
    Some((Clause::new(instantiate(without(lits, j).cloned(), &s)), s))
}

/// Rewrites the subterm at `path` of `into[ii]` (renamed apart) with the
/// equation `from[fi]`.
pub fn paramodulate_at(
    from: &Clause,
    fi: usize,
    left_to_right: bool,
    into: &Clause,
    ii: usize,
    path: &[usize],
) -> Option<(Clause, Subst)> {
    let eq = from.literals().get(fi)?;
    if !eq.positive {
        return None;
    }
    let il = into.shifted_literals(from.var_bound());
    paramodulate_shifted(from, fi, left_to_right, &il, ii, path)
}

/// [`paramodulate_at`] with the literals of `into` already renamed apart.
fn paramodulate_shifted(
    from: &Clause,
    fi: usize,
    left_to_right: bool,
    il: &[Literal],
    ii: usize,
    path: &[usize],
) -> Option<(Clause, Subst)> {
    let s = paramod_unifier(from, fi, left_to_right, il, ii, path)?;
    Some((paramod_conclusion(from, fi, left_to_right, il, ii, path, &s), s))
}

fn paramod_unifier(from: &Clause, fi: usize, left_to_right: bool, il: &[Literal], ii: usize, path: &[usize]) -> Option<Subst> {
    let (l, _) = eq_sides(from.literals().get(fi)?, left_to_right)?;
    let u = atom_subterm(&il.get(ii)?.atom, path)?;
    unify_terms(l, u)
}

fn paramod_conclusion(
    from: &Clause,
    fi: usize,
    left_to_right: bool,
    il: &[Literal],
    ii: usize,
    path: &[usize],
    s: &Subst,
) -> Clause {
    let (_, r) = eq_sides(&from.literals()[fi], left_to_right).expect("equation");
    let target = &il[ii];
    let replaced = Literal {
        positive: target.positive,
        atom: atom_replace(&target.atom, path, r.clone()),
    };
    let lits = without(from.literals(), fi)
        .cloned()
        .chain(without(il, ii).cloned())
        .chain(std::iter::once(replaced));
    Clause::new(instantiate(lits, s))
}

pub fn eq_resolve_at(c: &Clause, i: usize) -> Option<(Clause, Subst)> {
    let lit = c.literals().get(i)?;
    if lit.positive {
        return None;
    }
    let (a, b) = eq_sides(lit, true)?;
    let s = unify_terms(a, b)?;
    Some((Clause::new(instantiate(without(c.literals(), i).cloned(), &s)), s))
}

pub fn eq_factor_at(c: &Clause, i: usize, i_l2r: bool, j: usize, j_l2r: bool) -> Option<(Clause, Subst)> {
    let lits = c.literals();
    let (a, b) = (lits.get(i)?, lits.get(j)?);
    if i == j || !a.positive || !b.positive {
        return None;
    }
    let (s1, t1) = eq_sides(a, i_l2r)?;
    let (s2, t2) = eq_sides(b, j_l2r)?;
    let s = unify_terms(s1, s2)?;
    let extra = Literal::neq(t1.clone(), t2.clone());
    let rest = without(lits, i).cloned().chain(std::iter::once(extra));
    Some((Clause::new(instantiate(rest, &s)), s))
}

/// Generates all conclusions between `given` and the active clauses
/// (`given` is expected to be among them).
pub struct Generator {
    pub calculus: Calculus,
    pub paramod_into_vars: bool,
    /// Superposition only: in a clause with negative literals, one of them
    /// (ground before non-ground, then heaviest) is the only literal
    /// inferences may use.
    pub selection: bool,
    kbo: Kbo,
    /// Per-clause data that does not depend on the inference partner.
    /// Indexed by clause id; ids must not be reused for other clauses.
    info: RefCell<Vec<Option<Rc<ClauseInfo>>>>,
}

struct ClauseInfo {
    clause: Clause,
    selected: Option<usize>,
    /// Whether a literal may take part at all: it is the selected one, or
    /// (without selection) no sibling is strictly greater. The ordering is
    /// stable under substitution, so this holds for every instance.
    usable: Vec<bool>,
    /// Rewritable positions of each usable literal with the symbol found there.
    positions: Vec<Vec<(Path, Option<Sym>)>>,
}

impl Generator {
    pub fn new(calculus: Calculus, paramod_into_vars: bool) -> Self {
        Generator {
            calculus,
            paramod_into_vars,
            selection: false,
            kbo: Kbo,
            info: RefCell::new(Vec::new()),
        }
    }

    fn info(&self, id: usize, c: &Clause) -> Rc<ClauseInfo> {
        if let Some(Some(i)) = self.info.borrow().get(id) {
            debug_assert!(i.clause == *c, "clause id {id} reused");
            return i.clone();
        }
        let lits = c.literals();
        let selected = self.selected(c);
        let usable: Vec<bool> = (0..lits.len())
            .map(|i| match selected {
                Some(k) => k == i,
                None => {
                    !self.ordered()
                        || !lits
                            .iter()
                            .enumerate()
                            .any(|(k, o)| k != i && self.kbo.compare_literals(o, &lits[i]) == Cmp::Greater)
                }
            })
            .collect();
        let positions = lits
            .iter()
            .zip(&usable)
            .map(|(lit, ok)| {
                if !ok {
                    return Vec::new();
                }
                atom_positions(&lit.atom, self.paramod_into_vars && !self.ordered())
                    .into_iter()
                    .map(|p| {
                        let head = match atom_subterm(&lit.atom, &p) {
                            Some(Term::App(f, _)) => Some(*f),
                            _ => None,
                        };
                        (p, head)
                    })
                    .collect()
            })
            .collect();
        let info = Rc::new(ClauseInfo {
            clause: c.clone(),
            selected,
            usable,
            positions,
        });
        let mut cache = self.info.borrow_mut();
        if cache.len() <= id {
            cache.resize(id + 1, None);
        }
        cache[id] = Some(info.clone());
        info
    }

    pub fn with_selection(mut self, on: bool) -> Self {
        self.selection = on;
        self
    }

    /// The selected literal of `c`, if any.
    pub fn selected(&self, c: &Clause) -> Option<usize> {
        if !self.selection || !self.ordered() {
            return None;
        }
        let weight = |l: &Literal| l.atom.terms().iter().map(|t| t.size()).sum::<usize>();
        c.literals()
            .iter()
            .enumerate()
            .filter(|(_, l)| !l.positive)
            .max_by_key(|(i, l)| (weight(l), std::cmp::Reverse(*i)))
            .map(|(i, _)| i)
    }

    /// Whether literal `i` of the clause whose instance is `inst` may take
    /// part in an ordered inference.
    fn eligible(&self, sel: Option<usize>, inst: &[Literal], i: usize, strict: bool) -> bool {
        match sel {
            Some(k) => k == i,
            None => self.kbo.is_maximal(inst, i, strict),
        }
    }

    pub fn kbo(&self) -> &Kbo {
        &self.kbo
    }

    fn ordered(&self) -> bool {
        self.calculus == Calculus::Superposition
    }

    /// Clause ids must identify clauses: per-clause data is cached by id.
    pub fn generate(&self, given: (usize, &Clause), active: &[(usize, &Clause)]) -> Vec<Conclusion> {
        let mut out = Vec::new();
        self.unary(given, &mut out);
        for &other in active {
            self.resolutions(given, other, &mut out);
            self.paramodulations(given, other, &mut out);
            if other.0 != given.0 {
                self.paramodulations(other, given, &mut out);
            }
        }
        out
    }

    fn unary(&self, (id, c): (usize, &Clause), out: &mut Vec<Conclusion>) {
        let lits = c.literals();
        let sel = self.selected(c);
        for i in 0..lits.len() {
            if let Some((cl, s)) = eq_resolve_at(c, i) {
                if !self.ordered() || self.eligible(sel, &instantiate(lits.iter().cloned(), &s), i, false) {
                    out.push(Conclusion {
                        clause: cl,
                        parents: vec![id],
                        unifier: s,
                        inference: Inference::EqualityResolution { lit: i },
                    });
                }
            }
        }
        for i in 0..lits.len() {
            for j in 0..lits.len() {
                if self.ordered() {
                    if sel.is_some() {
                        continue;
                    }
                    self.eq_factorings((id, c), i, j, out);
                    if i < j && !lits[i].is_equality() && lits[i].positive {
                        if let Some((cl, s)) = factor_at(c, i, j, false) {
                            let inst = instantiate(lits.iter().cloned(), &s);
                            if self.kbo.is_maximal(&inst, i, false) {
                                out.push(Conclusion {
                                    clause: cl,
                                    parents: vec![id],
                                    unifier: s,
                                    inference: Inference::Factoring { first: i, second: j, flip: false },
                                });
                            }
                        }
                    }
                    continue;
                }
                if i >= j {
                    continue;
                }
                let flips: &[bool] = if lits[i].is_equality() { &[false, true] } else { &[false] };
                for &flip in flips {
                    if let Some((cl, s)) = factor_at(c, i, j, flip) {
                        out.push(Conclusion {
                            clause: cl,
                            parents: vec![id],
                            unifier: s,
                            inference: Inference::Factoring { first: i, second: j, flip },
                        });
                    }
                }
            }
        }
    }

    fn eq_factorings(&self, (id, c): (usize, &Clause), i: usize, j: usize, out: &mut Vec<Conclusion>) {
        let lits = c.literals();
        if i == j || !lits[i].positive || !lits[j].positive || !lits[i].is_equality() || !lits[j].is_equality() {
            return;
        }
        for i_l2r in [true, false] {
            for j_l2r in [true, false] {
                let Some((cl, s)) = eq_factor_at(c, i, i_l2r, j, j_l2r) else {
                    continue;
                };
                let inst = instantiate(lits.iter().cloned(), &s);
                let (l, r) = eq_sides(&inst[i], i_l2r).expect("equation");
                if self.kbo.greater(r, l) || l == r || !self.kbo.is_maximal(&inst, i, false) {
                    continue;
                }
                out.push(Conclusion {
                    clause: cl,
                    parents: vec![id],
                    unifier: s,
                    inference: Inference::EqualityFactoring {
                        first: i,
                        first_l2r: i_l2r,
                        second: j,
                        second_l2r: j_l2r,
                    },
                });
            }
        }
    }

    fn resolutions(&self, (lid, left): (usize, &Clause), (rid, right): (usize, &Clause), out: &mut Vec<Conclusion>) {
        let ll = left.literals();
        let rl = right.literals();
        for i in 0..ll.len() {
            for j in 0..rl.len() {
                if ll[i].positive == rl[j].positive || ll[i].is_equality() != rl[j].is_equality() {
                    continue;
                }
                if self.ordered() && ll[i].is_equality() {
                    continue;
                }
                let flips: &[bool] = if ll[i].is_equality() { &[false, true] } else { &[false] };
                for &flip in flips {
                    let Some((cl, s)) = resolve_at(left, i, right, j, flip) else {
                        continue;
                    };
                    if self.ordered() {
                        let li = instantiate(ll.iter().cloned(), &s);
                        let ri = instantiate(right.shifted_literals(left.var_bound()).into_iter(), &s);
                        if !self.eligible(self.selected(left), &li, i, ll[i].positive)
                            || !self.eligible(self.selected(right), &ri, j, rl[j].positive)
                        {
                            continue;
                        }
                    }
                    out.push(Conclusion {
                        clause: cl,
                        parents: vec![lid, rid],
                        unifier: s,
                        inference: Inference::Resolution {
                            left_lit: i,
                            right_lit: j,
                            flip,
                        },
                    });
                }
            }
        }
    }

    fn paramodulations(&self, (fid, from): (usize, &Clause), (iid, into): (usize, &Clause), out: &mut Vec<Conclusion>) {
        let fl = from.literals();
        let il = into.literals();
        let from_info = self.info(fid, from);
        if from_info.selected.is_some() {
            return;
        }
        let into_info = self.info(iid, into);
        let into_sel = into_info.selected;
        let mut shifted: Option<Vec<Literal>> = None;
        for fi in 0..fl.len() {
            let Atom::Eq(a, b) = &fl[fi].atom else { continue };
            if !fl[fi].positive || !from_info.usable[fi] {
                continue;
            }
            for l2r in [true, false] {
                let (l, r) = if l2r { (a, b) } else { (b, a) };
                if l.is_var() {
                    continue;
                }
                if self.ordered() && self.kbo.greater(r, l) {
                    continue;
                }
                for ii in 0..il.len() {
                    if !into_info.usable[ii] {
                        continue;
                    }
                    for (path, head) in &into_info.positions[ii] {
                        if let (Term::App(f, _), Some(g)) = (l, head) {
                            if f != g {
                                continue;
                            }
                        }
                        let shifted = shifted.get_or_insert_with(|| into.shifted_literals(from.var_bound()));
                        let Some(s) = paramod_unifier(from, fi, l2r, shifted, ii, path) else {
                            continue;
                        };
                        if self.ordered() && !self.superposition_ok(from, fi, l2r, shifted, into_sel, ii, path, &s) {
                            continue;
                        }
                        let cl = paramod_conclusion(from, fi, l2r, shifted, ii, path, &s);
                        out.push(Conclusion {
                            clause: cl,
                            parents: vec![fid, iid],
                            unifier: s,
                            inference: Inference::Paramodulation {
                                from_lit: fi,
                                left_to_right: l2r,
                                into_lit: ii,
                                path: path.clone(),
                            },
                        });
                    }
                }
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn superposition_ok(
        &self,
        from: &Clause,
        fi: usize,
        l2r: bool,
        into_shifted: &[Literal],
        into_sel: Option<usize>,
        ii: usize,
        path: &[usize],
        s: &Subst,
    ) -> bool {
        let fl = instantiate(from.literals().iter().cloned(), s);
        let (l, r) = eq_sides(&fl[fi], l2r).expect("equation");
        if l == r || self.kbo.greater(r, l) {
            return false;
        }
        if !self.eligible(self.selected(from), &fl, fi, true) {
            return false;
        }
        let il = instantiate(into_shifted.iter().cloned(), s);
        let target = &il[ii];
        if !self.eligible(into_sel, &il, ii, target.positive) {
            return false;
        }
        if let Atom::Eq(x, y) = &target.atom {
            let (side, other) = if path[0] == 0 { (x, y) } else { (y, x) };
            if side == other || self.kbo.greater(other, side) {
                return false;
            }
        }
        true
    }

    /// Whether the ordering strictly decreases from `l` to `r` on this
    /// instance (used to decide demodulation).
    pub fn orients(&self, l: &Term, r: &Term) -> bool {
        self.kbo.compare(l, r) == Cmp::Greater
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{Signature, Var};

    struct Fx {
        sig: Signature,
    }

    impl Fx {
        fn new() -> Self {
            Fx { sig: Signature::new() }
        }
        fn c(&mut self, n: &str) -> Term {
            Term::constant(self.sig.ensure_function(n, 0).unwrap())
        }
    }

    fn v(n: &str) -> Term {
        Term::Var(Var::named(n))
    }

    #[test]
    fn resolve_examples() {
        let mut fx = Fx::new();
        let p = fx.sig.add_predicate("p", 1).unwrap();
        let q = fx.sig.add_predicate("q", 1).unwrap();
        let a = fx.c("a");
        let px = Clause::new(vec![Literal::pos(Atom::Pred(p, vec![v("x")]))]);
        let npa = Clause::new(vec![Literal::neg(Atom::Pred(p, vec![a.clone()]))]);
        assert_eq!(resolve_at(&px, 0, &npa, 0, false).unwrap().0, Clause::empty());
        let pxqx = Clause::new(vec![
            Literal::pos(Atom::Pred(p, vec![v("x")])),
            Literal::pos(Atom::Pred(q, vec![v("x")])),
        ]);
        let g = Generator::new(Calculus::Unordered, false);
        let mut out = Vec::new();
        g.resolutions((0, &pxqx), (1, &npa), &mut out);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].clause, Clause::unit(Literal::pos(Atom::Pred(q, vec![a]))));
    }

    #[test]
    fn factor_examples() {
        let mut fx = Fx::new();
        let p = fx.sig.add_predicate("p", 1).unwrap();
        let q = fx.sig.add_predicate("q", 1).unwrap();
        let (a, b) = (fx.c("a"), fx.c("b"));
        let g = Generator::new(Calculus::Unordered, false);
        let c = Clause::new(vec![
            Literal::pos(Atom::Pred(p, vec![v("x")])),
            Literal::pos(Atom::Pred(p, vec![a.clone()])),
        ]);
        let mut out = Vec::new();
        g.unary((0, &c), &mut out);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].clause, Clause::unit(Literal::pos(Atom::Pred(p, vec![a.clone()]))));
        let c = Clause::new(vec![
            Literal::pos(Atom::Pred(p, vec![a.clone()])),
            Literal::pos(Atom::Pred(q, vec![b])),
        ]);
        let mut out = Vec::new();
        g.unary((0, &c), &mut out);
        assert!(out.is_empty());
        let c = Clause::new(vec![Literal::eq(v("x"), a.clone()), Literal::eq(v("y"), a.clone())]);
        let mut out = Vec::new();
        g.unary((0, &c), &mut out);
        assert!(out.iter().any(|k| k.clause == Clause::unit(Literal::eq(v("z"), a.clone()))));
    }

    #[test]
    fn equality_resolution_examples() {
        let mut fx = Fx::new();
        let p = fx.sig.add_predicate("p", 1).unwrap();
        let (a, b) = (fx.c("a"), fx.c("b"));
        let c = Clause::new(vec![Literal::neq(v("x"), a.clone()), Literal::pos(Atom::Pred(p, vec![v("x")]))]);
        let (r, _) = eq_resolve_at(&c, c.literals().iter().position(|l| !l.positive).unwrap()).unwrap();
        assert_eq!(r, Clause::unit(Literal::pos(Atom::Pred(p, vec![a.clone()]))));
        let c = Clause::unit(Literal::neq(a, b));
        assert!(eq_resolve_at(&c, 0).is_none());
    }

    #[test]
    fn paramodulation_without_equation_yields_nothing() {
        let mut fx = Fx::new();
        let p = fx.sig.add_predicate("p", 1).unwrap();
        let a = fx.c("a");
        let c = Clause::unit(Literal::pos(Atom::Pred(p, vec![a])));
        let g = Generator::new(Calculus::Unordered, false);
        let mut out = Vec::new();
        g.paramodulations((0, &c), (0, &c), &mut out);
        assert!(out.is_empty());
    }
}
