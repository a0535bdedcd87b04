//! Classes of induction formulas and their bounded enumeration.
//!
//! The size of a formula is the number of its non-variable symbol
//! occurrences (function symbols, predicates, `=`) plus one per
//! connective and quantifier.

use std::collections::{BTreeSet, HashSet};

use crate::kernel::{enumerate_ground_terms_over, Atom, Formula, Quant, Signature, Subst, Sym, SymbolKind, Term, Var};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum GammaClass {
    /// Atoms and negated atoms.
    Literal,
    /// Positive equations.
    EquationAtom,
    /// Quantifier-free formulas.
    Open,
    /// `∀ȳ ψ` with `ψ` open and at most one free variable.
    Forall1ParamFree,
    Unrestricted,
}

impl GammaClass {
    pub fn parse(s: &str) -> Option<GammaClass> {
        Some(match s {
            "literal" => GammaClass::Literal,
            "eq" => GammaClass::EquationAtom,
            "open" => GammaClass::Open,
            "forall1pf" => GammaClass::Forall1ParamFree,
            "any" => GammaClass::Unrestricted,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            GammaClass::Literal => "literal",
            GammaClass::EquationAtom => "eq",
            GammaClass::Open => "open",
            GammaClass::Forall1ParamFree => "forall1pf",
            GammaClass::Unrestricted => "any",
        }
    }

    /// Membership, optionally restricted to formulas over `base`.
    pub fn contains(self, f: &Formula, base: Option<&BTreeSet<Sym>>) -> bool {
        if let Some(base) = base {
            if !f.syms().is_subset(base) {
                return false;
            }
        }
        match self {
            GammaClass::Literal => matches!(f, Formula::Atom(_))
                || matches!(f, Formula::Not(g) if matches!(**g, Formula::Atom(_))),
            GammaClass::EquationAtom => matches!(f, Formula::Atom(Atom::Eq(..))),
            GammaClass::Open => f.is_quantifier_free(),
            GammaClass::Forall1ParamFree => {
                let mut body = f;
                while let Formula::Quant(Quant::Forall, _, g) = body {
                    body = g;
                }
                body.is_quantifier_free() && f.free_vars().len() <= 1
            }
            GammaClass::Unrestricted => true,
        }
    }
}

/// Size measure used by the enumeration bounds.
pub fn formula_size(f: &Formula) -> usize {
    match f {
        Formula::Atom(a) => a.symbol_count(),
        Formula::Not(g) | Formula::Quant(_, _, g) => 1 + formula_size(g),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            1 + formula_size(a) + formula_size(b)
        }
    }
}

/// Variables available to templates.
#[derive(Clone, Debug)]
pub struct TemplateSpec {
    /// Induction variables; each must occur.
    pub ind_vars: Vec<Var>,
    /// Parameter slots, used as a prefix in order of first occurrence.
    pub slots: Vec<Var>,
}

impl TemplateSpec {
    pub fn single(slots: usize) -> Self {
        TemplateSpec {
            ind_vars: vec![Var::named("x")],
            slots: slot_vars(slots),
        }
    }

    pub fn double(slots: usize) -> Self {
        TemplateSpec {
            ind_vars: vec![Var::named("x"), Var::named("y")],
            slots: slot_vars(slots),
        }
    }
}

fn slot_vars(n: usize) -> Vec<Var> {
    (1..=n).map(|i| Var::named(&format!("z{i}"))).collect()
}

/// Terms over `vars` and `funcs` by number of function symbol occurrences.
fn terms_by_cost(sig: &Signature, funcs: &[Sym], vars: &[Var], max: usize) -> Vec<Vec<Term>> {
    let mut by_cost: Vec<Vec<Term>> = vec![vars.iter().map(|v| Term::Var(*v)).collect()];
    for c in 1..=max {
        let mut level = Vec::new();
        for &f in funcs {
            let n = sig.arity(f);
            if n == 0 {
                if c == 1 {
                    level.push(Term::constant(f));
                }
                continue;
            }
            for split in compositions(c - 1, n) {
                let choices: Vec<&Vec<Term>> = split.iter().map(|k| &by_cost[*k]).collect();
                for_each_product(&choices, &mut |args| level.push(Term::app(f, args.to_vec())));
            }
        }
        by_cost.push(level);
    }
    by_cost
}

/// Ordered ways of writing `total` as a sum of `parts` naturals.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn for_each_product<T: Clone>(choices: &[&Vec<T>], f: &mut impl FnMut(&[T])) {
    fn go<T: Clone>(choices: &[&Vec<T>], acc: &mut Vec<T>, f: &mut impl FnMut(&[T])) {
        match choices.split_first() {
            None => f(acc),
            Some((first, rest)) => {
                for t in first.iter() {
                    acc.push(t.clone());
                    go(rest, acc, f);
                    acc.pop();
                }
            }
        }
    }
    go(choices, &mut Vec::new(), f)
}

/// Atoms of each size up to `max`, without trivial `t = t`.
fn atoms_by_size(
    sig: &Signature,
    funcs: &[Sym],
    preds: &[Sym],
    vars: &[Var],
    max: usize,
) -> Vec<Vec<Formula>> {
    let terms = terms_by_cost(sig, funcs, vars, max.saturating_sub(1));
    let mut out = vec![Vec::new(); max + 1];
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        for lc in 0..k {
            let rc = k - 1 - lc;
            for l in &terms[lc] {
                for r in &terms[rc] {
                    if l != r {
                        slot.push(Formula::eq(l.clone(), r.clone()));
                    }
                }
            }
        }
        for &p in preds {
            let n = sig.arity(p);
            if n == 0 {
                if k == 1 {
                    slot.push(Formula::pred(p, vec![]));
                }
                continue;
            }
            for split in compositions(k - 1, n) {
                let choices: Vec<&Vec<Term>> = split.iter().map(|c| &terms[*c]).collect();
                for_each_product(&choices, &mut |args| slot.push(Formula::pred(p, args.to_vec())));
            }
        }
    }
    out
}

fn open_by_size(atoms: &[Vec<Formula>], max: usize, literal_only: bool) -> Vec<Vec<Formula>> {
    let mut out: Vec<Vec<Formula>> = vec![Vec::new(); max + 1];
    for k in 1..=max {
        let mut level = atoms[k].clone();
        if literal_only {
            level.extend(atoms[k - 1].iter().map(|a| Formula::not(a.clone())));
        } else {
            level.extend(out[k - 1].iter().map(|a| Formula::not(a.clone())));
            for lk in 1..k.saturating_sub(1) {
                let rk = k - 1 - lk;
                for a in &out[lk] {
                    for b in &out[rk] {
                        level.push(Formula::and(a.clone(), b.clone()));
                        level.push(Formula::or(a.clone(), b.clone()));
                        level.push(Formula::implies(a.clone(), b.clone()));
                    }
                }
            }
        }
        out[k] = level;
    }
    out
}

/// Key identifying templates up to equation orientation and renaming of
/// slots.
fn template_key(f: &Formula, slots: &[Var]) -> Formula {
    let oriented = f.map_atoms(&mut |a| match a {
        Atom::Eq(l, r) if r < l => Formula::eq(r.clone(), l.clone()),
        _ => Formula::Atom(a.clone()),
    });
    let order: Vec<Var> = oriented
        .free_vars()
        .into_iter()
        .filter(|v| slots.contains(v))
        .collect();
    let s = Subst::from_pairs(
        order
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, Term::Var(slots[i]))),
    );
    oriented.apply(&s)
}

fn uses_slot_prefix(f: &Formula, slots: &[Var]) -> bool {
    let used: Vec<Var> = f.free_vars().into_iter().filter(|v| slots.contains(v)).collect();
    used.iter().enumerate().all(|(i, v)| *v == slots[i])
}

/// Templates of class `gamma` over `funcs`/`preds`, ordered by size, with
/// every induction variable occurring. For the parameter-free `∀₁` class
/// the slots are used as bound variables instead.
pub fn enumerate_templates(
    gamma: GammaClass,
    sig: &Signature,
    funcs: &[Sym],
    preds: &[Sym],
    spec: &TemplateSpec,
    max_size: usize,
) -> Vec<Formula> {
    if max_size == 0 {
        return Vec::new();
    }
    let mut vars = spec.ind_vars.clone();
    vars.extend(spec.slots.iter().copied());
    let quantified = gamma == GammaClass::Forall1ParamFree;
    let inner_max = if quantified { max_size - 1 } else { max_size };
    if inner_max == 0 {
        return Vec::new();
    }
    let atoms = atoms_by_size(sig, funcs, preds, &vars, inner_max);
    let levels: Vec<Vec<Formula>> = match gamma {
        GammaClass::EquationAtom => atoms
            .iter()
            .map(|l| l.iter().filter(|f| matches!(f, Formula::Atom(Atom::Eq(..)))).cloned().collect())
            .collect(),
        GammaClass::Literal => open_by_size(&atoms, inner_max, true),
        _ => open_by_size(&atoms, inner_max, false),
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for level in levels {
        for f in level {
            let fv = f.free_vars();
            if !spec.ind_vars.iter().all(|x| fv.contains(x)) || !uses_slot_prefix(&f, &spec.slots) {
                continue;
            }
            let f = if quantified {
                let bound: Vec<Var> = spec.slots.iter().copied().filter(|v| fv.contains(v)).collect();
                if bound.is_empty() {
                    continue;
                }
                Formula::forall_many(&bound, f)
            } else {
                f
            };
            if seen.insert(template_key(&f, &spec.slots)) {
                out.push(f);
            }
        }
    }
    out
}

/// Slots of a template that occur free in it, in order.
pub fn template_slots(f: &Formula, spec: &TemplateSpec) -> Vec<Var> {
    let fv = f.free_vars();
    spec.slots.iter().copied().filter(|v| fv.contains(v)).collect()
}

/// One pool of restricted-induction instances: Skolem-free templates over
/// the base symbols of `sig`, paired with tuples of ground terms of depth
/// at most `term_depth` over every function symbol of `sig`. Templates come
/// in size order; for each template, parameter tuples follow the ground
/// term order with the last slot varying fastest.
pub fn enumerate_gamma_instances(
    gamma: GammaClass,
    sig: &Signature,
    term_depth: usize,
    formula_size: usize,
) -> Vec<(Formula, Vec<Term>)> {
    if term_depth == 0 || formula_size == 0 {
        return Vec::new();
    }
    let (funcs, preds) = base_symbols(sig);
    let spec = TemplateSpec::single(2);
    let templates = enumerate_templates(gamma, sig, &funcs, &preds, &spec, formula_size);
    let all: Vec<Sym> = sig.functions().map(|(s, _)| s).collect();
    let ground = ground_terms_up_to(sig, &all, term_depth);
    let mut out = Vec::new();
    for t in templates {
        let k = if gamma == GammaClass::Forall1ParamFree {
            0
        } else {
            template_slots(&t, &spec).len()
        };
        let choices: Vec<&Vec<Term>> = (0..k).map(|_| &ground).collect();
        for_each_product(&choices, &mut |params| out.push((t.clone(), params.to_vec())));
    }
    out
}

/// Non-Skolem function and predicate symbols.
pub fn base_symbols(sig: &Signature) -> (Vec<Sym>, Vec<Sym>) {
    let mut funcs = Vec::new();
    let mut preds = Vec::new();
    for (s, info) in sig.symbols() {
        if info.is_skolem() {
            continue;
        }
        match info.kind {
            SymbolKind::Function => funcs.push(s),
            SymbolKind::Predicate => preds.push(s),
        }
    }
    (funcs, preds)
}

/// Ground terms of depth `0..=depth` over `syms`, in enumeration order.
pub fn ground_terms_up_to(sig: &Signature, syms: &[Sym], depth: usize) -> Vec<Term> {
    (0..=depth)
        .flat_map(|d| enumerate_ground_terms_over(sig, syms, d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::notation::ArithSyms;

    fn arith() -> (Signature, ArithSyms) {
        let mut sig = Signature::new();
        let a = ArithSyms::declare(&mut sig).unwrap();
        (sig, a)
    }

    #[test]
    fn membership() {
        let (_, a) = arith();
        let x = Term::Var(Var::named("x"));
        let eq = Formula::eq(a.add(x.clone(), a.zero()), x.clone());
        assert!(GammaClass::EquationAtom.contains(&eq, None));
        assert!(GammaClass::Literal.contains(&Formula::not(eq.clone()), None));
        assert!(!GammaClass::EquationAtom.contains(&Formula::not(eq.clone()), None));
        let imp = Formula::implies(eq.clone(), eq.clone());
        assert!(GammaClass::Open.contains(&imp, None));
        assert!(!GammaClass::Literal.contains(&imp, None));
        let y = Var::named("y");
        let q = Formula::forall(y, Formula::eq(Term::Var(y), x.clone()));
        assert!(GammaClass::Forall1ParamFree.contains(&q, None));
        assert!(!GammaClass::Open.contains(&q, None));
        let two_free = Formula::eq(Term::Var(y), x);
        assert!(!GammaClass::Forall1ParamFree.contains(&two_free, None));
    }

    #[test]
    fn literal_pool_contains_commutativity_with_zero() {
        let (sig, a) = arith();
        let pool = enumerate_gamma_instances(GammaClass::Literal, &sig, 1, 3);
        let x = Term::Var(Var::named("x"));
        let z = Term::Var(Var::named("z1"));
        let target = Formula::eq(a.add(x.clone(), z.clone()), a.add(z, x));
        let found = pool.iter().any(|(f, p)| {
            template_key(f, &TemplateSpec::single(2).slots)
                == template_key(&target, &TemplateSpec::single(2).slots)
                && p == &vec![a.zero()]
        });
        assert!(found);
    }

    #[test]
    fn zero_bounds_are_empty() {
        let (sig, _) = arith();
        assert!(enumerate_gamma_instances(GammaClass::Open, &sig, 0, 4).is_empty());
        assert!(enumerate_gamma_instances(GammaClass::Open, &sig, 1, 0).is_empty());
    }

    #[test]
    fn size_bound_gives_prefixes() {
        let (sig, _) = arith();
        for g in [GammaClass::Literal, GammaClass::Open, GammaClass::EquationAtom] {
            let small = enumerate_gamma_instances(g, &sig, 1, 3);
            let big = enumerate_gamma_instances(g, &sig, 1, 4);
            assert!(big.len() > small.len());
            assert_eq!(&big[..small.len()], &small[..]);
        }
    }

    #[test]
    fn depth_bound_gives_supersets() {
        let (sig, _) = arith();
        let small = enumerate_gamma_instances(GammaClass::Literal, &sig, 1, 3);
        let big: HashSet<_> = enumerate_gamma_instances(GammaClass::Literal, &sig, 2, 3)
            .into_iter()
            .collect();
        assert!(small.iter().all(|i| big.contains(i)));
    }

    #[test]
    fn templates_are_distinct_and_sized() {
        let (sig, _) = arith();
        let (funcs, preds) = base_symbols(&sig);
        let spec = TemplateSpec::single(2);
        let ts = enumerate_templates(GammaClass::Open, &sig, &funcs, &preds, &spec, 5);
        let keys: HashSet<_> = ts.iter().map(|t| template_key(t, &spec.slots)).collect();
        assert_eq!(keys.len(), ts.len());
        assert!(ts.iter().all(|t| formula_size(t) <= 5));
        assert!(ts.windows(2).all(|w| formula_size(&w[0]) <= formula_size(&w[1])));
    }

    #[test]
    fn theta_template_is_enumerated() {
        let (sig, a) = arith();
        let (funcs, preds) = base_symbols(&sig);
        let spec = TemplateSpec::single(1);
        let ts = enumerate_templates(GammaClass::Open, &sig, &funcs, &preds, &spec, 5);
        let x = Term::Var(Var::named("x"));
        let z = Term::Var(Var::named("z1"));
        let theta = Formula::implies(
            Formula::eq(a.add(z.clone(), x.clone()), x),
            Formula::eq(z, a.zero()),
        );
        let key = template_key(&theta, &spec.slots);
        assert!(ts.iter().any(|t| template_key(t, &spec.slots) == key));
    }
}
