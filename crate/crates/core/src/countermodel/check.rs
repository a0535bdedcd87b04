//! Induction-axiom and theory checks in the structure, plus random
//! generators for one-variable terms and formulas.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::arith::{strip_universal_prefix, Theory};
use crate::induction::formula_size;
use crate::kernel::notation::ArithSyms;
use crate::kernel::{Formula, Term, Var};

use super::linear::{decide_open_universal_m, holds_at, Decision};
use super::{contains_p, eval_open_formula_m, formula_var, CountermodelError, MElem, MEnv};

/// The three parts of `I_x φ` decided separately.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InductionCheck {
    pub base: bool,
    pub step: Decision,
    pub conclusion: Decision,
}

impl InductionCheck {
    /// Whether the structure satisfies `φ(0) ∧ ∀x(φ → φ(s x)) → ∀x φ`.
    pub fn holds(&self) -> bool {
        !self.base || !self.step.holds() || self.conclusion.holds()
    }
}

pub fn check_induction_axiom_m(a: &ArithSyms, phi: &Formula) -> Result<InductionCheck, CountermodelError> {
    if phi.atoms().iter().any(|at| at.terms().iter().any(|t| contains_p(a, t))) {
        return Err(CountermodelError::ContainsP);
    }
    let Some(x) = formula_var(phi)? else {
        let v = eval_open_formula_m(a, phi, &MEnv::new())?;
        let d = if v { Decision::Holds } else { Decision::Counterexample(MElem::zero()) };
        return Ok(InductionCheck {
            base: v,
            step: Decision::Holds,
            conclusion: d,
        });
    };
    let base = holds_at(a, phi, x, &MElem::zero())?;
    let step = Formula::implies(phi.clone(), phi.instantiate(x, &a.s(Term::Var(x))));
    Ok(InductionCheck {
        base,
        step: decide_open_universal_m(a, &step)?,
        conclusion: decide_open_universal_m(a, phi)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomResult {
    pub label: String,
    pub samples: usize,
    pub violations: usize,
    /// The first violating assignment, as `(variable, element)` pairs.
    pub example: Option<Vec<(String, String)>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub axioms: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn violations(&self) -> usize {
        self.axioms.iter().map(|r| r.violations).sum()
    }

    pub fn get(&self, label: &str) -> Option<&AxiomResult> {
        self.axioms.iter().find(|r| r.label == label)
    }
}

fn random_elem(rng: &mut impl Rng, bound: i64) -> MElem {
    if rng.gen_bool(0.5) {
        MElem::nat(rng.gen_range(0..=bound) as u64)
    } else {
        MElem::int(rng.gen_range(-bound..=bound))
    }
}

/// Evaluates every axiom of `theory` under `samples` random assignments
/// with `|n| ≤ bound` on both branches.
pub fn sample_check_axioms_m(
    a: &ArithSyms,
    theory: &Theory,
    samples: usize,
    bound: u64,
    rng: &mut impl Rng,
) -> Result<AxiomReport, CountermodelError> {
    let bound = bound.min(i64::MAX as u64) as i64;
    let mut axioms = Vec::new();
    for (label, ax) in &theory.axioms {
        let (vars, body) = strip_universal_prefix(ax);
        let mut res = AxiomResult {
            label: label.to_string(),
            samples,
            violations: 0,
            example: None,
        };
        for _ in 0..samples {
            let env: MEnv = vars.iter().map(|v| (*v, random_elem(rng, bound))).collect();
            if !eval_open_formula_m(a, body, &env)? {
                res.violations += 1;
                res.example.get_or_insert_with(|| env.iter().map(|(v, e)| (v.name(), e.to_string())).collect());
            }
        }
        axioms.push(res);
    }
    Ok(AxiomReport { axioms })
}

fn random_term(rng: &mut impl Rng, a: &ArithSyms, x: Var, size: usize, with_p: bool) -> Term {
    // `size` counts function symbols; variables are free.
    if size == 0 {
        return Term::Var(x);
    }
    if size == 1 && rng.gen_bool(0.5) {
        return a.zero();
    }
    let mut ops = vec![0, 2];
    if with_p {
        ops.push(1);
    }
    match *ops.choose(rng).expect("non-empty") {
        0 => a.s(random_term(rng, a, x, size - 1, with_p)),
        1 => a.p(random_term(rng, a, x, size - 1, with_p)),
        _ => {
            let left = rng.gen_range(0..size);
            a.add(
                random_term(rng, a, x, left, with_p),
                random_term(rng, a, x, size - 1 - left, with_p),
            )
        }
    }
}

/// A `p`-free atom in `x` with at most `size` symbols (counting `=`).
pub fn random_pfree_atom(rng: &mut impl Rng, a: &ArithSyms, x: Var, size: usize) -> crate::kernel::Atom {
    let budget = rng.gen_range(0..size.max(1));
    let left = rng.gen_range(0..=budget);
    crate::kernel::Atom::Eq(
        random_term(rng, a, x, left, false),
        random_term(rng, a, x, budget - left, false),
    )
}

/// A quantifier-free `p`-free formula in `x` of size at most `max_size`
/// (symbols of atoms plus connectives).
pub fn random_pfree_formula(rng: &mut impl Rng, a: &ArithSyms, x: Var, max_size: usize) -> Formula {
    let f = random_formula(rng, a, x, max_size.max(1));
    debug_assert!(formula_size(&f) <= max_size.max(1));
    f
}

fn random_formula(rng: &mut impl Rng, a: &ArithSyms, x: Var, size: usize) -> Formula {
    if size < 3 || rng.gen_bool(0.4) {
        return Formula::Atom(random_pfree_atom(rng, a, x, size));
    }
    match rng.gen_range(0..4) {
        0 => Formula::not(random_formula(rng, a, x, size - 1)),
        k => {
            let left = rng.gen_range(1..size - 1);
            let (l, r) = (
                random_formula(rng, a, x, left),
                random_formula(rng, a, x, size - 1 - left),
            );
            match k {
                1 => Formula::and(l, r),
                2 => Formula::or(l, r),
                _ => Formula::implies(l, r),
            }
        }
    }
}

/// A term in `x` over `0, s, p, +` of depth at most `depth`.
pub fn random_p_term(rng: &mut impl Rng, a: &ArithSyms, x: Var, depth: usize) -> Term {
    if depth == 0 {
        return if rng.gen_bool(0.7) { Term::Var(x) } else { a.zero() };
    }
    match rng.gen_range(0..5) {
        0 => Term::Var(x),
        1 => a.s(random_p_term(rng, a, x, depth - 1)),
        2 | 3 => a.p(random_p_term(rng, a, x, depth - 1)),
        _ => a.add(random_p_term(rng, a, x, depth - 1), random_p_term(rng, a, x, depth - 1)),
    }
}
