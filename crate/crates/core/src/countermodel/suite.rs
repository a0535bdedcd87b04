//! The batch of checks run by `indsat --countermodel`.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{build_preset, eval_nat, holds_nat, theta, TheoryPreset};
use crate::kernel::notation::ArithSyms;
use crate::kernel::{Formula, Signature, Subst, Term, Var};

use super::{
    atom_radius, check_induction_axiom_m, decide_open_universal_m, eliminate_p_formula, eliminate_p_term,
    eval_open_formula_m, random_p_term, random_pfree_atom, random_pfree_formula, sample_check_axioms_m,
    CountermodelError, Decision, MElem, MEnv,
};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&SuiteCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Sizes of the randomized parts of the suite.
#[derive(Clone, Copy, Debug)]
pub struct SuiteSizes {
    pub axiom_samples: usize,
    pub axiom_bound: u64,
    pub induction_formulas: usize,
    pub induction_size: usize,
    pub pelim_cases: usize,
    pub pelim_depth: usize,
    pub radius_atoms: usize,
    pub radius_window: u64,
}

impl Default for SuiteSizes {
    fn default() -> Self {
        SuiteSizes {
            axiom_samples: 1000,
            axiom_bound: 50,
            induction_formulas: 200,
            induction_size: 7,
            pelim_cases: 200,
            pelim_depth: 5,
            radius_atoms: 200,
            radius_window: 50,
        }
    }
}

type Outcome = Result<(bool, String), CountermodelError>;

fn timed(name: &'static str, f: impl FnOnce() -> Outcome) -> SuiteCheck {
    let start = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    SuiteCheck {
        name,
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn env(x: Var, e: MElem) -> MEnv {
    MEnv::from([(x, e)])
}

fn nat_env(x: Var, n: u64) -> BTreeMap<Var, u64> {
    BTreeMap::from([(x, n)])
}

/// Axioms of `T + B1` hold on random samples.
pub fn check_tb1(a: &ArithSyms, sizes: &SuiteSizes, rng: &mut ChaCha8Rng) -> Outcome {
    let rep = sample_check_axioms_m(a, &build_preset(a, TheoryPreset::TB1), sizes.axiom_samples, sizes.axiom_bound, rng)?;
    let v = rep.violations();
    Ok((v == 0, format!("{} axioms x {} samples, {v} violations", rep.axioms.len(), sizes.axiom_samples)))
}

/// B4 is expected to fail, and to be the only axiom of `T'` that does.
pub fn check_b4_fails(a: &ArithSyms, sizes: &SuiteSizes, rng: &mut ChaCha8Rng) -> Outcome {
    let rep = sample_check_axioms_m(a, &build_preset(a, TheoryPreset::TPrime), sizes.axiom_samples, sizes.axiom_bound, rng)?;
    let b4 = rep.get("B4").map(|r| r.violations).unwrap_or(0);
    let others = rep.violations() - b4;
    let example = rep
        .get("B4")
        .and_then(|r| r.example.as_ref())
        .map(|ex| ex.iter().map(|(v, e)| format!("{v}={e}")).collect::<Vec<_>>().join(" "))
        .unwrap_or_default();
    Ok((b4 > 0 && others == 0, format!("B4 violated {b4} times (e.g. {example}), other axioms {others}")))
}

/// `∀x (x + x = x → x = 0)` fails, with the witness confirmed by evaluation.
pub fn check_theta(a: &ArithSyms) -> Outcome {
    let x = Var::named("x");
    let tx = Term::Var(x);
    let phi = theta(a, &tx, &tx);
    match decide_open_universal_m(a, &phi)? {
        Decision::Holds => Ok((false, "decided to hold".into())),
        Decision::Counterexample(e) => {
            let doubled = e.add(&e);
            let ok = doubled == e && e != MElem::zero() && !eval_open_formula_m(a, &phi, &env(x, e.clone()))?;
            Ok((ok, format!("counterexample {e}: {e} + {e} = {doubled}, {e} != {}", MElem::zero())))
        }
    }
}

/// Random open `p`-free induction axioms all hold.
pub fn check_induction(a: &ArithSyms, sizes: &SuiteSizes, rng: &mut ChaCha8Rng) -> Outcome {
    let x = Var::named("x");
    let mut failures = 0;
    let mut nontrivial = 0;
    for _ in 0..sizes.induction_formulas {
        let phi = random_pfree_formula(rng, a, x, sizes.induction_size);
        let c = check_induction_axiom_m(a, &phi)?;
        if !c.holds() {
            failures += 1;
        }
        if c.base && c.step.holds() {
            nontrivial += 1;
        }
    }
    Ok((
        failures == 0,
        format!(
            "{} formulas, {failures} violated, {nontrivial} with base and step true",
            sizes.induction_formulas
        ),
    ))
}

/// `t(sᴺ x) = t'(x)` and `φ(sᴺ x) ↔ φ'(x)` over ℕ for `x = 0..20`.
pub fn check_p_elimination(a: &ArithSyms, sizes: &SuiteSizes, rng: &mut ChaCha8Rng) -> Outcome {
    let x = Var::named("x");
    let tx = Term::Var(x);
    let mut failures = 0;
    let mut max_shift = 0;
    for _ in 0..sizes.pelim_cases {
        let t = random_p_term(rng, a, x, sizes.pelim_depth);
        let (n, t1) = eliminate_p_term(a, &t)?;
        let shifted = Subst::single(x, a.succ_pow(n, tx.clone())).apply(&t);
        let f = Formula::eq(t, random_p_term(rng, a, x, sizes.pelim_depth));
        let (m, f1) = eliminate_p_formula(a, &f)?;
        let fs = f.instantiate(x, &a.succ_pow(m, tx.clone()));
        max_shift = max_shift.max(n).max(m);
        let bad = t1.contains_sym(a.pred)
            || f1.atoms().iter().any(|at| at.terms().iter().any(|s| s.contains_sym(a.pred)))
            || (0..=20).any(|k| {
                eval_nat(a, &shifted, &nat_env(x, k)) != eval_nat(a, &t1, &nat_env(x, k))
                    || holds_nat(a, &fs, &nat_env(x, k)) != holds_nat(a, &f1, &nat_env(x, k))
            });
        failures += bad as usize;
    }
    Ok((
        failures == 0,
        format!("{} terms and formulas, {failures} mismatches, largest shift {max_shift}", sizes.pelim_cases),
    ))
}

/// Beyond its radius `N`, an atom holds at `(1, -n)` iff it holds at `n`
/// in ℕ, checked for `n = N..N+window`.
pub fn check_radius(a: &ArithSyms, sizes: &SuiteSizes, rng: &mut ChaCha8Rng) -> Outcome {
    let x = Var::named("x");
    let mut failures = 0;
    let mut max_radius = 0;
    for _ in 0..sizes.radius_atoms {
        let atom = random_pfree_atom(rng, a, x, 9);
        let r = atom_radius(a, &atom)?;
        max_radius = max_radius.max(r);
        let phi = Formula::Atom(atom);
        for n in r..=r + sizes.radius_window {
            let in_m = eval_open_formula_m(a, &phi, &env(x, MElem::int(-(n as i64))))?;
            if Some(in_m) != holds_nat(a, &phi, &nat_env(x, n)) {
                failures += 1;
                break;
            }
        }
    }
    Ok((
        failures == 0,
        format!("{} atoms, {failures} mismatches, largest radius {max_radius}", sizes.radius_atoms),
    ))
}

pub fn run_suite(seed: u64, sizes: &SuiteSizes) -> SuiteReport {
    let mut sig = Signature::new();
    let a = ArithSyms::declare(&mut sig).expect("fresh signature");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = vec![
        timed("axioms-tb1", || check_tb1(&a, sizes, &mut rng)),
        timed("b4-fails", || check_b4_fails(&a, sizes, &mut rng)),
        timed("theta", || check_theta(&a)),
        timed("open-induction", || check_induction(&a, sizes, &mut rng)),
        timed("p-elimination", || check_p_elimination(&a, sizes, &mut rng)),
        timed("radius", || check_radius(&a, sizes, &mut rng)),
    ];
    SuiteReport { seed, checks }
}

impl SuiteReport {
    pub fn text(&self) -> String {
        let mut out = format!("countermodel suite (seed {})\n", self.seed);
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            out.push_str(&format!("  {mark} {:<15} {} [{} ms]\n", c.name, c.detail, c.elapsed_ms));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let sizes = SuiteSizes {
            axiom_samples: 100,
            induction_formulas: 30,
            pelim_cases: 30,
            radius_atoms: 30,
            ..SuiteSizes::default()
        };
        let rep = run_suite(1, &sizes);
        assert!(rep.passed(), "{}", rep.text());
        assert!(rep.get("theta").unwrap().detail.contains("(1,0)"), "{}", rep.text());
    }
}
