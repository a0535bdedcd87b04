//! Linear arithmetic over `0, s, p, +`: the theories `T` and `T'`, the goal
//! sentences used as benchmarks, and their clause sets.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::clausify::clausify_all;
use crate::kernel::notation::ArithSyms;
use crate::kernel::{Clause, Formula, Signature, Sym, Term, Var};
use crate::skolem::Language;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("unknown theory preset `{0}` (expected T, Tprime or TB1)")]
    UnknownPreset(String),
    #[error("unknown goal `{0}`")]
    UnknownGoal(String),
    #[error("goal {goal} requires {constraint}")]
    BadParameters {
        goal: String,
        constraint: &'static str,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TheoryPreset {
    /// A1–A5.
    T,
    /// A1–A5 and B1–B4.
    TPrime,
    /// A1–A5 and B1.
    TB1,
}

impl TheoryPreset {
    pub fn parse(name: &str) -> Result<Self, ArithError> {
        match name {
            "T" => Ok(TheoryPreset::T),
            "Tprime" | "T'" => Ok(TheoryPreset::TPrime),
            "TB1" => Ok(TheoryPreset::TB1),
            _ => Err(ArithError::UnknownPreset(name.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TheoryPreset::T => "T",
            TheoryPreset::TPrime => "Tprime",
            TheoryPreset::TB1 => "TB1",
        }
    }
}

/// Named axioms of a preset.
#[derive(Clone, Debug)]
pub struct Theory {
    pub preset: TheoryPreset,
    pub axioms: Vec<(&'static str, Formula)>,
}

fn vars() -> (Term, Term, Term, Var, Var, Var) {
    let (x, y, z) = (Var::named("x"), Var::named("y"), Var::named("z"));
    (Term::Var(x), Term::Var(y), Term::Var(z), x, y, z)
}

pub fn build_preset(a: &ArithSyms, preset: TheoryPreset) -> Theory {
    let (tx, ty, tz, x, y, z) = vars();
    let mut axioms = vec![
        ("A1", Formula::forall(x, Formula::neq(a.zero(), a.s(tx.clone())))),
        ("A2", Formula::eq(a.p(a.zero()), a.zero())),
        ("A3", Formula::forall(x, Formula::eq(a.p(a.s(tx.clone())), tx.clone()))),
        ("A4", Formula::forall(x, Formula::eq(a.add(tx.clone(), a.zero()), tx.clone()))),
        (
            "A5",
            Formula::forall_many(
                &[x, y],
                Formula::eq(
                    a.add(tx.clone(), a.s(ty.clone())),
                    a.s(a.add(tx.clone(), ty.clone())),
                ),
            ),
        ),
    ];
    if preset != TheoryPreset::T {
        axioms.push((
            "B1",
            Formula::forall(
                x,
                Formula::implies(
                    Formula::neq(tx.clone(), a.zero()),
                    Formula::eq(tx.clone(), a.s(a.p(tx.clone()))),
                ),
            ),
        ));
    }
    if preset == TheoryPreset::TPrime {
        axioms.push((
            "B2",
            Formula::forall_many(
                &[x, y],
                Formula::eq(a.add(tx.clone(), ty.clone()), a.add(ty.clone(), tx.clone())),
            ),
        ));
        axioms.push((
            "B3",
            Formula::forall_many(
                &[x, y, z],
                Formula::eq(
                    a.add(a.add(tx.clone(), ty.clone()), tz.clone()),
                    a.add(tx.clone(), a.add(ty.clone(), tz.clone())),
                ),
            ),
        ));
        axioms.push((
            "B4",
            Formula::forall_many(
                &[x, y, z],
                Formula::implies(
                    Formula::eq(a.add(tx.clone(), ty.clone()), a.add(tx.clone(), tz.clone())),
                    Formula::eq(ty, tz),
                ),
            ),
        ));
    }
    Theory { preset, axioms }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Goal {
    /// `∀x∀y x + y = y + x`.
    Comm,
    /// `∀x (x + x = x → x = 0)`.
    Theta,
    /// `∀x∀y (m·x = m·y → x = y)`.
    C(u64),
    /// `∀x∀y sⁿ(m·x) ≠ m·y`.
    D(u64, u64),
}

impl Goal {
    pub fn label(&self) -> String {
        match self {
            Goal::Comm => "comm".into(),
            Goal::Theta => "theta".into(),
            Goal::C(m) => format!("C {m}"),
            Goal::D(m, n) => format!("D {m} {n}"),
        }
    }

    /// Presentation names for the Skolem constants of the negated goal,
    /// in creation order.
    pub fn aliases(&self) -> &'static [&'static str] {
        match self {
            Goal::Comm => &["n", "m"],
            Goal::Theta => &["c"],
            Goal::C(_) | Goal::D(..) => &["a", "b"],
        }
    }

    pub fn validate(&self) -> Result<(), ArithError> {
        match *self {
            Goal::C(0) => Err(ArithError::BadParameters {
                goal: self.label(),
                constraint: "0 < m",
            }),
            Goal::D(m, n) if !(0 < n && n < m) => Err(ArithError::BadParameters {
                goal: self.label(),
                constraint: "0 < n < m",
            }),
            _ => Ok(()),
        }
    }
}

/// `θ(x, y) = (y + x = x → y = 0)`.
pub fn theta(a: &ArithSyms, x: &Term, y: &Term) -> Formula {
    Formula::implies(
        Formula::eq(a.add(y.clone(), x.clone()), x.clone()),
        Formula::eq(y.clone(), a.zero()),
    )
}

pub fn build_goal(a: &ArithSyms, goal: Goal) -> Result<Formula, ArithError> {
    goal.validate()?;
    let (tx, ty, _, x, y, _) = vars();
    Ok(match goal {
        Goal::Comm => Formula::forall_many(
            &[x, y],
            Formula::eq(a.add(tx.clone(), ty.clone()), a.add(ty, tx)),
        ),
        Goal::Theta => Formula::forall(x, theta(a, &tx, &tx)),
        Goal::C(m) => Formula::forall_many(
            &[x, y],
            Formula::implies(
                Formula::eq(a.times(m, &tx), a.times(m, &ty)),
                Formula::eq(tx, ty),
            ),
        ),
        Goal::D(m, n) => Formula::forall_many(
            &[x, y],
            Formula::neq(a.succ_pow(n, a.times(m, &tx)), a.times(m, &ty)),
        ),
    })
}

/// A benchmark problem: theory clauses followed by the clauses of the
/// negated goal.
#[derive(Clone, Debug)]
pub struct ArithProblem {
    pub lang: Language,
    pub syms: ArithSyms,
    pub theory: Theory,
    pub goal: Goal,
    pub theory_clauses: Vec<Clause>,
    pub goal_clauses: Vec<Clause>,
    /// Alias to Skolem symbol for the goal constants.
    pub aliases: BTreeMap<String, Sym>,
}

impl ArithProblem {
    pub fn clauses(&self) -> Vec<Clause> {
        let mut out = self.theory_clauses.clone();
        for c in &self.goal_clauses {
            if !out.contains(c) {
                out.push(c.clone());
            }
        }
        out
    }
}

/// The preset each clause-set kind uses by default: `T'` for `C`/`D`,
/// `T` for `theta` and `comm`.
pub fn default_preset(goal: Goal) -> TheoryPreset {
    match goal {
        Goal::C(_) | Goal::D(..) => TheoryPreset::TPrime,
        Goal::Comm | Goal::Theta => TheoryPreset::T,
    }
}

/// `CNF(sk^∃(theory + ¬goal))` over a fresh arithmetic language.
pub fn build_clause_set(goal: Goal, preset: TheoryPreset) -> Result<ArithProblem, ArithError> {
    let mut sig = Signature::new();
    let syms = ArithSyms::declare(&mut sig).expect("fresh signature");
    build_clause_set_in(Language::new(sig), syms, goal, preset)
}

/// Like [`build_clause_set`] but over an existing language.
pub fn build_clause_set_in(
    mut lang: Language,
    syms: ArithSyms,
    goal: Goal,
    preset: TheoryPreset,
) -> Result<ArithProblem, ArithError> {
    let goal_formula = build_goal(&syms, goal)?;
    let theory = build_preset(&syms, preset);
    let axioms: Vec<Formula> = theory.axioms.iter().map(|(_, f)| f.clone()).collect();
    let theory_clauses = clausify_all(&mut lang, &axioms);
    let before = lang.skolem.len();
    let goal_clauses = clausify_all(&mut lang, &[Formula::not(goal_formula)]);
    let mut aliases = BTreeMap::new();
    let new_syms: Vec<Sym> = lang.skolem.symbols().skip(before).map(|(s, _)| s).collect();
    for (sym, alias) in new_syms.into_iter().zip(goal.aliases()) {
        if lang.sig.lookup(alias).is_none() {
            lang.set_alias(sym, alias).expect("alias is free");
            aliases.insert(alias.to_string(), sym);
        }
    }
    Ok(ArithProblem {
        lang,
        syms,
        theory,
        goal,
        theory_clauses,
        goal_clauses,
        aliases,
    })
}

/// Value of a term in ℕ under `env` (truncated predecessor), or `None`
/// if it uses a symbol outside `0, s, p, +`.
pub fn eval_nat(a: &ArithSyms, t: &Term, env: &BTreeMap<Var, u64>) -> Option<u64> {
    match t {
        Term::Var(v) => env.get(v).copied(),
        Term::App(f, args) => {
            if *f == a.zero {
                Some(0)
            } else if *f == a.succ {
                Some(eval_nat(a, &args[0], env)? + 1)
            } else if *f == a.pred {
                Some(eval_nat(a, &args[0], env)?.saturating_sub(1))
            } else if *f == a.plus {
                Some(eval_nat(a, &args[0], env)? + eval_nat(a, &args[1], env)?)
            } else {
                None
            }
        }
    }
}

/// Truth of a quantifier-free formula in ℕ under `env`.
pub fn holds_nat(a: &ArithSyms, f: &Formula, env: &BTreeMap<Var, u64>) -> Option<bool> {
    Some(match f {
        Formula::Atom(crate::kernel::Atom::Eq(l, r)) => eval_nat(a, l, env)? == eval_nat(a, r, env)?,
        Formula::Atom(_) | Formula::Quant(..) => return None,
        Formula::Not(g) => !holds_nat(a, g, env)?,
        Formula::And(x, y) => holds_nat(a, x, env)? && holds_nat(a, y, env)?,
        Formula::Or(x, y) => holds_nat(a, x, env)? || holds_nat(a, y, env)?,
        Formula::Implies(x, y) => !holds_nat(a, x, env)? || holds_nat(a, y, env)?,
    })
}

/// Splits `∀x̄ φ` into `(x̄, φ)`.
pub fn strip_universal_prefix(f: &Formula) -> (Vec<Var>, &Formula) {
    let mut vars = Vec::new();
    let mut cur = f;
    while let Formula::Quant(crate::kernel::Quant::Forall, x, g) = cur {
        vars.push(*x);
        cur = g;
    }
    (vars, cur)
}
