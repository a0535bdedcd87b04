//! The two-branch structure on `{0,1} × ℤ`: elements `(0, n)` with `n ≥ 0`
//! form a copy of ℕ, elements `(1, n)` a copy of ℤ. Addition takes the
//! maximum flag, and the predecessor truncates only on the ℕ branch.
//!
//! The structure satisfies the base axioms plus `x ≠ 0 → x = s(p(x))` and
//! parameter-free open induction, yet `(1,0) + (1,0) = (1,0) ≠ 0`. The
//! submodules turn the relevant arguments into procedures: linear
//! profiles of `p`-free atoms, atom radii, a decision procedure for
//! one-variable universal sentences, and `p`-elimination.

mod check;
mod linear;
mod pelim;
pub mod suite;

#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::kernel::notation::ArithSyms;
use crate::kernel::{Atom, Formula, Term, Var};

pub use check::{
    check_induction_axiom_m, random_p_term, random_pfree_atom, random_pfree_formula, sample_check_axioms_m,
    AxiomReport, AxiomResult, InductionCheck,
};
pub use linear::{atom_profile, atom_radius, decide_open_universal_m, linear_profile, AtomProfile, Decision, LinearForm, Region};
pub use pelim::{eliminate_p_formula, eliminate_p_term, shift_successor};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CountermodelError {
    #[error("symbol `{0}` is outside 0, s, p, +")]
    OutsideLanguage(String),
    #[error("term or formula contains p")]
    ContainsP,
    #[error("expected at most one variable, found {0}")]
    TooManyVariables(usize),
    #[error("formula is not quantifier-free")]
    Quantified,
    #[error("variable {0} is unassigned")]
    Unassigned(String),
    #[error("term is ground")]
    Ground,
    #[error("(0, {0}) is not an element: the first branch has no negative numbers")]
    NotAnElement(BigInt),
}

/// An element `(flag, n)`; flag 0 requires `n ≥ 0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct MElem {
    flag: u8,
    n: BigInt,
}

impl MElem {
    pub fn new(flag: bool, n: impl Into<BigInt>) -> Result<MElem, CountermodelError> {
        let n = n.into();
        if !flag && n.is_negative() {
            return Err(CountermodelError::NotAnElement(n));
        }
        Ok(MElem { flag: flag as u8, n })
    }

    /// `(0, n)`.
    pub fn nat(n: u64) -> MElem {
        MElem { flag: 0, n: n.into() }
    }

    /// `(1, n)`.
    pub fn int(n: impl Into<BigInt>) -> MElem {
        MElem { flag: 1, n: n.into() }
    }

    pub fn zero() -> MElem {
        MElem::nat(0)
    }

    pub fn flag(&self) -> bool {
        self.flag == 1
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn succ(&self) -> MElem {
        MElem {
            flag: self.flag,
            n: &self.n + 1,
        }
    }

    pub fn pred(&self) -> MElem {
        let n = if self.flag == 0 && self.n.is_zero() {
            BigInt::zero()
        } else {
            &self.n - BigInt::one()
        };
        MElem { flag: self.flag, n }
    }

    pub fn add(&self, other: &MElem) -> MElem {
        MElem {
            flag: self.flag.max(other.flag),
            n: &self.n + &other.n,
        }
    }
}

impl fmt::Display for MElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.flag, self.n)
    }
}

pub type MEnv = BTreeMap<Var, MElem>;

pub fn eval_term_m(a: &ArithSyms, t: &Term, env: &MEnv) -> Result<MElem, CountermodelError> {
    match t {
        Term::Var(v) => env.get(v).cloned().ok_or_else(|| CountermodelError::Unassigned(v.name())),
        Term::App(f, args) => {
            if *f == a.zero {
                Ok(MElem::zero())
            } else if *f == a.succ {
                Ok(eval_term_m(a, &args[0], env)?.succ())
            } else if *f == a.pred {
                Ok(eval_term_m(a, &args[0], env)?.pred())
            } else if *f == a.plus {
                Ok(eval_term_m(a, &args[0], env)?.add(&eval_term_m(a, &args[1], env)?))
            } else {
                Err(CountermodelError::OutsideLanguage(format!("#{}", f.0)))
            }
        }
    }
}

pub fn eval_open_formula_m(a: &ArithSyms, f: &Formula, env: &MEnv) -> Result<bool, CountermodelError> {
    Ok(match f {
        Formula::Atom(Atom::Eq(l, r)) => eval_term_m(a, l, env)? == eval_term_m(a, r, env)?,
        Formula::Atom(Atom::Pred(p, _)) => return Err(CountermodelError::OutsideLanguage(format!("#{}", p.0))),
        Formula::Quant(..) => return Err(CountermodelError::Quantified),
        Formula::Not(g) => !eval_open_formula_m(a, g, env)?,
        Formula::And(x, y) => eval_open_formula_m(a, x, env)? && eval_open_formula_m(a, y, env)?,
        Formula::Or(x, y) => eval_open_formula_m(a, x, env)? || eval_open_formula_m(a, y, env)?,
        Formula::Implies(x, y) => !eval_open_formula_m(a, x, env)? || eval_open_formula_m(a, y, env)?,
    })
}

/// The only free variable of a one-variable term, if any.
pub(crate) fn term_var(t: &Term) -> Result<Option<Var>, CountermodelError> {
    let mut vs = t.vars();
    vs.dedup();
    one_var(vs)
}

pub(crate) fn formula_var(f: &Formula) -> Result<Option<Var>, CountermodelError> {
    if !f.is_quantifier_free() {
        return Err(CountermodelError::Quantified);
    }
    one_var(f.free_vars())
}

fn one_var(mut vs: Vec<Var>) -> Result<Option<Var>, CountermodelError> {
    vs.sort();
    vs.dedup();
    match vs.len() {
        0 => Ok(None),
        1 => Ok(Some(vs[0])),
        n => Err(CountermodelError::TooManyVariables(n)),
    }
}

pub(crate) fn contains_p(a: &ArithSyms, t: &Term) -> bool {
    t.contains_sym(a.pred)
}
