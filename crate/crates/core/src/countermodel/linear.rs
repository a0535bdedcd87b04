//! Linear profiles of `p`-free one-variable terms and atoms.
//!
//! On either branch, a term containing `x` evaluates to `coeff·n + offset`
//! with the flag of the argument; a ground term evaluates to its natural
//! value with flag 0. An atom is therefore true everywhere, nowhere, or at
//! a single point of each branch, which bounds the points a decision
//! procedure has to look at.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::kernel::notation::ArithSyms;
use crate::kernel::{Atom, Formula, Term, Var};

use super::{contains_p, eval_open_formula_m, formula_var, term_var, CountermodelError, MElem, MEnv};

/// `coeff·n + offset`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearForm {
    pub coeff: BigInt,
    pub offset: BigInt,
}

impl LinearForm {
    pub fn at(&self, n: &BigInt) -> BigInt {
        &self.coeff * n + &self.offset
    }
}

/// Where an atom holds on one branch.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Region {
    Empty,
    All,
    Point(BigInt),
}

impl Region {
    pub fn contains(&self, n: &BigInt) -> bool {
        match self {
            Region::Empty => false,
            Region::All => true,
            Region::Point(p) => p == n,
        }
    }

    fn point(&self) -> Option<&BigInt> {
        match self {
            Region::Point(p) => Some(p),
            _ => None,
        }
    }
}

/// Truth sets of an atom on the flag-0 branch (`nat`, indexed by `n ≥ 0`)
/// and the flag-1 branch (`int`, indexed by `n ∈ ℤ`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AtomProfile {
    pub nat: Region,
    pub int: Region,
}

/// Rejects `p` and symbols outside the arithmetic language.
pub fn linear_profile(a: &ArithSyms, t: &Term) -> Result<LinearForm, CountermodelError> {
    if contains_p(a, t) {
        return Err(CountermodelError::ContainsP);
    }
    term_var(t)?;
    linear(a, t)
}

fn linear(a: &ArithSyms, t: &Term) -> Result<LinearForm, CountermodelError> {
    match t {
        Term::Var(_) => Ok(LinearForm {
            coeff: 1.into(),
            offset: 0.into(),
        }),
        Term::App(f, args) => {
            if *f == a.zero {
                Ok(LinearForm {
                    coeff: 0.into(),
                    offset: 0.into(),
                })
            } else if *f == a.succ {
                let mut l = linear(a, &args[0])?;
                l.offset += 1;
                Ok(l)
            } else if *f == a.plus {
                let (x, y) = (linear(a, &args[0])?, linear(a, &args[1])?);
                Ok(LinearForm {
                    coeff: x.coeff + y.coeff,
                    offset: x.offset + y.offset,
                })
            } else if *f == a.pred {
                Err(CountermodelError::ContainsP)
            } else {
                Err(CountermodelError::OutsideLanguage(format!("#{}", f.0)))
            }
        }
    }
}

/// Solutions in ℤ of `l(n) = r(n)`. A non-integral root gives `Empty`.
fn solve(l: &LinearForm, r: &LinearForm) -> Region {
    let dc = &l.coeff - &r.coeff;
    let doff = &r.offset - &l.offset;
    if dc.is_zero() {
        return if doff.is_zero() { Region::All } else { Region::Empty };
    }
    let (q, rem) = doff.div_rem(&dc);
    if rem.is_zero() {
        Region::Point(q)
    } else {
        Region::Empty
    }
}

fn nonnegative(r: Region) -> Region {
    match r {
        Region::Point(p) if p.is_negative() => Region::Empty,
        r => r,
    }
}

pub fn atom_profile(a: &ArithSyms, atom: &Atom) -> Result<AtomProfile, CountermodelError> {
    let Atom::Eq(l, r) = atom else {
        return Err(CountermodelError::OutsideLanguage("predicate".into()));
    };
    let (ll, lr) = (linear_profile(a, l)?, linear_profile(a, r)?);
    let mut vs = atom.vars();
    vs.sort();
    vs.dedup();
    if vs.len() > 1 {
        return Err(CountermodelError::TooManyVariables(vs.len()));
    }
    let both = solve(&ll, &lr);
    Ok(match (l.is_ground(), r.is_ground()) {
        (true, true) => AtomProfile {
            nat: both.clone(),
            int: both,
        },
        (false, false) => AtomProfile {
            nat: nonnegative(both.clone()),
            int: both,
        },
        // A ground side has flag 0 and never equals a flag-1 value.
        _ => AtomProfile {
            nat: nonnegative(both),
            int: Region::Empty,
        },
    })
}

/// The least `N` such that for all `n ≥ N` the atom holds at `(1, −n)`
/// iff it holds in ℕ at `n`. In the mixed ground/non-ground case the
/// result is at least 1.
pub fn atom_radius(a: &ArithSyms, atom: &Atom) -> Result<u64, CountermodelError> {
    let prof = atom_profile(a, atom)?;
    let beyond = [prof.nat.point(), prof.int.point()]
        .into_iter()
        .flatten()
        .map(|p| p.abs())
        .max()
        .unwrap_or_default();
    let beyond: u64 = (&beyond + 1u32).try_into().unwrap_or(u64::MAX);
    let agrees = |n: u64| {
        let n = BigInt::from(n);
        prof.int.contains(&-n.clone()) == prof.nat.contains(&n)
    };
    let mut radius = beyond;
    while radius > 0 && agrees(radius - 1) {
        radius -= 1;
    }
    if let Atom::Eq(l, r) = atom {
        if l.is_ground() != r.is_ground() {
            radius = radius.max(1);
        }
    }
    Ok(radius)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Decision {
    Holds,
    Counterexample(MElem),
}

impl Decision {
    pub fn holds(&self) -> bool {
        matches!(self, Decision::Holds)
    }
}

/// Decides `∀x φ` in the structure for `p`-free quantifier-free `φ` with
/// at most one variable. Every atom is constant outside its single point
/// (if any), so it suffices to evaluate at all such points and at one
/// other point per branch.
pub fn decide_open_universal_m(a: &ArithSyms, phi: &Formula) -> Result<Decision, CountermodelError> {
    let x = formula_var(phi)?;
    let mut nat_points: Vec<BigInt> = vec![0.into()];
    let mut int_points: Vec<BigInt> = Vec::new();
    for atom in phi.atoms() {
        let prof = atom_profile(a, &atom)?;
        nat_points.extend(prof.nat.point().cloned());
        int_points.extend(prof.int.point().cloned());
    }
    for pts in [&mut nat_points, &mut int_points] {
        let generic = pts.iter().map(|p| p.abs()).max().unwrap_or_default() + 1;
        pts.push(generic);
        pts.sort();
        pts.dedup();
    }
    let Some(x) = x else {
        let env = MEnv::new();
        return Ok(if eval_open_formula_m(a, phi, &env)? {
            Decision::Holds
        } else {
            Decision::Counterexample(MElem::zero())
        });
    };
    let candidates = nat_points
        .into_iter()
        .map(|n| MElem::new(false, n))
        .chain(int_points.into_iter().map(|n| Ok(MElem::int(n))));
    for e in candidates {
        let e = e?;
        if !holds_at(a, phi, x, &e)? {
            return Ok(Decision::Counterexample(e));
        }
    }
    Ok(Decision::Holds)
}

pub(crate) fn holds_at(a: &ArithSyms, phi: &Formula, x: Var, e: &MElem) -> Result<bool, CountermodelError> {
    let env = MEnv::from([(x, e.clone())]);
    eval_open_formula_m(a, phi, &env)
}
