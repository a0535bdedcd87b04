//! Evaluation over finite structures `{0, …, n-1}`, used as a brute-force
//! oracle for equivalence and entailment checks.

use std::collections::BTreeMap;

use super::{Atom, Clause, Formula, Quant, Signature, Sym, SymbolKind, Term, Var};

/// A finite structure for a set of symbols. Tables are indexed by the
/// argument tuple read as a base-`size` number (first argument most
/// significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    pub size: usize,
    funcs: BTreeMap<Sym, Vec<usize>>,
    preds: BTreeMap<Sym, Vec<bool>>,
}

pub type Env = BTreeMap<Var, usize>;

fn table_len(size: usize, arity: usize) -> usize {
    size.pow(arity as u32)
}

impl Interpretation {
    /// Number of structures of the given size for `syms`, if it fits in a `u64`.
    pub fn count(sig: &Signature, syms: &[Sym], size: usize) -> Option<u64> {
        let mut total: u64 = 1;
        for &s in syms {
            let info = sig.info(s);
            let radix = match info.kind {
                SymbolKind::Function => size as u64,
                SymbolKind::Predicate => 2,
            };
            let cells = u32::try_from(table_len(size, info.arity)).ok()?;
            total = total.checked_mul(radix.checked_pow(cells)?)?;
        }
        Some(total)
    }

    /// The `index`-th structure in a fixed mixed-radix enumeration.
    pub fn from_index(sig: &Signature, syms: &[Sym], size: usize, mut index: u64) -> Interpretation {
        let mut it = Interpretation {
            size,
            funcs: BTreeMap::new(),
            preds: BTreeMap::new(),
        };
        for &s in syms {
            let info = sig.info(s);
            let cells = table_len(size, info.arity);
            match info.kind {
                SymbolKind::Function => {
                    let table = (0..cells)
                        .map(|_| {
                            let d = (index % size as u64) as usize;
                            index /= size as u64;
                            d
                        })
                        .collect();
                    it.funcs.insert(s, table);
                }
                SymbolKind::Predicate => {
                    let table = (0..cells)
                        .map(|_| {
                            let d = index % 2 == 1;
                            index /= 2;
                            d
                        })
                        .collect();
                    it.preds.insert(s, table);
                }
            }
        }
        it
    }

    /// Builds a structure from explicit tables.
    pub fn from_tables(
        size: usize,
        funcs: BTreeMap<Sym, Vec<usize>>,
        preds: BTreeMap<Sym, Vec<bool>>,
    ) -> Interpretation {
        Interpretation { size, funcs, preds }
    }

    fn cell(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, a| acc * self.size + a)
    }

    pub fn eval_term(&self, t: &Term, env: &Env) -> usize {
        match t {
            Term::Var(v) => *env.get(v).expect("unassigned variable"),
            Term::App(f, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.eval_term(a, env)).collect();
                self.funcs.get(f).expect("uninterpreted function symbol")[self.cell(&vals)]
            }
        }
    }

    pub fn eval_atom(&self, a: &Atom, env: &Env) -> bool {
        match a {
            Atom::Eq(l, r) => self.eval_term(l, env) == self.eval_term(r, env),
            Atom::Pred(p, args) => {
                let vals: Vec<usize> = args.iter().map(|a| self.eval_term(a, env)).collect();
                self.preds.get(p).expect("uninterpreted predicate symbol")[self.cell(&vals)]
            }
        }
    }

    pub fn eval_formula(&self, f: &Formula, env: &mut Env) -> bool {
        match f {
            Formula::Atom(a) => self.eval_atom(a, env),
            Formula::Not(g) => !self.eval_formula(g, env),
            Formula::And(a, b) => self.eval_formula(a, env) && self.eval_formula(b, env),
            Formula::Or(a, b) => self.eval_formula(a, env) || self.eval_formula(b, env),
            Formula::Implies(a, b) => !self.eval_formula(a, env) || self.eval_formula(b, env),
            Formula::Quant(q, x, g) => {
                let saved = env.get(x).copied();
                let mut result = matches!(q, Quant::Forall);
                for d in 0..self.size {
                    env.insert(*x, d);
                    let v = self.eval_formula(g, env);
                    if v != result {
                        result = v;
                        break;
                    }
                }
                match saved {
                    Some(d) => env.insert(*x, d),
                    None => env.remove(x),
                };
                result
            }
        }
    }

    /// Truth of the universal closure of `f`.
    pub fn satisfies(&self, f: &Formula) -> bool {
        self.eval_formula(&f.universal_closure(), &mut Env::new())
    }

    /// Truth of a clause under every assignment of its variables.
    pub fn satisfies_clause(&self, c: &Clause) -> bool {
        let vars = c.vars();
        for_each_assignment(&vars, self.size, |env| {
            c.literals()
                .iter()
                .any(|l| self.eval_atom(&l.atom, env) == l.positive)
        })
    }
}

/// Calls `f` on every assignment of `vars` over `0..size`; stops early and
/// returns false as soon as `f` does.
pub fn for_each_assignment(vars: &[Var], size: usize, mut f: impl FnMut(&Env) -> bool) -> bool {
    let mut idx = vec![0usize; vars.len()];
    loop {
        let env: Env = vars.iter().copied().zip(idx.iter().copied()).collect();
        if !f(&env) {
            return false;
        }
        let mut k = vars.len();
        loop {
            if k == 0 {
                return true;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < size {
                break;
            }
            idx[k] = 0;
        }
    }
}
