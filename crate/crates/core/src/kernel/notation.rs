//! Builders for the arithmetic notation `m·t`, `sᵐ(t)` and numerals.

use super::{KernelError, Signature, Sym, Term};

/// The symbols `0`, `s`, `p` and `+` of the arithmetic language.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ArithSyms {
    pub zero: Sym,
    pub succ: Sym,
    pub pred: Sym,
    pub plus: Sym,
}

impl ArithSyms {
    /// Declares the four symbols (or reuses existing ones of the right arity).
    pub fn declare(sig: &mut Signature) -> Result<ArithSyms, KernelError> {
        Ok(ArithSyms {
            zero: sig.ensure_function("0", 0)?,
            succ: sig.ensure_function("s", 1)?,
            pred: sig.ensure_function("p", 1)?,
            plus: sig.ensure_function("+", 2)?,
        })
    }

    pub fn lookup(sig: &Signature) -> Option<ArithSyms> {
        let get = |name: &str, arity: usize| {
            sig.lookup(name)
                .filter(|s| sig.arity(*s) == arity && !sig.info(*s).is_skolem())
        };
        Some(ArithSyms {
            zero: get("0", 0)?,
            succ: get("s", 1)?,
            pred: get("p", 1)?,
            plus: get("+", 2)?,
        })
    }

    pub fn zero(&self) -> Term {
        Term::constant(self.zero)
    }

    pub fn s(&self, t: Term) -> Term {
        Term::unary(self.succ, t)
    }

    pub fn p(&self, t: Term) -> Term {
        Term::unary(self.pred, t)
    }

    pub fn add(&self, a: Term, b: Term) -> Term {
        Term::binary(self.plus, a, b)
    }

    /// `sᵐ(t)`.
    pub fn succ_pow(&self, m: u64, t: Term) -> Term {
        (0..m).fold(t, |acc, _| self.s(acc))
    }

    /// The numeral `sᵐ(0)`.
    pub fn numeral(&self, m: u64) -> Term {
        self.succ_pow(m, self.zero())
    }

    /// `m·t = t + (t + ⋯ + (t + t)⋯)` with `m` copies of `t`; `0·t = 0`.
    pub fn times(&self, m: u64, t: &Term) -> Term {
        if m == 0 {
            return self.zero();
        }
        (1..m).fold(t.clone(), |acc, _| self.add(t.clone(), acc))
    }

    /// The value of a ground term over `0, s, p, +` in ℕ, or `None` if the
    /// term uses another symbol or a variable.
    pub fn value(&self, t: &Term) -> Option<u64> {
        match t {
            Term::Var(_) => None,
            Term::App(f, args) => {
                if *f == self.zero {
                    Some(0)
                } else if *f == self.succ {
                    Some(self.value(&args[0])? + 1)
                } else if *f == self.pred {
                    Some(self.value(&args[0])?.saturating_sub(1))
                } else if *f == self.plus {
                    Some(self.value(&args[0])? + self.value(&args[1])?)
                } else {
                    None
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Var;

    #[test]
    fn builders() {
        let mut sig = Signature::new();
        let a = ArithSyms::declare(&mut sig).unwrap();
        let x = Term::Var(Var::named("x"));
        assert_eq!(a.numeral(3), a.s(a.s(a.s(a.zero()))));
        assert_eq!(a.times(2, &x), a.add(x.clone(), x.clone()));
        assert_eq!(
            a.times(3, &x),
            a.add(x.clone(), a.add(x.clone(), x.clone()))
        );
        assert_eq!(a.times(1, &x), x);
        assert_eq!(a.times(0, &x), a.zero());
        assert_eq!(a.succ_pow(0, x.clone()), x);
        assert_eq!(a.value(&a.p(a.numeral(0))), Some(0));
    }
}
