//! Variables.
//!
//! A [`Var`] is a plain `u32`. Three disjoint ranges are used:
//!
//! * `0 .. BOUND_BASE`: clause variables, printed `X{i}`,
//! * `FREE_BASE ..` / `BOUND_BASE ..`: canonical variables produced by
//!   alpha-normalization, printed `F{i}` / `B{i}`,
//! * `NAMED_BASE ..`: variables carrying a user-visible name, interned
//!   process-wide.
//!
//! Nothing semantic ever depends on the numeric value of a named variable,
//! so interning order does not leak into results.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

const FREE_BASE: u32 = 1 << 22;
const BOUND_BASE: u32 = 1 << 23;
const NAMED_BASE: u32 = 1 << 24;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u32);

#[derive(Default)]
struct Interner {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

fn interner() -> &'static Mutex<Interner> {
    static INTERNER: OnceLock<Mutex<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| Mutex::new(Interner::default()))
}

impl Var {
    /// The variable with the given display name.
    pub fn named(name: &str) -> Var {
        let mut table = interner().lock().expect("variable interner poisoned");
        if let Some(&id) = table.ids.get(name) {
            return Var(NAMED_BASE + id);
        }
        let id = table.names.len() as u32;
        table.names.push(name.to_string());
        table.ids.insert(name.to_string(), id);
        Var(NAMED_BASE + id)
    }

    /// Clause variable number `i`.
    pub const fn indexed(i: u32) -> Var {
        Var(i)
    }

    pub(crate) const fn canonical_free(i: u32) -> Var {
        Var(FREE_BASE + i)
    }

    pub(crate) const fn canonical_bound(i: u32) -> Var {
        Var(BOUND_BASE + i)
    }

    pub fn is_clause_var(self) -> bool {
        self.0 < FREE_BASE
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn name(self) -> String {
        if self.0 >= NAMED_BASE {
            let table = interner().lock().expect("variable interner poisoned");
            table.names[(self.0 - NAMED_BASE) as usize].clone()
        } else if self.0 >= BOUND_BASE {
            format!("B{}", self.0 - BOUND_BASE)
        } else if self.0 >= FREE_BASE {
            format!("F{}", self.0 - FREE_BASE)
        } else {
            format!("X{}", self.0)
        }
    }

    /// A primed variant of this variable (`x` becomes `x'`).
    pub fn primed(self) -> Var {
        Var::named(&format!("{}'", self.name()))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        assert_eq!(Var::named("x"), Var::named("x"));
        assert_ne!(Var::named("x"), Var::named("y"));
        assert_eq!(Var::named("zz").name(), "zz");
        assert_eq!(Var::indexed(3).name(), "X3");
        assert_eq!(Var::named("x").primed().name(), "x'");
    }
}
