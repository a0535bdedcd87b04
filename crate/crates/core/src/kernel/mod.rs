//! Syntactic kernel: symbols, terms, formulas, clauses, substitutions,
//! unification, ground-term enumeration and finite-structure evaluation.
//!
//! All values are immutable once built and can be shared between threads.

mod clause;
mod formula;
mod ground;
pub mod notation;
mod print;
pub mod semantics;
mod subst;
mod symbol;
mod term;
mod unify;
mod var;

pub use clause::{Clause, Literal};
pub use formula::{Atom, Formula, Quant};
pub use ground::{enumerate_ground_terms, enumerate_ground_terms_over};
pub use print::Printer;
pub use subst::Subst;
pub use symbol::{Origin, Signature, Sym, SymbolInfo, SymbolKind};
pub use term::{Path, Term};
pub use unify::{match_atom, match_term, unify_atoms, unify_literals, unify_terms, unify_terms_with};
pub use var::Var;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("symbol `{0}` is already declared")]
    DuplicateSymbol(String),
    #[error("symbol `{symbol}` has arity {expected}, used with {found} arguments")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}
