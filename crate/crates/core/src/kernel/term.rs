use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Sym, Var};

/// A first-order term. Arguments are shared, so cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Var(Var),
    App(Sym, Arc<[Term]>),
}

/// Path from the root of a term to one of its subterms (argument indices).
pub type Path = Vec<usize>;

impl Term {
    pub fn var(v: Var) -> Term {
        Term::Var(v)
    }

    pub fn constant(sym: Sym) -> Term {
        Term::App(sym, Arc::from(Vec::new()))
    }

    pub fn app(sym: Sym, args: Vec<Term>) -> Term {
        Term::App(sym, Arc::from(args))
    }

    pub fn unary(sym: Sym, arg: Term) -> Term {
        Term::App(sym, Arc::from(vec![arg]))
    }

    pub fn binary(sym: Sym, left: Term, right: Term) -> Term {
        Term::App(sym, Arc::from(vec![left, right]))
    }

    pub fn as_var(&self) -> Option<Var> {
        match self {
            Term::Var(v) => Some(*v),
            Term::App(..) => None,
        }
    }

    pub fn head(&self) -> Option<Sym> {
        match self {
            Term::App(f, _) => Some(*f),
            Term::Var(_) => None,
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::App(_, args) => args,
            Term::Var(_) => &[],
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    pub fn contains_sym(&self, sym: Sym) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(f, args) => *f == sym || args.iter().any(|a| a.contains_sym(sym)),
        }
    }

    /// Variables in order of first occurrence (left to right, depth first).
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn collect_syms(&self, out: &mut BTreeSet<Sym>) {
        if let Term::App(f, args) = self {
            out.insert(*f);
            args.iter().for_each(|a| a.collect_syms(out));
        }
    }

    /// Constants and variables have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| 1 + a.depth()).max().unwrap_or(0),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn count_var(&self, v: Var) -> usize {
        match self {
            Term::Var(w) => usize::from(*w == v),
            Term::App(_, args) => args.iter().map(|a| a.count_var(v)).sum(),
        }
    }

    pub fn count_sym(&self, sym: Sym) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(f, args) => {
                usize::from(*f == sym) + args.iter().map(|a| a.count_sym(sym)).sum::<usize>()
            }
        }
    }

    pub fn at(&self, path: &[usize]) -> Option<&Term> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.args().get(i)?.at(rest),
        }
    }

    /// A copy of `self` with the subterm at `path` replaced by `new`.
    pub fn replace_at(&self, path: &[usize], new: Term) -> Term {
        match path.split_first() {
            None => new,
            Some((&i, rest)) => match self {
                Term::App(f, args) => {
                    let mut args: Vec<Term> = args.to_vec();
                    args[i] = args[i].replace_at(rest, new);
                    Term::app(*f, args)
                }
                Term::Var(_) => panic!("replace_at: path descends into a variable"),
            },
        }
    }

    /// Paths of all non-variable subterms, in pre-order.
    pub fn nonvar_positions(&self) -> Vec<Path> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.walk_nonvar(&mut path, &mut out);
        out
    }

    fn walk_nonvar(&self, path: &mut Path, out: &mut Vec<Path>) {
        if let Term::App(_, args) = self {
            out.push(path.clone());
            for (i, a) in args.iter().enumerate() {
                path.push(i);
                a.walk_nonvar(path, out);
                path.pop();
            }
        }
    }

    /// Paths of all subterms (including variables), in pre-order.
    pub fn all_positions(&self) -> Vec<Path> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.walk_all(&mut path, &mut out);
        out
    }

    fn walk_all(&self, path: &mut Path, out: &mut Vec<Path>) {
        out.push(path.clone());
        for (i, a) in self.args().iter().enumerate() {
            path.push(i);
            a.walk_all(path, out);
            path.pop();
        }
    }

    /// Replace every occurrence of `from` (as a whole subterm) by `to`.
    pub fn replace_all(&self, from: &Term, to: &Term) -> Term {
        if self == from {
            return to.clone();
        }
        match self {
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::app(*f, args.iter().map(|a| a.replace_all(from, to)).collect()),
        }
    }

    /// Rename variables through `f`.
    pub fn map_vars(&self, f: &mut impl FnMut(Var) -> Term) -> Term {
        match self {
            Term::Var(v) => f(*v),
            Term::App(s, args) => Term::app(*s, args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }
}
