use crate::kernel::{Atom, Clause, Literal, Subst};

use crate::kernel::match_term;

/// True iff some substitution maps `c` into `d` with distinct literals of
/// `c` going to distinct literals of `d`. Equations match in either
/// orientation.
pub fn subsumes(c: &Clause, d: &Clause) -> bool {
    if c.len() > d.len() {
        return false;
    }
    let mut used = vec![false; d.len()];
    search(c.literals(), d.literals(), &mut used, &Subst::new())
}

fn search(rest: &[Literal], target: &[Literal], used: &mut [bool], s: &Subst) -> bool {
    let Some((first, tail)) = rest.split_first() else {
        return true;
    };
    for (i, t) in target.iter().enumerate() {
        if used[i] || t.positive != first.positive {
            continue;
        }
        for s2 in match_literal(first, t, s) {
            used[i] = true;
            let ok = search(tail, target, used, &s2);
            used[i] = false;
            if ok {
                return true;
            }
        }
    }
    false
}

fn match_literal(p: &Literal, t: &Literal, s: &Subst) -> Vec<Subst> {
    let mut out = Vec::new();
    match (&p.atom, &t.atom) {
        (Atom::Eq(a, b), Atom::Eq(c, d)) => {
            for (x, y) in [(c, d), (d, c)] {
                let mut s2 = s.clone();
                if match_term(a, x, &mut s2) && match_term(b, y, &mut s2) && !out.contains(&s2) {
                    out.push(s2);
                }
            }
        }
        (Atom::Pred(..), Atom::Pred(..)) => {
            let mut s2 = s.clone();
            if crate::kernel::match_atom(&p.atom, &t.atom, &mut s2) {
                out.push(s2);
            }
        }
        _ => {}
    }
    out
}
