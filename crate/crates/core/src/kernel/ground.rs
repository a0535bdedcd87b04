use super::{Signature, Sym, Term};

/// All ground terms over the function symbols of `sig` with depth at most
/// `max_depth`. See [`enumerate_ground_terms_over`].
pub fn enumerate_ground_terms(sig: &Signature, max_depth: usize) -> Vec<Term> {
    let syms: Vec<Sym> = sig.functions().map(|(s, _)| s).collect();
    enumerate_ground_terms_over(sig, &syms, max_depth)
}

/// Ground terms built from `syms` with depth at most `max_depth`.
///
/// Ordered by depth, then by symbol declaration order, then lexicographically
/// by the positions of the arguments in the output list. Each list is a
/// prefix of the list for a larger depth. Empty when there is no constant.
pub fn enumerate_ground_terms_over(sig: &Signature, syms: &[Sym], max_depth: usize) -> Vec<Term> {
    let mut syms = syms.to_vec();
    syms.sort();
    syms.dedup();
    let mut out: Vec<Term> = syms
        .iter()
        .filter(|s| sig.arity(**s) == 0)
        .map(|s| Term::constant(*s))
        .collect();
    if out.is_empty() {
        return out;
    }
    // out[level_start[d]..level_start[d+1]] holds the terms of depth d.
    let mut level_start = vec![0, out.len()];
    for depth in 1..=max_depth {
        let below = out.len();
        let prev_start = level_start[depth - 1];
        for &f in &syms {
            let arity = sig.arity(f);
            if arity == 0 {
                continue;
            }
            // Odometer over argument indices in 0..below, keeping tuples
            // with at least one argument of depth exactly depth-1.
            let mut idx = vec![0usize; arity];
            loop {
                if idx.iter().any(|&i| i >= prev_start) {
                    out.push(Term::app(f, idx.iter().map(|&i| out[i].clone()).collect()));
                }
                let mut k = arity;
                let exhausted = loop {
                    if k == 0 {
                        break true;
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < below {
                        break false;
                    }
                    idx[k] = 0;
                };
                if exhausted {
                    break;
                }
            }
        }
        if out.len() == below {
            break;
        }
        level_start.push(out.len());
    }
    out
}
