//! Independent checking of refutation traces.
//!
//! [`replay`] re-executes every step that the empty clause depends on and
//! compares the result with the recorded clause and unifier. Induction
//! steps are rebuilt from their records in a copy of the language, so the
//! canonical Skolem symbols must come out identical. [`entails_small`]
//! checks `parents ⊨ child` over every interpretation of a given size,
//! which is the semantic audit applied to sampled steps.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::induction::rebuild_clauses;
use crate::kernel::notation::ArithSyms;
use crate::kernel::semantics::Interpretation;
use crate::kernel::{Clause, Signature, Sym};
use crate::saturation::{
    ancestors, eq_factor_at, eq_resolve_at, factor_at, paramodulate_at, resolve_at, rewrite_at, Inference,
    ProofStep,
};
use crate::skolem::Language;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error("no step {0}")]
    UnknownStep(usize),
    #[error("step {0} is not the empty clause")]
    NotEmpty(usize),
    #[error("step {step}: parent {parent} does not precede it")]
    ParentOrder { step: usize, parent: usize },
    #[error("step {step}: expected {expected} parents for {rule}")]
    Arity { step: usize, rule: &'static str, expected: usize },
    #[error("step {step}: {rule} does not apply to the recorded premises")]
    NotApplicable { step: usize, rule: &'static str },
    #[error("step {step}: {rule} yields a different clause")]
    Mismatch { step: usize, rule: &'static str },
    #[error("step {step}: {rule} yields a different unifier")]
    UnifierMismatch { step: usize, rule: &'static str },
    #[error("step {0} is not among the input clauses")]
    NotInput(usize),
    #[error("step {0}: induction step without arithmetic symbols")]
    NoArithmetic(usize),
    #[error("step {step}: induction clauses could not be rebuilt: {msg}")]
    Induction { step: usize, msg: String },
    #[error("step {step}: symbol {symbol} occurs in neither the parents nor the rule's Skolem symbols")]
    NewSymbol { step: usize, symbol: String },
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct ReplaySummary {
    /// Steps checked, in id order.
    pub steps: Vec<usize>,
    pub induction_steps: usize,
}

/// Replays the derivation of step `root`, which must hold the empty clause.
/// `inputs`, when given, is the initial clause set that input steps must
/// come from. `arith` is needed only if the trace has induction steps.
pub fn replay(
    steps: &[ProofStep],
    root: usize,
    inputs: Option<&[Clause]>,
    lang: &Language,
    arith: Option<&ArithSyms>,
) -> Result<ReplaySummary, ReplayError> {
    let step = steps.get(root).ok_or(ReplayError::UnknownStep(root))?;
    if !step.clause.is_empty() {
        return Err(ReplayError::NotEmpty(root));
    }
    for s in steps {
        if let Some(&p) = s.parents.iter().find(|p| **p >= s.id) {
            return Err(ReplayError::ParentOrder { step: s.id, parent: p });
        }
    }
    let ids = ancestors(steps, root);
    let mut scratch = lang.clone();
    let mut summary = ReplaySummary::default();
    for &id in &ids {
        let step = &steps[id];
        if step.id != id {
            return Err(ReplayError::UnknownStep(id));
        }
        replay_step(steps, step, inputs, &mut scratch, arith)?;
        check_symbols(steps, step, &scratch)?;
        summary.induction_steps += step.inference.is_induction() as usize;
    }
    summary.steps = ids;
    Ok(summary)
}

fn parents<'a>(steps: &'a [ProofStep], step: &ProofStep, n: usize) -> Result<Vec<&'a Clause>, ReplayError> {
    if step.parents.len() != n {
        return Err(ReplayError::Arity {
            step: step.id,
            rule: step.rule(),
            expected: n,
        });
    }
    Ok(step.parents.iter().map(|p| &steps[*p].clause).collect())
}

fn compare(step: &ProofStep, got: Option<(Clause, crate::kernel::Subst)>) -> Result<(), ReplayError> {
    let rule = step.rule();
    let (clause, unifier) = got.ok_or(ReplayError::NotApplicable { step: step.id, rule })?;
    if clause != step.clause {
        return Err(ReplayError::Mismatch { step: step.id, rule });
    }
    if unifier != step.unifier {
        return Err(ReplayError::UnifierMismatch { step: step.id, rule });
    }
    Ok(())
}

fn replay_step(
    steps: &[ProofStep],
    step: &ProofStep,
    inputs: Option<&[Clause]>,
    lang: &mut Language,
    arith: Option<&ArithSyms>,
) -> Result<(), ReplayError> {
    match &step.inference {
        Inference::Input => {
            parents(steps, step, 0)?;
            match inputs {
                Some(cs) if !cs.contains(&step.clause) => Err(ReplayError::NotInput(step.id)),
                _ => Ok(()),
            }
        }
        Inference::Reflexivity => {
            parents(steps, step, 0)?;
            match step.clause.literals() {
                [l] if l.positive && l.is_trivially_true() => Ok(()),
                _ => Err(ReplayError::Mismatch {
                    step: step.id,
                    rule: step.rule(),
                }),
            }
        }
        Inference::Resolution {
            left_lit,
            right_lit,
            flip,
        } => {
            let p = parents(steps, step, 2)?;
            compare(step, resolve_at(p[0], *left_lit, p[1], *right_lit, *flip))
        }
        Inference::Factoring { first, second, flip } => {
            let p = parents(steps, step, 1)?;
            compare(step, factor_at(p[0], *first, *second, *flip))
        }
        Inference::Paramodulation {
            from_lit,
            left_to_right,
            into_lit,
            path,
        } => {
            let p = parents(steps, step, 2)?;
            compare(step, paramodulate_at(p[0], *from_lit, *left_to_right, p[1], *into_lit, path))
        }
        Inference::EqualityResolution { lit } => {
            let p = parents(steps, step, 1)?;
            compare(step, eq_resolve_at(p[0], *lit))
        }
        Inference::EqualityFactoring {
            first,
            first_l2r,
            second,
            second_l2r,
        } => {
            let p = parents(steps, step, 1)?;
            compare(step, eq_factor_at(p[0], *first, *first_l2r, *second, *second_l2r))
        }
        Inference::Demodulation { rewrites } => {
            let rule = step.rule();
            let Some((&first, units)) = step.parents.split_first() else {
                return Err(ReplayError::Arity {
                    step: step.id,
                    rule,
                    expected: 2,
                });
            };
            let mut cur = steps[first].clause.clone();
            for r in rewrites {
                if !units.contains(&r.unit) {
                    return Err(ReplayError::NotApplicable { step: step.id, rule });
                }
                cur = rewrite_at(&cur, &steps[r.unit].clause, r.left_to_right, r.lit, &r.path)
                    .ok_or(ReplayError::NotApplicable { step: step.id, rule })?;
            }
            if rewrites.is_empty() || cur != step.clause {
                return Err(ReplayError::Mismatch { step: step.id, rule });
            }
            Ok(())
        }
        Inference::Induction(record) => {
            let a = arith.ok_or(ReplayError::NoArithmetic(step.id))?;
            let premise = match step.parents.as_slice() {
                [] => None,
                [p] => Some(&steps[*p].clause),
                _ => {
                    return Err(ReplayError::Arity {
                        step: step.id,
                        rule: step.rule(),
                        expected: 1,
                    })
                }
            };
            let rebuilt = rebuild_clauses(lang, a, record, premise).map_err(|e| ReplayError::Induction {
                step: step.id,
                msg: e.to_string(),
            })?;
            if rebuilt.contains(&step.clause) {
                Ok(())
            } else {
                Err(ReplayError::Mismatch {
                    step: step.id,
                    rule: step.rule(),
                })
            }
        }
    }
}

/// Derived clauses only mention symbols of their parents; induction steps
/// may add Skolem symbols and the arithmetic signature.
fn check_symbols(steps: &[ProofStep], step: &ProofStep, lang: &Language) -> Result<(), ReplayError> {
    if matches!(step.inference, Inference::Input | Inference::Reflexivity) {
        return Ok(());
    }
    let mut allowed: BTreeSet<Sym> = step.parents.iter().flat_map(|p| steps[*p].clause.syms()).collect();
    if let Inference::Induction(record) = &step.inference {
        allowed.extend(record.formula.syms());
        allowed.extend(lang.sig.symbols().filter(|(_, i)| i.is_skolem()).map(|(s, _)| s));
        if let Some(a) = ArithSyms::lookup(&lang.sig) {
            allowed.extend([a.zero, a.succ, a.pred, a.plus]);
        }
    }
    match step.clause.syms().into_iter().find(|s| !allowed.contains(s)) {
        None => Ok(()),
        Some(s) => Err(ReplayError::NewSymbol {
            step: step.id,
            symbol: lang.sig.name(s).to_string(),
        }),
    }
}

/// Outcome of an exhaustive finite-model check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Entailment {
    Holds,
    /// Index of a structure where all premises hold and the conclusion fails.
    Fails(u64),
    /// More structures than the configured cap.
    TooLarge,
}

/// Default cap on the number of structures [`entails_small`] enumerates.
pub const MAX_STRUCTURES: u64 = 1 << 20;

/// Checks `premises ⊨ conclusion` over all structures of `size` elements
/// for the symbols involved.
pub fn entails_small(sig: &Signature, premises: &[&Clause], conclusion: &Clause, size: usize, cap: u64) -> Entailment {
    let syms: Vec<Sym> = premises
        .iter()
        .flat_map(|c| c.syms())
        .chain(conclusion.syms())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let Some(count) = Interpretation::count(sig, &syms, size).filter(|n| *n <= cap) else {
        return Entailment::TooLarge;
    };
    for index in 0..count {
        let m = Interpretation::from_index(sig, &syms, size, index);
        if premises.iter().all(|p| m.satisfies_clause(p)) && !m.satisfies_clause(conclusion) {
            return Entailment::Fails(index);
        }
    }
    Entailment::Holds
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AuditReport {
    /// Steps eligible for the check (derived, not induction).
    pub eligible: usize,
    pub checked: Vec<usize>,
    pub too_large: Vec<usize>,
    pub failures: Vec<usize>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Samples up to `n` derived non-induction steps among `ids` and checks
/// each one against its parents over all 2-element structures. Induction
/// steps are excluded: they follow from an induction axiom, not from
/// their parents.
pub fn audit_sample(
    steps: &[ProofStep],
    ids: &[usize],
    sig: &Signature,
    n: usize,
    rng: &mut impl Rng,
) -> AuditReport {
    let mut pool: Vec<usize> = ids
        .iter()
        .copied()
        .filter(|i| {
            let s = &steps[*i];
            !s.parents.is_empty() && !s.inference.is_induction()
        })
        .collect();
    let mut report = AuditReport {
        eligible: pool.len(),
        ..AuditReport::default()
    };
    pool.shuffle(rng);
    for id in pool {
        if report.checked.len() >= n {
            break;
        }
        let step = &steps[id];
        let premises: Vec<&Clause> = step.parents.iter().map(|p| &steps[*p].clause).collect();
        match entails_small(sig, &premises, &step.clause, 2, MAX_STRUCTURES) {
            Entailment::Holds => report.checked.push(id),
            Entailment::Fails(_) => {
                report.checked.push(id);
                report.failures.push(id);
            }
            Entailment::TooLarge => report.too_large.push(id),
        }
    }
    report
}
