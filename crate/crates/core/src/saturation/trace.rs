//! Proof steps and the data needed to re-execute them.

use serde::Serialize;

use crate::kernel::{Clause, Formula, Path, Subst, Term, Var};

/// One rewrite inside a demodulation step: the equation of unit clause
/// `unit` (oriented by `left_to_right`) rewrites the subterm of literal
/// `lit` at `path` (first index selects the side or argument of the atom).
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Rewrite {
    pub unit: usize,
    pub left_to_right: bool,
    pub lit: usize,
    pub path: Path,
}

/// Which induction rule produced a clause, with enough detail to rebuild
/// the whole clause set of the application.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct InductionRecord {
    pub rule: InductionRule,
    /// Induction formula after parameters were substituted.
    pub formula: Formula,
    /// Induction variable(s).
    pub vars: Vec<Var>,
    /// Ground parameters that filled the template slots (informational).
    pub params: Vec<Term>,
    /// For analytic rules: the premise literal that triggered the rule.
    pub selected: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InductionRule {
    Ind,
    IndGamma,
    Double,
    Aind1,
    Aind2,
    Lemma,
}

impl InductionRule {
    pub fn name(self) -> &'static str {
        match self {
            InductionRule::Ind => "ind",
            InductionRule::IndGamma => "ind-gamma",
            InductionRule::Double => "double",
            InductionRule::Aind1 => "aind1",
            InductionRule::Aind2 => "aind2",
            InductionRule::Lemma => "lemma",
        }
    }
}

/// How a clause was obtained. Literal indices refer to the normalized
/// parent clauses; the second premise of a binary rule is renamed apart by
/// shifting its variables past those of the first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Inference {
    Input,
    /// Binary resolution on `left_lit` and `right_lit`; `flip` swaps the
    /// sides of the right equation before unifying.
    Resolution {
        left_lit: usize,
        right_lit: usize,
        flip: bool,
    },
    Factoring {
        first: usize,
        second: usize,
        flip: bool,
    },
    /// Paramodulation (or superposition) from a positive equation into a
    /// subterm of `into_lit`.
    Paramodulation {
        from_lit: usize,
        left_to_right: bool,
        into_lit: usize,
        path: Path,
    },
    EqualityResolution {
        lit: usize,
    },
    /// From `s = t ∨ s' = t' ∨ C` with `s`, `s'` unified, derive
    /// `t ≠ t' ∨ s' = t' ∨ C`.
    EqualityFactoring {
        first: usize,
        first_l2r: bool,
        second: usize,
        second_l2r: bool,
    },
    Demodulation {
        rewrites: Vec<Rewrite>,
    },
    /// Axiom `x = x` or `f(x̄) = f(x̄)` added on request.
    Reflexivity,
    Induction(InductionRecord),
}

impl Inference {
    pub fn rule_name(&self) -> &'static str {
        match self {
            Inference::Input => "input",
            Inference::Resolution { .. } => "resolution",
            Inference::Factoring { .. } => "factoring",
            Inference::Paramodulation { .. } => "paramodulation",
            Inference::EqualityResolution { .. } => "equality-resolution",
            Inference::EqualityFactoring { .. } => "equality-factoring",
            Inference::Demodulation { .. } => "demodulation",
            Inference::Reflexivity => "reflexivity",
            Inference::Induction(r) => r.rule.name(),
        }
    }

    pub fn is_induction(&self) -> bool {
        matches!(self, Inference::Induction(_))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProofStep {
    pub id: usize,
    pub clause: Clause,
    pub parents: Vec<usize>,
    pub unifier: Subst,
    pub inference: Inference,
}

impl ProofStep {
    pub fn rule(&self) -> &'static str {
        self.inference.rule_name()
    }
}

/// The steps reachable from `root` through parent links, in id order.
pub fn ancestors(steps: &[ProofStep], root: usize) -> Vec<usize> {
    let mut seen = vec![false; steps.len()];
    let mut stack = vec![root];
    while let Some(i) = stack.pop() {
        if seen[i] {
            continue;
        }
        seen[i] = true;
        stack.extend(steps[i].parents.iter().copied());
    }
    (0..steps.len()).filter(|i| seen[*i]).collect()
}
