//! The given-clause loop.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashSet, VecDeque};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::kernel::{Clause, Subst, Sym, SymbolKind, Term, Var, Literal};
use crate::skolem::Language;

use super::demod;
use super::infer::{eq_resolve_at, resolve_at, Calculus, Conclusion, Generator};
use super::subsume::subsumes;
use super::trace::{ancestors, Inference, ProofStep, Rewrite};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Limits {
    pub max_generated: u64,
    pub max_iterations: u64,
    pub wall_clock: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_generated: 100_000,
            max_iterations: 1_000_000,
            wall_clock: Duration::from_secs(60),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Limit {
    Generated,
    Iterations,
    WallClock,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outcome {
    /// The empty clause was derived; its step id.
    Refuted(usize),
    Saturated,
    LimitReached(Limit),
}

#[derive(Clone, Debug)]
pub struct Config {
    pub calculus: Calculus,
    pub limits: Limits,
    pub paramod_into_vars: bool,
    /// Adds `x = x` and `f(x̄) = f(x̄)` for every function symbol.
    pub functional_reflexivity: bool,
    /// Negative literal selection (superposition only).
    pub literal_selection: bool,
    /// Every `age_ratio`-th given clause is the oldest one instead of the
    /// lightest; 0 disables.
    pub age_ratio: u64,
    /// Queue weight multiplier for clauses derived from theory clauses
    /// alone (see [`Prover::run_split`]).
    pub theory_penalty: usize,
    /// Ground literals count `1/ground_divisor` of their size in the
    /// queue weight. They tend to be side conditions that cheap ground
    /// reasoning disposes of.
    pub ground_divisor: usize,
}

fn selection_weight(c: &Clause, ground_divisor: usize) -> usize {
    c.literals()
        .iter()
        .map(|l| {
            let w = 1 + l.atom.terms().iter().map(|t| t.size()).sum::<usize>();
            if l.is_ground() {
                w.div_ceil(ground_divisor.max(1))
            } else {
                w
            }
        })
        .sum()
}

impl Default for Config {
    fn default() -> Self {
        Config {
            calculus: Calculus::Superposition,
            limits: Limits::default(),
            paramod_into_vars: false,
            functional_reflexivity: false,
            literal_selection: true,
            age_ratio: 5,
            theory_penalty: 3,
            ground_divisor: 4,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Stats {
    pub generated: u64,
    pub kept: u64,
    pub iterations: u64,
    pub induction_applications: u64,
    pub per_rule: BTreeMap<String, u64>,
    pub elapsed_ms: u128,
}

/// Read-only view of the prover state handed to extensions.
pub struct View<'a> {
    pub steps: &'a [ProofStep],
    pub active: &'a [usize],
}

/// Clause-set generators plugged into the loop (induction rules).
pub trait Extension {
    /// Clauses added before the first iteration.
    fn on_start(&mut self, lang: &mut Language, view: &View<'_>) -> Vec<Conclusion>;
    /// Clauses added after `given` was activated.
    fn on_given(&mut self, lang: &mut Language, given: usize, view: &View<'_>) -> Vec<Conclusion>;
    /// Number of rule applications so far.
    fn applications(&self) -> u64;
}

pub struct ProverResult {
    pub outcome: Outcome,
    pub steps: Vec<ProofStep>,
    pub stats: Stats,
    pub lang: Language,
}

impl ProverResult {
    pub fn is_refuted(&self) -> bool {
        matches!(self.outcome, Outcome::Refuted(_))
    }

    /// Ids of the steps used to derive the empty clause.
    pub fn refutation(&self) -> Option<Vec<usize>> {
        match self.outcome {
            Outcome::Refuted(id) => Some(ancestors(&self.steps, id)),
            _ => None,
        }
    }
}

enum Demod {
    Unchanged,
    Deleted,
    Replaced(usize),
}

pub struct Prover<'e> {
    lang: Language,
    config: Config,
    gen: Generator,
    steps: Vec<ProofStep>,
    seen: HashSet<Clause>,
    active: Vec<usize>,
    units: Vec<usize>,
    neg_units: Vec<usize>,
    passive: BinaryHeap<Reverse<(usize, usize)>>,
    by_age: VecDeque<usize>,
    removed: Vec<bool>,
    /// Whether a step depends on a goal clause or an induction step.
    support: Vec<bool>,
    input_support: bool,
    extensions: Vec<Box<dyn Extension + 'e>>,
    stats: Stats,
    refuted: Option<usize>,
    start: Instant,
}

impl<'e> Prover<'e> {
    pub fn new(lang: Language, config: Config) -> Self {
        let gen = Generator::new(config.calculus, config.paramod_into_vars).with_selection(config.literal_selection);
        Prover {
            lang,
            config,
            gen,
            steps: Vec::new(),
            seen: HashSet::new(),
            active: Vec::new(),
            units: Vec::new(),
            neg_units: Vec::new(),
            passive: BinaryHeap::new(),
            by_age: VecDeque::new(),
            removed: Vec::new(),
            support: Vec::new(),
            input_support: true,
            extensions: Vec::new(),
            stats: Stats::default(),
            refuted: None,
            start: Instant::now(),
        }
    }

    pub fn with_extension(mut self, ext: impl Extension + 'e) -> Self {
        self.extensions.push(Box::new(ext));
        self
    }

    pub fn add_extension(&mut self, ext: Box<dyn Extension + 'e>) {
        self.extensions.push(ext);
    }

    fn add(&mut self, c: Conclusion) -> Option<usize> {
        self.stats.generated += 1;
        *self
            .stats
            .per_rule
            .entry(c.inference.rule_name().to_string())
            .or_insert(0) += 1;
        let axiom = matches!(c.inference, Inference::Reflexivity);
        if !axiom && c.clause.is_tautology() {
            return None;
        }
        if self.seen.contains(&c.clause) {
            return None;
        }
        let id = self.steps.len();
        self.seen.insert(c.clause.clone());
        if c.clause.is_empty() && self.refuted.is_none() {
            self.refuted = Some(id);
        }
        let support = match c.inference {
            Inference::Input => self.input_support,
            Inference::Induction(_) => true,
            _ => c.parents.iter().any(|p| self.support[*p]),
        };
        let penalty = if support { 1 } else { self.config.theory_penalty.max(1) };
        let w = selection_weight(&c.clause, self.config.ground_divisor);
        self.passive.push(Reverse((w * penalty, id)));
        self.by_age.push_back(id);
        self.steps.push(ProofStep {
            id,
            clause: c.clause,
            parents: c.parents,
            unifier: c.unifier,
            inference: c.inference,
        });
        self.removed.push(false);
        self.support.push(support);
        self.stats.kept += 1;
        // `t ≠ t` literals are cut right away by equality resolution with
        // the empty unifier; the intermediate clause is never selected.
        let trivial = self.steps[id]
            .clause
            .literals()
            .iter()
            .position(Literal::is_trivially_false);
        if let Some(i) = trivial {
            if let Some((clause, unifier)) = eq_resolve_at(&self.steps[id].clause, i) {
                self.removed[id] = true;
                return self.add(Conclusion {
                    clause,
                    parents: vec![id],
                    unifier,
                    inference: Inference::EqualityResolution { lit: i },
                });
            }
        }
        Some(id)
    }

    fn add_all(&mut self, cs: Vec<Conclusion>) {
        for c in cs {
            self.add(c);
            if self.refuted.is_some() {
                return;
            }
        }
    }

    fn limit_hit(&self) -> Option<Limit> {
        let l = &self.config.limits;
        if self.stats.generated >= l.max_generated {
            Some(Limit::Generated)
        } else if self.stats.iterations >= l.max_iterations {
            Some(Limit::Iterations)
        } else if self.start.elapsed() >= l.wall_clock {
            Some(Limit::WallClock)
        } else {
            None
        }
    }

    fn view_call<T>(&mut self, f: impl FnOnce(&mut dyn Extension, &mut Language, &View<'_>) -> T, i: usize) -> T {
        let view = View {
            steps: &self.steps,
            active: &self.active,
        };
        f(self.extensions[i].as_mut(), &mut self.lang, &view)
    }

    fn reflexivity_axioms(&self) -> Vec<Conclusion> {
        let mut out = vec![Clause::unit(Literal::eq(
            Term::Var(Var::indexed(0)),
            Term::Var(Var::indexed(0)),
        ))];
        let funcs: Vec<(Sym, usize)> = self
            .lang
            .sig
            .symbols()
            .filter(|(_, i)| i.kind == SymbolKind::Function && i.arity > 0)
            .map(|(s, i)| (s, i.arity))
            .collect();
        for (f, n) in funcs {
            let t = Term::app(f, (0..n as u32).map(|i| Term::Var(Var::indexed(i))).collect());
            out.push(Clause::unit(Literal::eq(t.clone(), t)));
        }
        out.into_iter()
            .map(|clause| Conclusion {
                clause,
                parents: vec![],
                unifier: Subst::new(),
                inference: Inference::Reflexivity,
            })
            .collect()
    }

    fn demodulate(&mut self, id: usize) -> Demod {
        let units: Vec<(usize, &Clause)> = self
            .units
            .iter()
            .filter(|u| **u != id)
            .map(|u| (*u, &self.steps[*u].clause))
            .collect();
        let Some((clause, rewrites)) = demod::normalize(&self.steps[id].clause, &units) else {
            return Demod::Unchanged;
        };
        let mut parents = vec![id];
        for Rewrite { unit, .. } in &rewrites {
            if !parents.contains(unit) {
                parents.push(*unit);
            }
        }
        self.removed[id] = true;
        match self.add(Conclusion {
            clause,
            parents,
            unifier: Subst::new(),
            inference: Inference::Demodulation { rewrites },
        }) {
            Some(new_id) => Demod::Replaced(new_id),
            None => Demod::Deleted,
        }
    }

    fn next_given(&mut self) -> Option<usize> {
        let ratio = self.config.age_ratio;
        if ratio > 0 && (self.stats.iterations + 1) % ratio == 0 {
            while let Some(id) = self.by_age.pop_front() {
                if !self.removed[id] {
                    self.removed[id] = true;
                    return Some(id);
                }
            }
        }
        while let Some(Reverse((_, id))) = self.passive.pop() {
            if !self.removed[id] {
                self.removed[id] = true;
                return Some(id);
            }
        }
        None
    }

    /// Deletes one literal of `id` that is an instance of the complement of
    /// an active unit equation or disequation.
    fn reflect(&mut self, id: usize) -> Demod {
        let clause = &self.steps[id].clause;
        let mut hit = None;
        'search: for (i, lit) in clause.literals().iter().enumerate() {
            if !lit.is_equality() {
                continue;
            }
            let pool = if lit.positive { &self.neg_units } else { &self.units };
            for &u in pool {
                let unit = &self.steps[u].clause;
                let target = Clause::unit(lit.negated());
                if subsumes(unit, &target) {
                    let rest = Clause::new(
                        clause.literals().iter().enumerate().filter(|(k, _)| *k != i).map(|(_, l)| l.clone()).collect(),
                    );
                    for flip in [false, true] {
                        if let Some((c, s)) = resolve_at(clause, i, unit, 0, flip).filter(|(c, _)| subsumes(c, &rest)) {
                            hit = Some((c, s, i, u, flip));
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((clause, unifier, left_lit, unit, flip)) = hit else {
            return Demod::Unchanged;
        };
        self.removed[id] = true;
        match self.add(Conclusion {
            clause,
            parents: vec![id, unit],
            unifier,
            inference: Inference::Resolution { left_lit, right_lit: 0, flip },
        }) {
            Some(new_id) => Demod::Replaced(new_id),
            None => Demod::Deleted,
        }
    }

    fn finish(mut self, outcome: Outcome) -> ProverResult {
        self.stats.induction_applications = self.extensions.iter().map(|e| e.applications()).sum();
        self.stats.elapsed_ms = self.start.elapsed().as_millis();
        ProverResult {
            outcome,
            steps: self.steps,
            stats: self.stats,
            lang: self.lang,
        }
    }

    pub fn run(self, initial: Vec<Clause>) -> ProverResult {
        self.run_with(initial, Vec::new())
    }

    /// Runs on the input clauses plus clauses derived before the run
    /// (hinted induction steps).
    pub fn run_with(self, initial: Vec<Clause>, derived: Vec<Conclusion>) -> ProverResult {
        self.run_split(Vec::new(), initial, derived)
    }

    /// Like [`Prover::run_with`], with the input split into theory and goal
    /// clauses. Clauses inferred from theory clauses only are selected later.
    pub fn run_split(mut self, theory: Vec<Clause>, goal: Vec<Clause>, derived: Vec<Conclusion>) -> ProverResult {
        self.start = Instant::now();
        let superposition = self.config.calculus == Calculus::Superposition;
        self.input_support = false;
        for clause in theory {
            self.add(Conclusion {
                clause,
                parents: vec![],
                unifier: Subst::new(),
                inference: Inference::Input,
            });
        }
        self.input_support = true;
        for clause in goal {
            self.add(Conclusion {
                clause,
                parents: vec![],
                unifier: Subst::new(),
                inference: Inference::Input,
            });
        }
        for c in derived {
            self.add(c);
        }
        if self.config.functional_reflexivity {
            let ax = self.reflexivity_axioms();
            self.add_all(ax);
        }
        for i in 0..self.extensions.len() {
            if self.refuted.is_some() {
                break;
            }
            let cs = self.view_call(|e, lang, view| e.on_start(lang, view), i);
            self.add_all(cs);
        }
        loop {
            if let Some(id) = self.refuted {
                return self.finish(Outcome::Refuted(id));
            }
            if let Some(limit) = self.limit_hit() {
                return self.finish(Outcome::LimitReached(limit));
            }
            let Some(mut given) = self.next_given() else {
                return self.finish(Outcome::Saturated);
            };
            if superposition {
                let mut progress = true;
                let mut deleted = false;
                while progress && !deleted {
                    progress = false;
                    for reflect in [false, true] {
                        let outcome = if reflect { self.reflect(given) } else { self.demodulate(given) };
                        match outcome {
                            Demod::Deleted => {
                                deleted = true;
                                break;
                            }
                            Demod::Replaced(new_id) => {
                                // Processed right away instead of from the queue.
                                self.removed[new_id] = true;
                                given = new_id;
                                progress = true;
                            }
                            Demod::Unchanged => {}
                        }
                    }
                }
                if deleted || self.refuted.is_some() {
                    continue;
                }
            }
            let clause = self.steps[given].clause.clone();
            if self
                .active
                .iter()
                .any(|a| subsumes(&self.steps[*a].clause, &clause))
            {
                self.removed[given] = true;
                continue;
            }
            self.stats.iterations += 1;
            self.active.push(given);
            if superposition && matches!(clause.literals(), [l] if !l.positive && l.is_equality()) {
                self.neg_units.push(given);
            }
            if superposition && demod::is_rewrite_rule(&clause) {
                self.units.push(given);
                self.backward_demodulate(given);
                if self.refuted.is_some() {
                    continue;
                }
            }
            let conclusions = {
                let active: Vec<(usize, &Clause)> = self
                    .active
                    .iter()
                    .map(|a| (*a, &self.steps[*a].clause))
                    .collect();
                self.gen.generate((given, &clause), &active)
            };
            self.add_all(conclusions);
            for i in 0..self.extensions.len() {
                if self.refuted.is_some() {
                    break;
                }
                let cs = self.view_call(|e, lang, view| e.on_given(lang, given, view), i);
                self.add_all(cs);
            }
        }
    }

    fn backward_demodulate(&mut self, unit: usize) {
        let unit_clause = self.steps[unit].clause.clone();
        let victims: Vec<usize> = self
            .active
            .iter()
            .copied()
            .filter(|a| *a != unit && demod::can_rewrite(&self.steps[*a].clause, &unit_clause))
            .collect();
        for v in victims {
            self.active.retain(|a| *a != v);
            self.units.retain(|a| *a != v);
            self.removed[v] = true;
            self.demodulate(v);
            if self.refuted.is_some() {
                return;
            }
        }
    }
}

/// Saturates `initial` with no extensions.
pub fn saturate(lang: Language, initial: Vec<Clause>, config: Config) -> ProverResult {
    Prover::new(lang, config).run(initial)
}
