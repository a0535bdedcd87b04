//! Turning a problem into a prover run, and reporting the result.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{build_clause_set_in, build_preset, default_preset, ArithError, TheoryPreset};
use crate::clausify::clausify_all;
use crate::induction::{apply_hints, GammaClass, HintError, InductionConfig, InductionEngine, RuleKind};
use crate::kernel::notation::ArithSyms;
use crate::kernel::{Clause, Formula};
use crate::replay::{replay, ReplaySummary};
use crate::saturation::{Calculus, Conclusion, Config, Inference, Limit, Limits, Outcome, Prover, ProverResult, Stats};
use crate::skolem::{Language, SkolemEntry};

use super::problem::{GoalSpec, Problem};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("the problem has no goal")]
    NoGoal,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Hint(#[from] HintError),
}

/// Settings that only come from the command line.
#[derive(Clone, Debug)]
pub struct RunSettings {
    pub limits: Limits,
    pub calculus: Calculus,
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings {
            limits: Limits::default(),
            calculus: Config::default().calculus,
        }
    }
}

/// The clause set of a problem, split the way the prover wants it.
pub struct Prepared {
    pub lang: Language,
    pub syms: ArithSyms,
    pub preset: TheoryPreset,
    pub theory: Vec<Clause>,
    pub goal: Vec<Clause>,
    pub derived: Vec<Conclusion>,
    pub induction: InductionConfig,
}

pub fn induction_config(p: &Problem) -> InductionConfig {
    let d = InductionConfig::default();
    InductionConfig {
        rule: p.rule.unwrap_or(RuleKind::None),
        gamma: p.gamma.unwrap_or(GammaClass::Literal),
        term_depth: p.term_depth.unwrap_or(d.term_depth),
        formula_size: p.formula_size.unwrap_or(d.formula_size),
        ..d
    }
}

pub fn prepare(p: &Problem) -> Result<Prepared, RunError> {
    let goal = p.goal.as_ref().ok_or(RunError::NoGoal)?;
    let lang = Language::new(p.signature());
    let syms = ArithSyms::lookup(&lang.sig).expect("arithmetic symbols are always declared");
    let (mut lang, preset, mut theory, goal) = match goal {
        GoalSpec::Preset(g) => {
            let preset = p.theory.unwrap_or_else(|| default_preset(*g));
            let mut ap = build_clause_set_in(lang, syms, *g, preset)?;
            let extra = clausify_all(&mut ap.lang, &p.axioms);
            ap.theory_clauses.extend(extra);
            (ap.lang, preset, ap.theory_clauses, ap.goal_clauses)
        }
        GoalSpec::Sentence(f) => {
            let mut lang = lang;
            let preset = p.theory.unwrap_or(TheoryPreset::T);
            let mut axioms: Vec<Formula> = build_preset(&syms, preset).axioms.into_iter().map(|(_, f)| f).collect();
            axioms.extend(p.axioms.iter().cloned());
            let theory = clausify_all(&mut lang, &axioms);
            let goal = clausify_all(&mut lang, &[Formula::not(f.clone())]);
            (lang, preset, theory, goal)
        }
    };
    theory.dedup();
    let induction = induction_config(p);
    let derived = apply_hints(&mut lang, &syms, &induction, &p.hints)?;
    Ok(Prepared {
        lang,
        syms,
        preset,
        theory,
        goal,
        derived,
        induction,
    })
}

pub struct RunOutput {
    pub preset: TheoryPreset,
    pub induction: InductionConfig,
    pub inputs: Vec<Clause>,
    pub result: ProverResult,
    /// Independent re-check of the refutation, if there is one.
    pub replay: Option<Result<ReplaySummary, String>>,
}

impl RunOutput {
    pub fn exit_code(&self) -> i32 {
        match self.result.outcome {
            Outcome::Refuted(_) => 0,
            Outcome::Saturated => 1,
            Outcome::LimitReached(_) => 2,
        }
    }

    pub fn verdict(&self) -> &'static str {
        match self.result.outcome {
            Outcome::Refuted(_) => "refuted",
            Outcome::Saturated => "saturated",
            Outcome::LimitReached(_) => "limit-reached",
        }
    }
}

pub fn run(p: &Problem, settings: &RunSettings) -> Result<RunOutput, RunError> {
    let prep = prepare(p)?;
    let mut inputs = prep.theory.clone();
    inputs.extend(prep.goal.iter().cloned());
    let config = Config {
        calculus: settings.calculus,
        limits: settings.limits,
        ..Config::default()
    };
    let mut prover = Prover::new(prep.lang, config);
    if p.hints.is_empty() && prep.induction.rule != RuleKind::None {
        prover.add_extension(Box::new(InductionEngine::new(prep.syms, prep.induction.clone())));
    }
    let mut result = prover.run_split(prep.theory, prep.goal, prep.derived);
    result.stats.induction_applications += p.hints.len() as u64;
    let replay = match result.outcome {
        Outcome::Refuted(root) => Some(
            replay(&result.steps, root, Some(&inputs), &result.lang, Some(&prep.syms)).map_err(|e| e.to_string()),
        ),
        _ => None,
    };
    Ok(RunOutput {
        preset: prep.preset,
        induction: prep.induction,
        inputs,
        result,
        replay,
    })
}

fn details(inf: &Inference) -> Value {
    match inf {
        Inference::Input | Inference::Reflexivity => Value::Null,
        Inference::Resolution {
            left_lit,
            right_lit,
            flip,
        } => json!({ "left-lit": left_lit, "right-lit": right_lit, "flip": flip }),
        Inference::Factoring { first, second, flip } => json!({ "first": first, "second": second, "flip": flip }),
        Inference::Paramodulation {
            from_lit,
            left_to_right,
            into_lit,
            path,
        } => json!({ "from-lit": from_lit, "left-to-right": left_to_right, "into-lit": into_lit, "path": path }),
        Inference::EqualityResolution { lit } => json!({ "lit": lit }),
        Inference::EqualityFactoring {
            first,
            first_l2r,
            second,
            second_l2r,
        } => json!({ "first": first, "first-l2r": first_l2r, "second": second, "second-l2r": second_l2r }),
        Inference::Demodulation { rewrites } => Value::Array(
            rewrites
                .iter()
                .map(|r| json!({ "unit": r.unit, "left-to-right": r.left_to_right, "lit": r.lit, "path": r.path }))
                .collect(),
        ),
        Inference::Induction(_) => Value::Null,
    }
}

#[derive(Serialize)]
struct StepOut {
    id: usize,
    rule: &'static str,
    parents: Vec<usize>,
    clause: String,
    unifier: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<String>,
}

#[derive(Serialize)]
struct MachineReport<'a> {
    format: &'static str,
    problem: String,
    config: Value,
    verdict: &'static str,
    limit: Option<Limit>,
    refutation: Option<usize>,
    trace: Vec<StepOut>,
    skolems: Vec<SkolemEntry>,
    stats: &'a Stats,
    replay: Value,
}

impl RunOutput {
    /// The steps shown in reports: the refutation, every step of a
    /// saturated set, nothing when a limit was hit.
    fn shown_steps(&self) -> Vec<usize> {
        match self.result.outcome {
            Outcome::Refuted(_) => self.result.refutation().unwrap_or_default(),
            Outcome::Saturated => (0..self.result.steps.len()).collect(),
            Outcome::LimitReached(_) => Vec::new(),
        }
    }

    fn step_out(&self, id: usize) -> StepOut {
        let s = &self.result.steps[id];
        let pr = self.result.lang.printer();
        let (details, formula) = match &s.inference {
            Inference::Induction(r) => (Value::Null, Some(pr.formula(&r.formula))),
            other => (details(other), None),
        };
        StepOut {
            id: s.id,
            rule: s.rule(),
            parents: s.parents.clone(),
            clause: pr.clause(&s.clause),
            unifier: s.unifier.iter().map(|(v, t)| (v.name(), pr.term(t))).collect(),
            details,
            formula,
        }
    }

    pub fn machine(&self, problem: &Problem, settings: &RunSettings) -> Value {
        let limit = match self.result.outcome {
            Outcome::LimitReached(l) => Some(l),
            _ => None,
        };
        let refutation = match self.result.outcome {
            Outcome::Refuted(id) => Some(id),
            _ => None,
        };
        let replay = match &self.replay {
            None => Value::Null,
            Some(Ok(s)) => json!({ "ok": true, "steps": s.steps.len(), "induction-steps": s.induction_steps }),
            Some(Err(e)) => json!({ "ok": false, "error": e }),
        };
        let report = MachineReport {
            format: "indsat-run/1",
            problem: problem.to_string(),
            config: json!({
                "theory": self.preset.name(),
                "rule": self.induction.rule.name(),
                "gamma": self.induction.gamma.name(),
                "term-depth": self.induction.term_depth,
                "formula-size": self.induction.formula_size,
                "calculus": calculus_name(settings.calculus),
                "limits": settings.limits,
            }),
            verdict: self.verdict(),
            limit,
            refutation,
            trace: self.shown_steps().into_iter().map(|i| self.step_out(i)).collect(),
            skolems: self.result.lang.dictionary(),
            stats: &self.result.stats,
            replay,
        };
        serde_json::to_value(report).expect("report is serializable")
    }

    pub fn text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let verdict = match self.result.outcome {
            Outcome::LimitReached(l) => format!("{} ({})", self.verdict(), limit_name(l)),
            _ => self.verdict().to_string(),
        };
        writeln!(out, "verdict: {verdict}").unwrap();
        if self.result.is_refuted() {
            writeln!(out, "refutation:").unwrap();
            for i in self.shown_steps() {
                let s = self.step_out(i);
                let parents = s.parents.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
                let mut line = format!("  {:>5}  {} [{}", s.id, s.clause, s.rule);
                if !parents.is_empty() {
                    line.push(' ');
                    line.push_str(&parents);
                }
                line.push(']');
                if !s.unifier.is_empty() {
                    let u: Vec<String> = s.unifier.iter().map(|(v, t)| format!("{v}:={t}")).collect();
                    line.push_str(&format!(" {{{}}}", u.join(", ")));
                }
                if let Some(f) = &s.formula {
                    line.push_str(&format!(" on {f}"));
                }
                writeln!(out, "{line}").unwrap();
            }
        }
        let dict = self.result.lang.dictionary();
        if !dict.is_empty() {
            writeln!(out, "skolem symbols:").unwrap();
            for e in dict {
                let alias = e.alias.map(|a| format!(" ({a})")).unwrap_or_default();
                writeln!(out, "  {}{alias}/{} := {}", e.name, e.arity, e.key).unwrap();
            }
        }
        if let Some(r) = &self.replay {
            match r {
                Ok(s) => writeln!(out, "replay: ok, {} steps", s.steps.len()).unwrap(),
                Err(e) => writeln!(out, "replay: FAILED: {e}").unwrap(),
            }
        }
        let st = &self.result.stats;
        writeln!(
            out,
            "stats: generated {} kept {} iterations {} induction {} time {}ms",
            st.generated, st.kept, st.iterations, st.induction_applications, st.elapsed_ms
        )
        .unwrap();
        out
    }
}

pub fn calculus_name(c: Calculus) -> &'static str {
    match c {
        Calculus::Unordered => "unordered",
        Calculus::Superposition => "superposition",
    }
}

fn limit_name(l: Limit) -> &'static str {
    match l {
        Limit::Generated => "generated clauses",
        Limit::Iterations => "iterations",
        Limit::WallClock => "wall clock",
    }
}
