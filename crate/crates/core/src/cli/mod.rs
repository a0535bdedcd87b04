//! Command-line front end: problem files, flags and exit codes.
//!
//! Exit codes are 0 (refuted), 1 (saturated), 2 (limit reached) and 64
//! (usage or parse error). With `--countermodel` the exit code is 0 when
//! every check passes and 1 otherwise.

pub mod problem;
pub mod run;

use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, ValueEnum};

use crate::arith::TheoryPreset;
use crate::countermodel::suite::{run_suite, SuiteSizes};
use crate::induction::{GammaClass, Hint, RuleKind};
use crate::saturation::{Calculus, Limits};

pub use problem::{Decl, GoalSpec, Problem, ProblemError};
pub use run::{run, RunError, RunOutput, RunSettings};

pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Text,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CalculusArg {
    Superposition,
    Unordered,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    Ind,
    IndGamma,
    Aind1,
    Aind2,
    Double,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GammaArg {
    Literal,
    Eq,
    Open,
    Forall1pf,
    Any,
}

#[derive(Debug, Parser)]
#[command(name = "indsat", version, about = "Saturation prover with induction rules")]
pub struct Args {
    /// Problem file; flags override its directives.
    pub problem: Option<PathBuf>,
    /// Theory preset: T, Tprime or TB1.
    #[arg(long)]
    pub preset: Option<String>,
    /// Goal: comm, theta, `C m`, `D m n` or an S-expression sentence.
    #[arg(long)]
    pub goal: Option<String>,
    #[arg(long, value_enum)]
    pub rule: Option<RuleArg>,
    #[arg(long, value_enum)]
    pub gamma: Option<GammaArg>,
    /// Hint file, one hint per line; appended to the problem's hints.
    #[arg(long)]
    pub hints: Option<PathBuf>,
    #[arg(long, default_value_t = Limits::default().max_generated)]
    pub max_generated: u64,
    #[arg(long, default_value_t = Limits::default().max_iterations)]
    pub max_iterations: u64,
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = Limits::default().wall_clock.as_secs())]
    pub timeout: u64,
    #[arg(long)]
    pub term_depth: Option<usize>,
    #[arg(long)]
    pub formula_size: Option<usize>,
    /// Seed for the countermodel suite.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Emit::Text)]
    pub emit: Emit,
    #[arg(long, value_enum, default_value_t = CalculusArg::Superposition)]
    pub calculus: CalculusArg,
    /// Run the countermodel suite instead of the prover.
    #[arg(long)]
    pub countermodel: bool,
}

impl From<RuleArg> for RuleKind {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Ind => RuleKind::Ind,
            RuleArg::IndGamma => RuleKind::IndGamma,
            RuleArg::Aind1 => RuleKind::Aind1,
            RuleArg::Aind2 => RuleKind::Aind2,
            RuleArg::Double => RuleKind::Double,
            RuleArg::None => RuleKind::None,
        }
    }
}

impl From<GammaArg> for GammaClass {
    fn from(g: GammaArg) -> Self {
        match g {
            GammaArg::Literal => GammaClass::Literal,
            GammaArg::Eq => GammaClass::EquationAtom,
            GammaArg::Open => GammaClass::Open,
            GammaArg::Forall1pf => GammaClass::Forall1ParamFree,
            GammaArg::Any => GammaClass::Unrestricted,
        }
    }
}

impl Args {
    pub fn settings(&self) -> RunSettings {
        RunSettings {
            limits: Limits {
                max_generated: self.max_generated,
                max_iterations: self.max_iterations,
                wall_clock: Duration::from_secs(self.timeout),
            },
            calculus: match self.calculus {
                CalculusArg::Superposition => Calculus::Superposition,
                CalculusArg::Unordered => Calculus::Unordered,
            },
        }
    }

    /// Reads the problem file (if any) and applies the flags on top.
    pub fn problem(&self) -> Result<Problem, String> {
        let mut p = match &self.problem {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                Problem::parse(&text).map_err(|e| format!("{}:{e}", path.display()))?
            }
            None => Problem::default(),
        };
        if let Some(name) = &self.preset {
            p.theory = Some(TheoryPreset::parse(name).map_err(|e| e.to_string())?);
        }
        if let Some(g) = &self.goal {
            // Goals share the problem-file syntax; the declarations are
            // needed for sentences that use declared symbols.
            let mut text: String = p.decls.iter().map(|d| format!("{}\n", decl_text(d))).collect();
            text.push_str(&format!("goal {g}."));
            let parsed = Problem::parse(&text).map_err(|e| format!("--goal: {e}"))?;
            p.goal = parsed.goal;
        }
        if let Some(r) = self.rule {
            p.rule = Some(r.into());
        }
        if let Some(g) = self.gamma {
            p.gamma = Some(g.into());
        }
        if let Some(n) = self.term_depth {
            p.term_depth = Some(n);
        }
        if let Some(n) = self.formula_size {
            p.formula_size = Some(n);
        }
        if let Some(path) = &self.hints {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            p.hints
                .extend(Hint::parse_file(&text).map_err(|e| format!("{}: {e}", path.display()))?);
        }
        Ok(p)
    }
}

fn decl_text(d: &Decl) -> String {
    match d {
        Decl::Fun { name, arity } => format!("fun {name} {arity}."),
        Decl::Pred { name, arity } => format!("pred {name} {arity}."),
    }
}

/// Runs the command line and returns the process exit code.
pub fn main_with<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if args.countermodel {
        let rep = run_suite(args.seed, &SuiteSizes::default());
        let _ = match args.emit {
            Emit::Text => write!(out, "{}", rep.text()),
            Emit::Machine => writeln!(out, "{}", serde_json::to_string_pretty(&rep).expect("serializable")),
        };
        return if rep.passed() { 0 } else { 1 };
    }
    let problem = match args.problem() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let settings = args.settings();
    let output = match run(&problem, &settings) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let _ = match args.emit {
        Emit::Text => write!(out, "{}", output.text()),
        Emit::Machine => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&output.machine(&problem, &settings)).expect("serializable")
        ),
    };
    output.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("indsat").chain(args.iter().copied());
        let code = main_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_64() {
        assert_eq!(call(&["--rule", "bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&["--goal", "C 0"]).0, EXIT_USAGE);
        assert_eq!(call(&[]).0, EXIT_USAGE);
        assert_eq!(call(&["/nonexistent/problem"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn flags_build_a_problem() {
        let (code, out, _) = call(&["--goal", "theta", "--rule", "none"]);
        assert_eq!(code, 1, "{out}");
        assert!(out.contains("verdict: saturated"));
        let (code, out, _) = call(&["--goal", "C 2", "--rule", "none", "--max-generated", "200"]);
        assert_eq!(code, 2, "{out}");
        assert!(out.contains("limit-reached"));
        let (code, out, _) = call(&["--goal", "(= (+ 0 0) 0)", "--emit", "machine"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "refuted");
        assert_eq!(v["replay"]["ok"], true);
    }
}
