//! Given-clause saturation with resolution, factoring, paramodulation and
//! equality resolution, or optionally superposition with demodulation.

mod demod;
mod infer;
mod kbo;
mod prover;
mod subsume;
mod trace;

pub use demod::rewrite_at;
pub use infer::{
    eq_factor_at, eq_resolve_at, factor_at, paramodulate_at, resolve_at, Calculus, Conclusion, Generator,
};
pub use kbo::{Cmp, Kbo};
pub use prover::{saturate, Config, Extension, Limit, Limits, Outcome, Prover, ProverResult, Stats, View};
pub use subsume::subsumes;
pub use trace::{ancestors, Inference, InductionRecord, InductionRule, ProofStep, Rewrite};
