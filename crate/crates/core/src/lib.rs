pub mod arith;
pub mod clausify;
pub mod cli;
pub mod countermodel;
pub mod induction;
pub mod kernel;
pub mod replay;
pub mod saturation;
pub mod skolem;
pub mod syntax;
