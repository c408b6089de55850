//! A small expression language for operator chains: parser,
//! pretty-printer, registry, evaluator, and a rewrite engine that
//! normalizes chains through the composition shift maps.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! chain := term ("." term)*
//! term  := "I[" num "]"            fractional integral
//!        | "IK[" num "," num "]"   weighted integral I^(gamma,mu)
//!        | "D[" num "]"            fractional derivative
//!        | "D[" num "," num "]"    Hilfer derivative D^(mu,nu)
//!        | "H[" ident "]"          registered H-kernel operator
//!        | "f:" ident              applied test function (innermost)
//! ```
//!
//! Composition is written left-to-right but applied right-to-left: the
//! term nearest the function acts first, so `"H[ml] . I[0.5] . f:const1"`
//! is 𝓗(I^{1/2} const1).

mod ast;
mod eval;
mod parser;
mod registry;
mod rewrite;

pub use ast::{AppliedFn, ChainNode, OpChain, OpNode, Span};
pub use eval::evaluate;
pub use parser::parse;
pub use registry::{builtin_functions, FnRegistry, OpRegistry};
pub use rewrite::{simplify, RewriteTrace, TraceStep};

use thiserror::Error;

/// Syntax or validation failure with source position.
#[derive(Debug, Clone, Error, PartialEq)]
#[error("parse error at line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

/// Failure while rewriting a chain.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum RewriteError {
    #[error("rewrite rule '{rule}' failed: {detail}")]
    RuleFailed { rule: &'static str, detail: String },
}

/// Failure while evaluating a chain numerically.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum EvalError {
    #[error("chain carries no applied function (append `. f:<name>`)")]
    MissingFunction,
    #[error("unknown function '{0}'")]
    UnknownFunction(String),
    #[error("unknown H-kernel operator '{0}'")]
    UnknownOperator(String),
    #[error("H operators in one chain must share a base point ({0} vs {1})")]
    MixedBasePoints(f64, f64),
    #[error("operator failure: {0}")]
    Frac(#[from] crate::fracops::FracError),
}
