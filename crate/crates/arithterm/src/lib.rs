//! Arithmetic terms: closed forms over `+`, truncated subtraction, floor
//! division and exponentiation, with the conventions `0^0 = 1` and
//! `div(x, 0) = 0`.
//!
//! The crate has four layers:
//! - [`term`], [`mod@eval`], [`lower`], [`parse`], [`mod@print`]: the term
//!   AST, its exact big-integer semantics, lowering of extended nodes to the
//!   kernel, and serialization;
//! - [`combinators`], [`geom`], [`blocks`]: the delta gadget, Hamming weight,
//!   generalized geometric progressions, and the primitive closed forms;
//! - [`compiler`]: the counting-specification compiler that turns a bounded
//!   zero-counting problem over simple exponential polynomials into a single
//!   closed-form term, plus its brute-force counting oracle;
//! - [`gallery`]: the concrete number-theoretic functions (divisor counts,
//!   divisor sums, totient, modular inverse, roots, logarithms, valuations,
//!   multiplicative order, discrete logarithm, semiprime factor recovery,
//!   pair decoding), each with an independent naive oracle.

pub mod blocks;
pub mod combinators;
pub mod compiler;
pub mod eval;
pub mod gallery;
pub mod geom;
pub mod lower;
pub mod parse;
pub mod print;
pub mod term;

pub use eval::{eval, eval_value, EvalContext, EvalError, EvalMode, EvalReport};
pub use parse::{parse_term, ParseError};
pub use print::{print_term, PrintFormat};
pub use term::{SizeMetrics, Term};

/// An argument is outside a function's stated domain.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("domain error: {0}")]
pub struct DomainError(pub String);
