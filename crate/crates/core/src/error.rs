use thiserror::Error;

use crate::structure::Violation;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown relation symbol `{0}`")]
    UnknownSymbol(String),

    #[error("symbol `{symbol}` has arity {expected}, used with {found} argument(s)")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("variable `{0}` is not bound by the assignment")]
    UnboundVariable(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("tuple {tuple:?} of `{symbol}` is invalid for a universe of size {universe}")]
    InvalidTuple {
        symbol: String,
        tuple: Vec<usize>,
        universe: usize,
    },

    #[error("structure violates the strict conventions: {}", join(.0))]
    Strict(Vec<Violation>),

    #[error("structures are not similar (signatures differ)")]
    SignatureMismatch,

    #[error("formula contains negation; eliminate it first")]
    Negation,

    #[error("expected a sentence, found free variable(s): {}", .0.join(", "))]
    NotASentence(Vec<String>),

    #[error("invalid multi-valued function: {0}")]
    InvalidFunction(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("fragment {0} is trivial (no quantifier or no connective, or only one of each that cannot interact); its promise problem is in L")]
    TrivialFragment(String),

    #[error("fragment {0} is not one of the four canonical fragments; normalize it first")]
    NonCanonicalFragment(String),

    #[error("formula uses {used}, which is outside the fragment {allowed}")]
    OutsideFragment { used: String, allowed: String },

    #[error(
        "generated formula would have about {estimated} AST nodes, above the limit of {limit}"
    )]
    Guardrail { estimated: u128, limit: u128 },

    #[error("enumeration would visit about {candidates} candidates, above the limit of {limit}")]
    EnumerationLimit { candidates: u128, limit: u128 },

    #[error("pair is not a template: {0}")]
    NotATemplate(String),
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
