use thiserror::Error;

use crate::formula::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("{what} expects {expected} argument(s), got {got}")]
    Arity {
        what: String,
        expected: usize,
        got: usize,
    },

    #[error("no binding for metavariable `{0}`")]
    MissingBinding(String),

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("unknown truth value `{0}`")]
    UnknownValue(String),

    #[error("empty cell for {connective} at {inputs}")]
    EmptyCell { connective: String, inputs: String },

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("non-deterministic cell for {connective} at {inputs}")]
    NonDeterministic { connective: String, inputs: String },

    #[error("atom `{0}` has no value")]
    MissingAtom(String),

    #[error("formula `{0}` is not in the assignment domain")]
    NotInDomain(String),

    #[error("invalid restriction: {0}")]
    InvalidRestriction(String),

    #[error("unknown logic `{0}`")]
    UnknownLogic(String),

    #[error("{logic} has no {preference} semantics")]
    Unavailable { logic: String, preference: String },

    #[error("truth table line {line}: {message}")]
    TruthTable { line: usize, message: String },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("clause ({clause}) fails at `{formula}`")]
    ClauseViolation { clause: String, formula: String },

    #[error("{0}")]
    Proof(#[from] crate::hilbert::ProofError),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
