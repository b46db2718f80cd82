use thiserror::Error;

use crate::complex::{Bidegree, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed coefficient {0:?}")]
    Coefficient(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimensions differ ({left} vs {right})")]
    AmbientMismatch { left: usize, right: usize },
    #[error("matrix shape mismatch (expected {rows}x{cols})")]
    Shape { rows: usize, cols: usize },
    #[error("not a subspace of the given space")]
    NotSubspace,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("{what} at {at} has shape {found:?}, expected {expected:?}")]
    Shape {
        what: &'static str,
        at: Bidegree,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("invalid double complex: {0}")]
    Invalid(ValidationReport),
    #[error("direct sum of complexes with and without real structure")]
    MixedRealStructure,
    #[error("morphism is not injective at {at}")]
    NotInjective { at: Bidegree },
    #[error("basis change is not invertible at {at}")]
    NotInvertible { at: Bidegree },
    #[error("morphism does not commute with {which} at {at}")]
    NotChainMap { which: &'static str, at: Bidegree },
    #[error("malformed zigzag shape: {0}")]
    MalformedShape(String),
    #[error("a real structure is required")]
    NoRealStructure,
    #[error("criteria disagree: {0}")]
    CriteriaDisagree(String),
    #[error("malformed input: {0}")]
    Format(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error("Lie model is not integrable: d^2 != 0 on generator {generator}")]
    NotIntegrable { generator: usize },
    #[error("malformed Lie model: {0}")]
    Malformed(String),
    #[error("invalid rank {0}")]
    InvalidRank(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
