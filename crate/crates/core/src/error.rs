use thiserror::Error;

use crate::ring::Ring;

/// Errors surfaced by complex construction, cohomology and pairing routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("invalid complex: {0}")]
    Validation(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("ring mismatch: expected {expected}, got {got}")]
    RingMismatch { expected: Ring, got: Ring },

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("cochain is not a cocycle over {0}")]
    NotACocycle(Ring),

    #[error("no Poincare duality over {ring}: failure in degree {degree}")]
    NotPoincareDuality { ring: Ring, degree: usize },

    #[error("dimension {dim} is not congruent to 1 mod 4; pairing verdict not defined")]
    Parity { dim: usize },

    #[error("class is not in the kernel of the Bockstein; beta_2 undefined")]
    NotInBocksteinKernel,

    #[error("unsupported coefficient map {from} -> {to}")]
    UnsupportedCoefficientMap { from: Ring, to: Ring },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("dimension mismatch in linear algebra: {0}")]
    Dimension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
