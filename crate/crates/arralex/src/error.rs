//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ArralexError {
    #[error("entry is not a unit of the Laurent ring: {0}")]
    NotAUnit(String),

    #[error("negative exponent where a polynomial was required: {0}")]
    NegativeExponent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not invertible over the Laurent ring: {0}")]
    NotInvertible(String),

    #[error("word is not basis-conjugating: {0}")]
    NotBasisConjugating(String),

    #[error("not an arrangement lattice: {0}")]
    NotArrangementLattice(String),

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
