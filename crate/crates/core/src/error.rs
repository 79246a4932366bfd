use thiserror::Error;

use crate::poly::BlockViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("variable lists do not match")]
    VariableMismatch,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree {degree} out of range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("linear form is zero")]
    ZeroLinearForm,

    #[error("expected a linear form (homogeneous of degree 1)")]
    NotLinear,

    #[error("quotient is not Artinian at the top degree {degree}")]
    NonArtinian { degree: usize },

    #[error("{monomials} monomials exceed the configured cap of {cap}")]
    SizeLimit { monomials: usize, cap: usize },

    #[error("expected a binary form (exactly two variables)")]
    NotBinary,

    #[error("degree must be positive")]
    DegreeZero,

    #[error("assumption not satisfied: {0}")]
    AssumptionNotSatisfied(String),

    #[error("no rational witness exists: {0}")]
    AlgebraicExtensionRequired(String),

    #[error("invalid block decomposition: {}", join_violations(.0))]
    InvalidBlocks(Vec<BlockViolation>),

    #[error("block form is neither a monomial nor a binary form: {0}")]
    UnsupportedBlock(String),
}

fn join_violations(v: &[BlockViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
