use thiserror::Error;

/// Errors surfaced by the exact-arithmetic kernel and the summability pipeline.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible radicands: {0}")]
    IncompatibleRadicands(String),

    #[error("division by zero")]
    ZeroDivision,

    #[error("element is a zero divisor, witness factor: {witness}")]
    NotInvertible { witness: String },

    #[error("algebraic point outside the supported class: {0}")]
    UnsupportedAlgebraicPoint(String),

    #[error("denominator factor not recognizable: {0}")]
    UnsupportedDenominator(String),

    #[error("point is not a root of unity")]
    NotTorsion,

    #[error("operation applied to a tree of the wrong kind")]
    WrongKind,

    #[error("tree or infinity marker not in the Mahler support")]
    NotInSupport,

    #[error("twist must be >= 1 for a nontrivial kernel vector")]
    BadTwist,

    #[error("parse error at position {pos}: {msg}")]
    ParseError { pos: usize, msg: String },

    #[error("radical index is not a power of the session radix: {0}")]
    UnsupportedRadicalIndex(String),

    #[error("residue failed the rationality check: {0}")]
    NonRationalResidue(String),

    #[error("internal verification failure: {0}")]
    InternalVerificationFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
