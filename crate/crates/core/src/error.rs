use thiserror::Error;

use crate::zmod::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("incompatible module map: {0}")]
    IncompatibleMap(String),
    #[error("outgoing map composed with incoming map is nonzero")]
    CompositionNonzero,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("operation unsupported over {0}")]
    UnsupportedRing(Ring),
    #[error("complex is not contractible")]
    NotContractible,
    #[error("functor `{0}` is not registered")]
    UnregisteredFunctor(String),
    #[error("functor `{0}` failed its additivity audit")]
    NotAdditive(String),
    #[error("complex is not homotopy equivalent to a one-term complex")]
    NotPure,
    #[error("no tensor product registered for this heart")]
    NoTensorRegistered,
    #[error("invalid cohomology table `{name}`: {reason}")]
    InvalidTable { name: String, reason: String },
    #[error("table `{0}` carries no duality flag")]
    NoDualityFlag(String),
    #[error("malformed expression: {0}")]
    MalformedExpression(String),
    #[error("no Gysin map supplied and no default applies: {0}")]
    MissingGysinMap(String),
    #[error("class has torsion coefficients where a free multiple was expected: {0}")]
    NonFreeClass(String),
    #[error("atom `{0}` has no counting polynomial")]
    UncountableAtom(String),
    #[error("class is not cellular: {0}")]
    NotCellular(String),
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("module {0} is not of finite exponent")]
    NotFiniteExponent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
