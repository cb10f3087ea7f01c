//! Error type shared by all modules.

use crate::lattice::Direction;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operation is undefined on the zero element")]
    ZeroElement,

    #[error("({0}, {1}) is not a direction: components must be coprime")]
    NotCoprime(i64, i64),

    #[error("direction {0} must satisfy rho + sigma > 0 here")]
    NotPositive(Direction),

    #[error("direction {0} must satisfy rho > 0 here")]
    RhoNotPositive(Direction),

    #[error("the counterclockwise order of {0} and {1} is undefined")]
    UndefinedOrder(Direction, Direction),

    #[error("a monomial has an empty direction set")]
    MonomialInput,

    #[error("series root requires constant term 1, found {0}")]
    ConstantTermNotOne(Scalar),

    #[error("root order k must be at least {0}")]
    RootOrderTooSmall(u32),

    #[error("power-support analysis requires at least 3 terms, found {0}")]
    TooFewTerms(usize),

    #[error("element is not homogeneous for direction {0}")]
    NotHomogeneous(Direction),

    #[error("shear exponent must be at least 1")]
    ZeroShearExponent,

    /// A mathematically impossible state was reached; signals an arithmetic bug.
    #[error("internal invariant breach: {0}")]
    InvariantBreach(String),
}

pub type Result<T> = std::result::Result<T, Error>;
