use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cubic has zero discriminant")]
    ZeroDiscriminant,
    #[error("unsupported base characteristic {0}")]
    BadCharacteristic(u64),
    #[error("element is not a unit")]
    NonUnit,
    #[error("group element is not invertible")]
    NonInvertible,
    #[error("Galois descent failed: {0}")]
    DescentFailure(String),
    #[error("double root is not rational over the third embedding of A")]
    IrrationalRoot,
    #[error("classification assertion failed: {0}")]
    AssertionFailure(String),
    #[error("cubic is reducible over the base field; A is not a field")]
    SplitAlgebra,
    #[error("orbit exceeded cap of {0} points")]
    CapExceeded(usize),
    #[error("Z[theta] may be non-maximal at p = {0} (p^2 divides disc f)")]
    NonMaximalOrder(u64),
    #[error("malformed Laurent data: {0}")]
    MalformedLaurent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
