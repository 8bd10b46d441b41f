use thiserror::Error;

/// Every failure mode surfaced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("substituted denominator vanishes identically")]
    DenominatorVanishes,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("exponent is not a multiple of the required unit: {0}")]
    FractionalExponent(String),
    #[error("Maya diagram has nonzero charge {0}")]
    NonzeroCharge(i64),
    #[error("partition tuples of different arity ({0} vs {1})")]
    ArityMismatch(usize, usize),
    #[error("Gram-Schmidt norm vanished for {0}")]
    SingularGram(String),
    #[error("input polynomial is not symmetric")]
    NotSymmetric,
    #[error("operator image is not a polynomial")]
    NonPolynomialResult,
    #[error("exponent window too small: needed {needed}, have {have}")]
    WindowTooSmall { needed: i64, have: i64 },
    #[error("observable has no free-field realization: {0}")]
    UnsupportedObservable(String),
    #[error("linear system has no unique triangular solution: {0}")]
    SingularSystem(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
