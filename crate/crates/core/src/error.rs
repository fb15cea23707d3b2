use thiserror::Error;

use crate::vars::Var;

/// Errors surfaced by the polynomial ring, the matrix layer and the
/// factorization constructors.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("substitution into a localized slot requires an invertible monomial image for {0}")]
    NonInvertibleSubstitution(Var),
    #[error("variable {0} evaluates to zero but occurs with a negative exponent")]
    ZeroLocalizedValue(Var),
    #[error("no value assigned to variable {0}")]
    UnassignedVariable(Var),
    #[error("division by a zero divisor")]
    ZeroDivisor,
    #[error("matrix dimensions do not match: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),
    #[error("block summands factor different surfaces")]
    MixedSurface,
    #[error("block summands carry different signs")]
    MixedSign,
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),
    #[error("weight system has no positive integer solution with first weight 1")]
    NoIntegerWeights,
    #[error("polynomial is not quasi-homogeneous")]
    NotQuasiHomogeneous,
    #[error("weight system is underdetermined")]
    AmbiguousWeights,
    #[error("the curve through this point is singular (no weight equal to one)")]
    SingularCurve,
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("denominator is not an invertible monomial")]
    NonInvertibleDenominator,
    #[error("cofactor identity fails modulo the relations")]
    CofactorIdentityFails,
    #[error("ideal membership undecided: all division strategies left a nonzero remainder")]
    MembershipUndecided,
    #[error("family {0} is not supported by this construction")]
    UnsupportedFamily(String),
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
    #[error("reconstruction of the printed matrix failed verification")]
    ReconstructionFailed,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
