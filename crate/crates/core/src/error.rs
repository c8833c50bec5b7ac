//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong when constructing fields, polynomials,
/// subspaces, codes, or their reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // ---- field construction & arithmetic ----
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("field with {0}^{1} elements exceeds the supported size")]
    FieldTooLarge(u64, usize),
    #[error("malformed modulus: expected a monic polynomial of degree {expected}")]
    BadModulus { expected: usize },
    #[error("elements belong to different field contexts")]
    MixedContexts,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{0} is not the size of a subfield of this field")]
    InvalidSubfield(u64),
    #[error("extension degrees do not divide: {to} does not divide {from}")]
    NonDivisorDegrees { from: usize, to: usize },
    #[error("encoding {0} is not an element of this field")]
    BadEncoding(u64),

    // ---- linear algebra over F_q ----
    #[error("input vectors are linearly dependent")]
    DependentInput,
    #[error("trace bilinear form is degenerate (internal bug)")]
    DegenerateTraceForm,
    #[error("matrix shapes are incompatible: {0}")]
    ShapeMismatch(String),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,

    // ---- linearized polynomials ----
    #[error("element does not belong to the polynomial's field context")]
    ContextMismatch,
    #[error("the supplied basis is linearly dependent")]
    DependentBasis,
    #[error("interpolation sample points are F_q-dependent")]
    DependentSamplePoints,
    #[error("Moore matrix is singular (internal bug)")]
    SingularMooreMatrix,
    #[error("{0} does not divide the extension degree")]
    NonDivisor(usize),

    // ---- geometry ----
    #[error("t = {0} is not a divisor of n with 1 < t < n")]
    BadDivisor(usize),
    #[error("transformation matrix is singular")]
    SingularA,
    #[error("every point of the projective line has positive weight")]
    NoFreePoint,
    #[error("projective point representative must be nonzero")]
    ZeroVector,

    // ---- stabilizer / codes ----
    #[error("enumeration budget of {budget} candidates exceeded (needed {needed})")]
    BudgetExceeded { budget: u64, needed: u64 },
    #[error("operation requires f outside the span of x")]
    DegenerateF,

    // ---- families ----
    #[error("malformed family spec: {0}")]
    MalformedSpec(String),
    #[error("coefficients do not lie in the required subfield")]
    CoefficientsNotInSubfield,
    #[error("subspaces are not complementary")]
    NotComplementary,
    #[error("invalid family parameters: {0}")]
    BadParameters(String),

    // ---- cli / parsing ----
    #[error("parse error: {0}")]
    ParseError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
