use thiserror::Error;

/// Errors raised by the projection-manifold toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M*| = {residual:e}")]
    HermitianViolation { residual: f64 },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("not a projection: |p^2 - p| = {residual:e}")]
    NotProjection { residual: f64 },

    #[error("vector is not tangent at the base projection: |a∘u - u/2| = {residual:e}")]
    TangentViolation { residual: f64 },

    #[error("odd functional calculus outside its domain: spectral value {value} >= pi/2")]
    DomainViolation { value: f64 },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("rank mismatch: rank(a) = {a}, rank(b) = {b}")]
    RankMismatch { a: usize, b: usize },

    #[error("P(a)b is not a scalar multiple of a (residual {residual:e})")]
    NotScalarPair { residual: f64 },

    #[error(
        "b lies in the antipodal set O_a of a: P1(a)b is not invertible in V1(a) \
         (smallest eigenvalue {min_eigenvalue:e})"
    )]
    AntipodalPair { min_eigenvalue: f64 },

    #[error("parse error: {0}")]
    ParseError(String),

    #[error("invalid tolerances: {0}")]
    InvalidTolerances(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn dims(expected: (usize, usize), found: (usize, usize)) -> Self {
        Error::DimensionMismatch {
            expected: format!("{}x{}", expected.0, expected.1),
            found: format!("{}x{}", found.0, found.1),
        }
    }
}
