//! Error type shared by every module of the crate.

use alloc::string::String;

/// Everything that can go wrong in the exact and numeric pipelines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension modulus is not irreducible over GF({p})")]
    ReducibleModulus { p: u64 },
    #[error("invalid field parameter: {0}")]
    InvalidFieldSpec(String),
    #[error("no primitive {n}-th root of unity in this field")]
    NoPrimitiveRoot { n: u64 },
    #[error("characteristic {ch} divides {n}")]
    CharacteristicDivides { ch: u64, n: u64 },
    #[error("element does not belong to this field")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {input:?} as an element: {reason}")]
    ParseElement { input: String, reason: String },
    #[error("operation requires an exact field")]
    InexactField,
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("binary form must have degree at least 2 and a nonzero coefficient")]
    InvalidForm,
    #[error("formal degree must be at least 1")]
    DegreeTooSmall,
    #[error("binary form is degenerate (repeated factor)")]
    DegenerateForm,
    #[error("forms do not match")]
    FormMismatch,
    #[error("Clifford identity violated at coefficient {index}")]
    CliffordViolation { index: usize },
    #[error("degree {d} does not divide matrix size {m}")]
    DivisibilityViolation { d: usize, m: usize },
    #[error("point ({0}, {1}, {2}) does not lie on the curve")]
    NotOnCurve(String, String, String),
    #[error("point lies on the curve")]
    OnCurve,
    #[error("fiber dimension {found} at a curve point, expected {expected}")]
    FiberCheckFailed { expected: usize, found: usize },
    #[error("no suitable reduction prime found")]
    NoGoodPrime,
    #[error("representation is reducible")]
    ReducibleInput,
    #[error("equivalence undecided: both representations are reducible; use the randomized search")]
    Undecided,
    #[error("search space of size {q}^{exponent} exceeds the enumeration guard; pass force to override")]
    GuardExceeded { q: u64, exponent: usize },
    #[error("numeric precondition failed: {0}")]
    NumericPrecondition(String),
    #[error("residual {residual:e} above tolerance {tol:e}")]
    ResidualAboveTolerance { residual: f64, tol: f64 },
}
