use thiserror::Error;

/// Errors raised by field construction, code operations, bounds, and table handling.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{m} exceeds the table limit of 2^20")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("modulus must be monic of degree {expected} with coefficients below {p}")]
    MalformedModulus { expected: u32, p: u32 },
    #[error("modulus {0} is not a primitive polynomial")]
    NonPrimitiveModulus(String),
    #[error("{0} does not divide the extension degree {1}")]
    NotADivisor(u32, u32),
    #[error("value {value} is not an element of GF({q})")]
    ElementOutOfRange { value: u32, q: u32 },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("objects belong to different fields")]
    FieldMismatch,
    #[error("polynomial is not cyclotomic (g^p != g)")]
    NotCyclotomic,
    #[error("twist polynomials have different zero sets")]
    ZeroSetMismatch,
    #[error("{0} is not a minimal cyclotomic coset representative")]
    NotRepresentative(usize),
    #[error("exponent {exp} out of range 0..{n}")]
    ExponentOutOfRange { exp: usize, n: usize },
    #[error("zero set is not closed under the Frobenius map")]
    NotCosetUnion,
    #[error("zero set covers every nonzero point; the code would be empty")]
    EmptyEvaluationSet,
    #[error("evaluation points must be distinct")]
    DuplicatePoint,
    #[error("twist vector entries must be nonzero")]
    ZeroTwist,
    #[error("dimension {k} out of range 0..={n}")]
    DimensionOutOfRange { k: usize, n: usize },
    #[error("coordinate {coord} out of range 1..={n}")]
    CoordinateOutOfRange { coord: usize, n: usize },
    #[error("coordinate {0} listed twice")]
    DuplicateCoordinate(usize),
    #[error("cannot remove all {0} coordinates")]
    RemovesAllCoordinates(usize),
    #[error("enumeration of {needed} codewords exceeds the budget of {budget}; use the tracked lower bound")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("best-known table line {line}: {msg}")]
    TableFormat { line: usize, msg: String },
    #[error("best-known table is not monotone: d({n1},{k1}) = {d1} vs d({n2},{k2}) = {d2}")]
    TableMonotonicity {
        n1: usize,
        k1: usize,
        d1: u32,
        n2: usize,
        k2: usize,
        d2: u32,
    },
    #[error("io error on {path}: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
