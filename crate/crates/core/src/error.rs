use num_bigint::BigInt;

/// Errors produced by the library.
///
/// Validation *findings* (a polynomial failing the Weil checks) are not
/// errors; they are reported through [`crate::weil::ValidationReport`].
/// An `Error` means an operation could not produce a result at all.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field cardinality {q}^{exponent} exceeds the supported range")]
    FieldTooLarge { q: u64, exponent: u32 },
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("constant coefficient must be 1")]
    ConstantCoefficient,
    #[error("functional equation violated at coefficient {index}")]
    FunctionalEquation { index: usize },
    #[error("power sums of length {got} cannot determine {needed} coefficients")]
    PowerSumLength { needed: usize, got: usize },
    #[error("inexact division by {k} while inverting power sums")]
    InexactNewtonDivision { k: usize },
    #[error("place count b_{d} is not an integer")]
    NonIntegralPlaceCount { d: usize },
    #[error("class number {value} is not positive")]
    NonPositiveClassNumber { value: BigInt },
    #[error("subgroup order {h_order} does not divide group order {j_order}")]
    OrderNotDivisible { j_order: BigInt, h_order: BigInt },
    #[error("orders must be positive (got j_order {j_order}, h_order {h_order})")]
    NonPositiveOrder { j_order: BigInt, h_order: BigInt },
    #[error("split count {split_count} is negative")]
    NegativeSplitCount { split_count: BigInt },
    #[error("the base curve has no rational point")]
    NoRationalPoint,
    #[error("input is not Weil-valid: {reasons}")]
    NotWeilValid { reasons: String },
    #[error("quotient order {ratio} disagrees with the sign-alternating evaluation {evaluated}")]
    QuotientOrderMismatch { ratio: BigInt, evaluated: BigInt },

    #[error("malformed label {text:?}: {reason}")]
    MalformedLabel { text: String, reason: String },
    #[error("label declares {declared} coefficients but carries {got}")]
    LabelArity { declared: usize, got: usize },

    #[error("line {line}: {source}")]
    DatasetLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("label {label} re-encodes to {canonical}; refusing non-canonical input")]
    NonCanonicalLabel { label: String, canonical: String },

    #[error("malformed records row {row}: {reason}")]
    RecordsRow { row: usize, reason: String },
    #[error("duplicate records entry for q={q}, genus={genus}")]
    DuplicateRecordsEntry { q: u64, genus: u64 },

    #[error("HTTP request failed after {attempts} attempts: {reason}")]
    Fetch { attempts: u32, reason: String },
    #[error("unexpected response shape: {0}")]
    ResponseShape(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
