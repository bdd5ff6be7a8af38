use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("field GF({p}^{m}) is outside the supported range (p < 2^16, q <= 2^16, m >= 1)")]
    UnsupportedField { p: u64, m: u64 },

    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),

    #[error("field element code {code} is out of range for a field of order {q}")]
    ElementOutOfRange { code: u64, q: u32 },

    #[error("operands live over different fields")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("modulus must be a non-constant polynomial")]
    ConstantModulus,

    #[error("gcd of two zero values is undefined")]
    BothZero,

    #[error("inputs are not coprime: {0}")]
    NotCoprime(String),

    #[error(
        "no prime congruent to {residue} mod {modulus} found up to degree {max_degree} \
         (one exists in every large enough degree; raise --max-prime-degree)"
    )]
    PrimeSearchExhausted {
        modulus: String,
        residue: String,
        max_degree: usize,
    },

    #[error(
        "SL2 is not boundedly elementary generated: SL_2(F_q[X]) is not boundedly generated \
         by the elementary matrices, so a dimension n >= 3 is required (got n = {0})"
    )]
    DimensionTooSmall(usize),

    #[error("matrix is not in SL_n: determinant is {0}, expected 1")]
    NotSpecialLinear(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid elementary matrix: {0}")]
    InvalidElementary(String),

    #[error(
        "output size ceiling exceeded: exponent {exponent} (limit {max_exponent}), \
         predicted entry degree {predicted_degree} (limit {degree_ceiling})"
    )]
    OutputTooLarge {
        exponent: String,
        max_exponent: u64,
        predicted_degree: String,
        degree_ceiling: u64,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid certificate: {0}")]
    Certificate(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Budget-style failures: the search or size limits were too small for this input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::PrimeSearchExhausted { .. } | Error::OutputTooLarge { .. }
        )
    }
}
