use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{n} exceeds the supported bound 2^20")]
    FieldTooLarge { p: u64, n: u32 },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("modulus {0:?} is reducible over F_p")]
    ReducibleModulus(Vec<u32>),
    #[error("element index {index} is out of range for a field of order {q}")]
    ElementOutOfRange { index: u64, q: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("linear token requires a nonzero leading coefficient")]
    ZeroScale,
    #[error("x^(q-2) does not permute F_2 (it is the constant 1)")]
    InvOverF2,
    #[error("transposition target must be nonzero")]
    ZeroTransposition,
    #[error("permutation has {got} images but the field has {q} elements")]
    PermutationSize { got: usize, q: u32 },
    #[error("index {index} is out of range for {q} points")]
    IndexOutOfRange { index: u64, q: u32 },
    #[error("index {0} is repeated within a cycle")]
    RepeatedInCycle(u32),
    #[error("index {0} appears in more than one cycle")]
    OverlappingCycles(u32),
    #[error("image list is not a bijection: {0} is hit twice")]
    NotBijective(u32),
    #[error("malformed permutation text: {0}")]
    PermutationSyntax(String),
    #[error("interpolation needs every field element exactly once as an x-coordinate: {0}")]
    Interpolation(String),
    #[error("{base} is not a unit modulo {modulus}")]
    NotCoprime { base: u64, modulus: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("extension of order {q}^{k} is too large for exhaustive checking")]
    ExtensionTooLarge { q: u64, k: u32 },
    #[error("malformed JSON: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
