use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u32 },
    #[error("modulus has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("field of order {p}^{m} exceeds the supported size")]
    FieldTooLarge { p: u64, m: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different contexts")]
    ContextMismatch,
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("constant polynomial has no irreducibility status")]
    ConstantPolynomial,
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial of degree {degree} exceeds the trial-division limit {limit}")]
    FactorLimit { degree: usize, limit: usize },
    #[error("leading coefficient of omega is not a unit")]
    NonUnitLeadingCoefficient,
    #[error("omega reduces to zero modulo u")]
    ZeroResidue,
    #[error("level {level} outside 1..={t}")]
    BadLevel { level: usize, t: usize },
    #[error("index {index} outside 0..{bound}")]
    BadIndex { index: usize, bound: usize },
    #[error("operation requires omega = f^(p^s) with f irreducible over F_(p^m)")]
    NotSpecialCase,
    #[error("trivial ideal has no canonical generator list")]
    TrivialIdeal,
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("branch selection ambiguous: candidates {candidates:?}")]
    AmbiguousBranch { candidates: Vec<usize> },
    #[error("negative exponent {exponent} in branch {branch}")]
    NegativeExponent { branch: usize, exponent: i64 },
    #[error("ring has {required} elements, enumeration cap is {cap}")]
    CapExceeded { required: u128, cap: u128 },
    #[error("lambda must be non-zero")]
    ZeroLambda,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown symbol '{symbol}' at byte {offset}")]
    UnknownSymbol { symbol: String, offset: usize },
    #[error("exponent too large at byte {offset}")]
    ExponentOverflow { offset: usize },
}
